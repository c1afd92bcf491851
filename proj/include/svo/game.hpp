#pragma once

#include <map>
#include <string>

#include "svo/linalg.hpp"
#include "svo/tolerances.hpp"

namespace svo {

/// Action dimensions: player 1 controls u1 in R^d1, player 2 controls u2 in
/// R^d2, and joint actions are stacked u = (u1, u2).
struct Dims {
  int d1 = 1;
  int d2 = 1;

  Dims() = default;
  Dims(int player1, int player2);

  int d() const { return d1 + d2; }
  // Dimension of player i's own action (i = 1, 2).
  int own(int player) const;
};

/// Views of one game's cost data in the per-player block layout
///
///   M1 = [A1 B1^T; B1 D1],  M2 = [D2 B2; B2^T A2],
///   c1 = (a1, b1),          c2 = (b2, a2).
///
/// A_i is d_i x d_i, D_i is d_{-i} x d_{-i}, B_i is d_{-i} x d_i; a_i has
/// length d_i and b_i length d_{-i}. Note c2 stores b2 first.
struct Subblocks {
  Matrix A1, A2, B1, B2, D1, D2;
  Vector a1, a2, b1, b2;
};

/// Stacked first-order systems. The Nash point solves M^T u = -a and the
/// altruistic point N^T u = -b, with
///   M = [A1 B2; B1 A2],  N = [D2 B1^T; B2^T D1],  a = (a1, a2),  b = (b2, b1).
/// b is ordered so that its leading block has length d1.
struct AggregateMatrices {
  Matrix M;
  Matrix N;
  Vector a;
  Vector b;
};

/// Two-player quadratic game J_i(u) = 1/2 u^T M_i u + c_i^T u.
/// Immutable after construction; M1, M2 are stored symmetrized.
class QuadraticGame {
 public:
  QuadraticGame(Dims dims, const Matrix& M1, const Matrix& M2, const Vector& c1,
                const Vector& c2, const Tolerances& tol = {});

  static QuadraticGame from_blocks(const Subblocks& blocks, const Tolerances& tol = {});

  const Dims& dims() const { return dims_; }
  const Matrix& M1() const { return M1_; }
  const Matrix& M2() const { return M2_; }
  const Vector& c1() const { return c1_; }
  const Vector& c2() const { return c2_; }
  const Matrix& M(int player) const;
  const Vector& c(int player) const;

  const Subblocks& blocks() const { return blocks_; }
  const AggregateMatrices& aggregates() const { return aggregates_; }

  // Frobenius norm of M_i - M_i^T as supplied, before symmetrization.
  double asymmetry(int player) const;

 private:
  Dims dims_;
  Matrix M1_, M2_;
  Vector c1_, c2_;
  double asym1_ = 0.0;
  double asym2_ = 0.0;
  Subblocks blocks_;
  AggregateMatrices aggregates_;
};

const Subblocks& subblocks(const QuadraticGame& game);
const AggregateMatrices& aggregates(const QuadraticGame& game);

struct Invertibility {
  bool invertible = false;
  double rcond = 0.0;
};

struct AssumptionReport {
  bool assump_1a = false;  // A1, A2 > 0
  bool assump_1b = false;  // additionally D1, D2 > 0
  bool assump_1c = false;  // M1, M2 > 0
  // Set when the independently checked blocks contradict 1c => 1b => 1a.
  bool implication_violated = false;
  std::map<std::string, Invertibility> invertibility;  // M1, M2, M, N, M1+M2
  std::map<std::string, double> min_eigs;              // A1, A2, D1, D2, M1, M2
};

AssumptionReport check_assumptions(const QuadraticGame& game, const Tolerances& tol = {});

bool is_positive_definite(const Matrix& block, const Tolerances& tol);

/// Largest angle below which cos(theta) A_i + sin(theta) D_{-i} stays positive
/// definite, by bisection. Exactly pi/2 when D_{-i} is positive semidefinite.
/// Throws Error{NotWellPosedAtZero} unless A_i > 0.
double wellposed_cutoff(const QuadraticGame& game, int player, const Tolerances& tol = {});

struct Cutoffs {
  double theta_bar1 = 0.0;
  double theta_bar2 = 0.0;
  double operator[](int player) const { return player == 1 ? theta_bar1 : theta_bar2; }
};

Cutoffs wellposed_cutoffs(const QuadraticGame& game, const Tolerances& tol = {});

// Effective own-action curvature cos(theta) A_i + sin(theta) D_{-i}.
Matrix effective_curvature(const QuadraticGame& game, int player, double theta);

}  // namespace svo
