#pragma once

#include <vector>

#include "svo/blowup.hpp"
#include "svo/game.hpp"

namespace svo {

/// x_{k+1} = F_k x_k + G1_k u1_k + G2_k u2_k,  k = 0..K-1.
struct LtvSystem {
  int K = 0;
  int n = 0;
  int m1 = 0;
  int m2 = 0;
  double dt = 1.0;  // physical step length, used for time stamps only
  std::vector<Matrix> F;   // K matrices n x n
  std::vector<Matrix> G1;  // K matrices n x m1
  std::vector<Matrix> G2;  // K matrices n x m2
  Vector x0;
};

/// Player i minimizes
///   1/2 sum_{k=1..K} (x_k - xbar_i,k)^T Q_i,k (x_k - xbar_i,k)
/// + 1/2 sum_{k=0..K-1} u_i,k^T R_i,k u_i,k.
/// Q and xbar vectors are stored for k = 1..K at positions 0..K-1.
struct LtvCosts {
  std::vector<Matrix> Q1, Q2;
  std::vector<Matrix> R1, R2;
  std::vector<Vector> xbar1, xbar2;
};

/// Stacked trajectory x = (x_1, ..., x_K) = H x0 + Gbar1 u1 + Gbar2 u2,
/// with Gbar_i = F blkdg(G_i,0, ..., G_i,K-1).
struct RolloutOperators {
  Matrix H;      // nK x n
  Matrix F;      // nK x nK, block lower triangular
  Matrix Gbar1;  // nK x m1 K
  Matrix Gbar2;  // nK x m2 K
};

struct LtvGame {
  LtvSystem system;
  LtvCosts costs;
  RolloutOperators ops;
  QuadraticGame game;
  // Dropped constants: J_i(u) = cost(game, i, u) + constant_i.
  double constant1 = 0.0;
  double constant2 = 0.0;
};

/// Errors: ShapeMismatch, ControlCostNotPD.
LtvGame build_ltv_game(const LtvSystem& system, const LtvCosts& costs,
                       const Tolerances& tol = {});

RolloutOperators rollout_operators(const LtvSystem& system);

struct SingleIntegratorParams {
  int K = 50;
  double dt = 0.04;
  double q_track_low = 20.0;
  double q_track_high = 30.0;
  int high_from = 45;  // weight q_track_high for high_from <= k <= K
  double q_cross = 0.1;
  double q_prox = 6.0;
  double r = 1.0;
  Vector x_start = (Vector(4) << -1.0, 0.0, 0.0, -1.0).finished();
  Vector x_goal = (Vector(4) << 1.0, 0.0, 0.0, 1.0).finished();
};

/// Two planar single integrators (state (p1, p2), each player steering its
/// own velocity) tracking a shared straight-line reference while the
/// proximity term rewards separation.
LtvGame single_integrator_scenario(const SingleIntegratorParams& params = {});

/// Stage-by-stage trajectory (x_1..x_K as columns, n x K).
/// Throws ShapeMismatch when u or x0 have the wrong length.
Matrix rollout(const RolloutOperators& ops, const Vector& x0, const Vector& u, int m1_total);
Matrix rollout(const LtvGame& ltv, const Vector& u);

// Direct recursion of the dynamics, for cross-checks.
Matrix simulate(const LtvSystem& system, const Vector& u);

// Stage-summed cost of player i (1 or 2), constants included.
double stage_cost(const LtvGame& ltv, int player, const Vector& u);

struct TrajectoryAsymptotes {
  Matrix x_fin;  // n x K, linear part only (no H x0)
  Matrix x_inf;
  // Sign changes along k of each control channel of u_inf, summed.
  int control_sign_changes = 0;
};

TrajectoryAsymptotes trajectory_asymptotes(const LtvGame& ltv, const BlowupEvent& event);

// Sign changes of sequence entries, ignoring entries below rel * max|v|.
int sign_changes(const Vector& v, double rel = 1e-9);

}  // namespace svo
