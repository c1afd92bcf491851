#pragma once

#include "svo/game.hpp"

namespace svo {

/// Social value orientation pair. theta_i weights player i's own cost by
/// cos(theta_i) and the opponent's by sin(theta_i).
struct SvoAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;

  double operator[](int player) const { return player == 1 ? theta1 : theta2; }

  // Cooperative-range constructor used by the analysis paths: rejects
  // angles outside [0, pi/2] with Error{InvalidInput}.
  static SvoAngles cooperative(double theta1, double theta2);
};

struct EquilibriumResiduals {
  double nash = 0.0;
  double altruistic = 0.0;
  double player1 = 0.0;
  double player2 = 0.0;
  double social = 0.0;
  // max-norm gap between the (M1+M2) and (M+N) computations of u_S
  double social_cross = 0.0;
};

struct EquilibriumSet {
  Vector u_nash;
  Vector u_altruistic;
  Vector u_player1;
  Vector u_player2;
  Vector u_social;
  EquilibriumResiduals residuals;
};

// J_i(u) = 1/2 u^T M_i u + c_i^T u
double cost(const QuadraticGame& game, int player, const Vector& u);

// cos(theta_i) J_i(u) + sin(theta_i) J_{-i}(u)
double svo_cost(const QuadraticGame& game, int player, double theta_i, const Vector& u);

/// Nash, altruistic Nash, per-player optima and the social optimum.
/// Throws Error{SingularSystem} naming the matrix that failed.
EquilibriumSet classical_points(const QuadraticGame& game, const Tolerances& tol = {});

/// Stacked SVO stationarity system S(theta) u = r(theta): row block i is the
/// gradient of player i's SVO cost with respect to u_i.
Matrix svo_system_matrix(const QuadraticGame& game, const SvoAngles& theta);
Vector svo_system_rhs(const QuadraticGame& game, const SvoAngles& theta);

/// Direct solve for the SVO-Nash equilibrium u_theta.
/// Errors: NearCutoff (within eps_theta of a well-posedness cutoff),
/// NotWellPosed (beyond it), SingularAtTheta (system singular inside the
/// well-posed region).
Vector svo_nash_direct(const QuadraticGame& game, const SvoAngles& theta,
                       const Tolerances& tol = {});
// Same, with cutoffs computed once by the caller.
Vector svo_nash_direct(const QuadraticGame& game, const SvoAngles& theta, const Cutoffs& cutoffs,
                       const Tolerances& tol = {});

}  // namespace svo
