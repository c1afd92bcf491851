#include "svo/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "svo/errors.hpp"

namespace svo {

SvoAngles SvoAngles::cooperative(double theta1, double theta2) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (double th : {theta1, theta2}) {
    if (!(th >= 0.0 && th <= kHalfPi)) {
      throw Error(ErrorKind::InvalidInput,
                  "SVO angle " + std::to_string(th) + " outside the cooperative range [0, pi/2]");
    }
  }
  return SvoAngles{theta1, theta2};
}

double cost(const QuadraticGame& game, int player, const Vector& u) {
  const Matrix& M = game.M(player);
  if (u.size() != M.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "action vector has wrong length");
  }
  return 0.5 * u.dot(M * u) + game.c(player).dot(u);
}

double svo_cost(const QuadraticGame& game, int player, double theta_i, const Vector& u) {
  const int other = player == 1 ? 2 : 1;
  return std::cos(theta_i) * cost(game, player, u) + std::sin(theta_i) * cost(game, other, u);
}

namespace {

double residual(const Matrix& A, const Vector& x, const Vector& rhs) {
  return (A * x - rhs).norm();
}

Vector solve_point(const Matrix& A, const Vector& rhs, const char* name, const Tolerances& tol,
                   double& res_out) {
  Vector x = solve_checked(A, rhs, name, tol.inv_rcond);
  res_out = residual(A, x, rhs);
  if (!(res_out <= tol.res_rel * (1.0 + rhs.norm()))) {
    throw Error(ErrorKind::SingularSystem,
                std::string(name) + " solve residual " + std::to_string(res_out) +
                    " exceeds tolerance");
  }
  return x;
}

}  // namespace

EquilibriumSet classical_points(const QuadraticGame& game, const Tolerances& tol) {
  const auto& agg = game.aggregates();
  EquilibriumSet out;
  auto& r = out.residuals;
  out.u_nash = solve_point(agg.M.transpose(), -agg.a, "M", tol, r.nash);
  out.u_altruistic = solve_point(agg.N.transpose(), -agg.b, "N", tol, r.altruistic);
  out.u_player1 = solve_point(game.M1(), -game.c1(), "M1", tol, r.player1);
  out.u_player2 = solve_point(game.M2(), -game.c2(), "M2", tol, r.player2);
  const Matrix sum = game.M1() + game.M2();
  out.u_social = solve_point(sum, -(game.c1() + game.c2()), "M1+M2", tol, r.social);
  // Second route through the aggregate matrices; M + N is M1 + M2 with the
  // same entries, the system is taken transposed as for u_N and u_A.
  double cross_res = 0.0;
  const Vector social_alt =
      solve_point((agg.M + agg.N).transpose(), -(agg.a + agg.b), "M+N", tol, cross_res);
  r.social_cross = (social_alt - out.u_social).cwiseAbs().maxCoeff();
  return out;
}

Matrix svo_system_matrix(const QuadraticGame& game, const SvoAngles& theta) {
  const auto& b = game.blocks();
  const int d1 = game.dims().d1;
  const int d2 = game.dims().d2;
  const double c1 = std::cos(theta.theta1), s1 = std::sin(theta.theta1);
  const double c2 = std::cos(theta.theta2), s2 = std::sin(theta.theta2);
  Matrix S(d1 + d2, d1 + d2);
  S.topLeftCorner(d1, d1) = c1 * b.A1 + s1 * b.D2;
  S.topRightCorner(d1, d2) = c1 * b.B1.transpose() + s1 * b.B2;
  S.bottomLeftCorner(d2, d1) = c2 * b.B2.transpose() + s2 * b.B1;
  S.bottomRightCorner(d2, d2) = c2 * b.A2 + s2 * b.D1;
  return S;
}

Vector svo_system_rhs(const QuadraticGame& game, const SvoAngles& theta) {
  const auto& b = game.blocks();
  const int d1 = game.dims().d1;
  const int d2 = game.dims().d2;
  Vector r(d1 + d2);
  r.head(d1) = -(std::cos(theta.theta1) * b.a1 + std::sin(theta.theta1) * b.b2);
  r.tail(d2) = -(std::cos(theta.theta2) * b.a2 + std::sin(theta.theta2) * b.b1);
  return r;
}

Vector svo_nash_direct(const QuadraticGame& game, const SvoAngles& theta,
                       const Tolerances& tol) {
  return svo_nash_direct(game, theta, wellposed_cutoffs(game, tol), tol);
}

Vector svo_nash_direct(const QuadraticGame& game, const SvoAngles& theta, const Cutoffs& cutoffs,
                       const Tolerances& tol) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (int player : {1, 2}) {
    const double th = theta[player];
    if (th >= 0.0 && th <= kHalfPi) {
      const double bar = cutoffs[player];
      // A cutoff of exactly pi/2 means every cooperative angle is well-posed.
      if (bar >= kHalfPi) continue;
      if (std::abs(th - bar) <= tol.theta) {
        throw Error(ErrorKind::NearCutoff, "theta" + std::to_string(player) +
                                               " is within eps_theta of its cutoff");
      }
      if (th > bar) {
        throw Error(ErrorKind::NotWellPosed,
                    "theta" + std::to_string(player) + " exceeds the well-posedness cutoff " +
                        std::to_string(bar));
      }
    } else if (!is_positive_definite(effective_curvature(game, player, th), tol)) {
      throw Error(ErrorKind::NotWellPosed,
                  "player " + std::to_string(player) + " curvature is not positive definite");
    }
  }
  const Matrix S = svo_system_matrix(game, theta);
  const Vector rhs = svo_system_rhs(game, theta);
  Eigen::PartialPivLU<Matrix> lu(S);
  double r = lu.rcond();
  if (!std::isfinite(r) || lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0) r = 0.0;
  if (r <= tol.inv_rcond) {
    throw Error(ErrorKind::SingularAtTheta,
                "SVO system singular at theta=(" + std::to_string(theta.theta1) + ", " +
                    std::to_string(theta.theta2) + ")");
  }
  Vector u = lu.solve(rhs);
  // Backward-error scaling: near the blow-up locus u is large and the
  // plain (1 + ||rhs||) scale would reject correct solves.
  const double res = (S * u - rhs).norm();
  if (!(res <= tol.res_rel * (1.0 + rhs.norm() + S.norm() * u.norm()))) {
    throw Error(ErrorKind::SingularAtTheta, "SVO solve residual too large");
  }
  return u;
}

}  // namespace svo
