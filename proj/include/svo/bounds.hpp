#pragma once

#include <string>
#include <variant>
#include <vector>

#include "svo/expansions.hpp"

namespace svo {

/// Quadratic norm ||v||_P = sqrt(v^T P v) with P = Re V Re V^T + Im V Im V^T
/// built from the right eigenvectors V of an expansion core. Equivalently
/// ||v||_P = ||V^T v||_2, in which G(t) acts diagonally.
class PNorm {
 public:
  explicit PNorm(const Matrix& P, const Tolerances& tol = {});

  const Matrix& P() const { return P_; }
  double operator()(const Vector& v) const;

 private:
  Matrix P_;
  Eigen::LLT<Matrix> chol_;
};

/// Throws Error{DefectiveCore} when the core is defective or P is not
/// positive definite.
PNorm p_norm(const EigenExpansion& exp, const Tolerances& tol = {});

struct EllipsoidBound {
  Vector center;
  double radius = 0.0;
  Matrix P;

  double distance(const Vector& u) const;
  // Closed ball with absolute slack.
  bool contains(const Vector& u, double slack = 0.0) const;
};

struct ContractionCheck {
  bool contraction = false;
  double margin = 0.0;  // 1 - max |kappa_i(t)|
};

ContractionCheck is_contraction(const EigenExpansion& exp, double t);

struct NotApplicable {
  std::string family;
  double param = 0.0;
  std::string reason;
  std::vector<Complex> offending;
};

/// Gamma(t) is contained in base_ball and in target_ball, both of radius
/// ||target - base||_P.
struct CurveBounds {
  Family family = Family::E1;
  double param = 0.0;
  EllipsoidBound base_ball;
  EllipsoidBound target_ball;
  bool real_spectrum = true;  // false when certified through complex pairs with Re > 0
};

using CurveBoundsResult = std::variant<CurveBounds, NotApplicable>;

/// E1/E2 only (PreconditionFailed otherwise). Certifies when every
/// eigenvalue has real part above eps_spec; otherwise NotApplicable with
/// the offending eigenvalues. Throws DefectiveCore.
CurveBoundsResult curve_bounds(const EigenExpansion& exp, const Tolerances& tol = {});

struct PointBounds {
  SvoAngles theta;
  CurveBounds e1;
  CurveBounds e2;
  Vector u_theta;
  bool member = false;  // u_theta lies in all four balls (closed, slack 1e-9 r)
};

using PointBoundsResult = std::variant<PointBounds, NotApplicable>;

/// Four-ball certificate for the SVO equilibrium at an interior theta.
/// Throws BoundaryTheta for angles on the box boundary.
PointBoundsResult theta_point_bounds(const QuadraticGame& game, const SvoAngles& theta,
                                     const Tolerances& tol = {});

struct SpectrumReport {
  ComplexVector direct;    // eig(M1 M2^{-1}), sorted by real part
  Vector congruence;       // eig(M2^{-1/2} M1 M2^{-1/2}), ascending
  double spectral_radius = 0.0;
  double max_imag = 0.0;
  double max_mismatch = 0.0;  // max |direct_i - congruence_i| / rho
  bool real_positive = false;
};

/// Throws Error{PreconditionFailed} unless M1 and M2 are positive definite.
SpectrumReport check_m1m2_spectrum(const Matrix& M1, const Matrix& M2, const Tolerances& tol = {});
SpectrumReport check_m1m2_spectrum(const QuadraticGame& game, const Tolerances& tol = {});

}  // namespace svo
