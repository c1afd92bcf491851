#include "svo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svo/errors.hpp"

namespace svo {

PNorm::PNorm(const Matrix& P, const Tolerances& tol) : P_(sym_part(P)), chol_(P_) {
  if (chol_.info() != Eigen::Success || !is_positive_definite(P_, tol)) {
    throw Error(ErrorKind::DefectiveCore, "P matrix is not positive definite");
  }
}

double PNorm::operator()(const Vector& v) const {
  // ||L^T v|| with P = L L^T
  return (chol_.matrixU() * v).norm();
}

PNorm p_norm(const EigenExpansion& exp, const Tolerances& tol) {
  if (exp.defective) {
    throw Error(ErrorKind::DefectiveCore, "core eigenvector matrix is numerically singular");
  }
  const Matrix re = exp.V.real();
  const Matrix im = exp.V.imag();
  return PNorm(re * re.transpose() + im * im.transpose(), tol);
}

double EllipsoidBound::distance(const Vector& u) const {
  const Vector diff = u - center;
  return std::sqrt(std::max(0.0, diff.dot(P * diff)));
}

bool EllipsoidBound::contains(const Vector& u, double slack) const {
  return distance(u) <= radius + slack;
}

ContractionCheck is_contraction(const EigenExpansion& exp, double t) {
  const ComplexVector kappa = g_spectrum(exp, t);
  const double worst = kappa.size() > 0 ? kappa.cwiseAbs().maxCoeff() : 0.0;
  return {worst < 1.0, 1.0 - worst};
}

CurveBoundsResult curve_bounds(const EigenExpansion& exp, const Tolerances& tol) {
  if (!exp.transposed_family()) {
    throw Error(ErrorKind::PreconditionFailed, "curve bounds exist only for E1/E2");
  }
  const double eps = tol.spec_rel * exp.spectral_radius;
  NotApplicable na{std::string(to_string(exp.family)), exp.param, {}, {}};
  bool real = true;
  for (Eigen::Index i = 0; i < exp.eigenvalues.size(); ++i) {
    const Complex lambda = exp.eigenvalues(i);
    if (!(lambda.real() > eps)) na.offending.push_back(lambda);
    if (std::abs(lambda.imag()) > eps) real = false;
  }
  if (!na.offending.empty()) {
    na.reason = "core spectrum has eigenvalues with non-positive real part";
    return na;
  }
  const PNorm norm = p_norm(exp, tol);
  const double r = norm(exp.target - exp.base);
  CurveBounds out;
  out.family = exp.family;
  out.param = exp.param;
  out.base_ball = {exp.base, r, norm.P()};
  out.target_ball = {exp.target, r, norm.P()};
  out.real_spectrum = real;
  return out;
}

PointBoundsResult theta_point_bounds(const QuadraticGame& game, const SvoAngles& theta,
                                     const Tolerances& tol) {
  const CurveCoord c1 = from_theta(Family::E1, theta);
  const CurveCoord c2 = from_theta(Family::E2, theta);
  auto r1 = curve_bounds(build_expansion(game, Family::E1, c1.param, tol), tol);
  auto r2 = curve_bounds(build_expansion(game, Family::E2, c2.param, tol), tol);
  if (auto* na = std::get_if<NotApplicable>(&r1)) return *na;
  if (auto* na = std::get_if<NotApplicable>(&r2)) return *na;

  PointBounds out;
  out.theta = theta;
  out.e1 = std::get<CurveBounds>(r1);
  out.e2 = std::get<CurveBounds>(r2);
  out.u_theta = svo_nash_direct(game, theta, tol);
  out.member = true;
  for (const EllipsoidBound* ball :
       {&out.e1.base_ball, &out.e1.target_ball, &out.e2.base_ball, &out.e2.target_ball}) {
    out.member = out.member && ball->contains(out.u_theta, 1e-9 * ball->radius);
  }
  return out;
}

SpectrumReport check_m1m2_spectrum(const Matrix& M1, const Matrix& M2, const Tolerances& tol) {
  if (!is_positive_definite(M1, tol) || !is_positive_definite(M2, tol)) {
    throw Error(ErrorKind::PreconditionFailed, "M1 and M2 must both be positive definite");
  }
  SpectrumReport rep;
  const Matrix prod = M2.transpose().partialPivLu().solve(M1.transpose()).transpose();
  rep.direct = Eigen::EigenSolver<Matrix>(prod, false).eigenvalues();
  std::sort(rep.direct.begin(), rep.direct.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  Eigen::SelfAdjointEigenSolver<Matrix> es2(sym_part(M2));
  const Matrix m2_isqrt = es2.operatorInverseSqrt();
  rep.congruence = Eigen::SelfAdjointEigenSolver<Matrix>(sym_part(m2_isqrt * M1 * m2_isqrt),
                                                         Eigen::EigenvaluesOnly)
                       .eigenvalues();

  rep.spectral_radius = rep.direct.cwiseAbs().maxCoeff();
  rep.max_imag = rep.direct.imag().cwiseAbs().maxCoeff();
  const double rho = std::max(rep.spectral_radius, std::numeric_limits<double>::min());
  rep.max_mismatch = (rep.direct - rep.congruence.cast<Complex>()).cwiseAbs().maxCoeff() / rho;
  rep.real_positive = rep.max_imag <= 1e-10 * rho && rep.direct.real().minCoeff() > 0.0;
  return rep;
}

SpectrumReport check_m1m2_spectrum(const QuadraticGame& game, const Tolerances& tol) {
  return check_m1m2_spectrum(game.M1(), game.M2(), tol);
}

}  // namespace svo
