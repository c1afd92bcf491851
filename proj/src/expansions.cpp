#include "svo/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "svo/errors.hpp"
#include "svo/parallel.hpp"

namespace svo {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::PartialPivLU<Matrix> factor_core(const Matrix& m, const char* name, const Tolerances& tol) {
  Eigen::PartialPivLU<Matrix> lu(m);
  if (rcond(m) <= tol.inv_rcond) {
    throw Error(ErrorKind::SingularCoreFactor, std::string(name) + " is singular");
  }
  return lu;
}

void check_param(double param) {
  if (!(param > 0.0 && param < kHalfPi)) {
    throw Error(ErrorKind::InvalidCoordinate,
                "expansion parameter " + std::to_string(param) + " outside (0, pi/2)");
  }
}

void check_fixed_angle(const QuadraticGame& game, int player, double theta,
                       const Tolerances& tol) {
  const double bar = wellposed_cutoff(game, player, tol);
  if (bar >= kHalfPi) return;
  if (std::abs(theta - bar) <= tol.theta) {
    throw Error(ErrorKind::NearCutoff, "fixed angle is within eps_theta of its cutoff");
  }
  if (theta > bar) {
    throw Error(ErrorKind::NotWellPosed,
                "fixed angle exceeds the well-posedness cutoff " + std::to_string(bar));
  }
}

double vector_condition(const ComplexMatrix& V) {
  Eigen::JacobiSVD<ComplexMatrix> svd(V);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

void decompose(EigenExpansion& exp, const Tolerances& tol) {
  const Eigen::Index d = exp.core.rows();
  Eigen::EigenSolver<Matrix> es(exp.core, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::DefectiveCore, "eigen-decomposition of the core did not converge");
  }
  const ComplexVector values = es.eigenvalues();
  const ComplexMatrix vectors = es.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });

  exp.eigenvalues.resize(d);
  exp.V.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    exp.eigenvalues(k) = values(src);
    ComplexVector v = vectors.col(src);
    const double n = v.norm();
    if (n > 0.0) v /= n;
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    const double mag = std::abs(v(pivot));
    if (mag > 0.0) v *= std::conj(v(pivot)) / mag;
    exp.V.col(k) = v;
  }
  exp.spectral_radius = d > 0 ? exp.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  exp.eigvec_condition = vector_condition(exp.V);
  exp.defective = !(exp.eigvec_condition <= tol.kappa_max);
  exp.W = Eigen::FullPivLU<ComplexMatrix>(exp.V.transpose())
              .solve(ComplexMatrix::Identity(d, d));
}

}  // namespace

EigenExpansion make_expansion(Family family, double param, const Matrix& core, const Vector& base,
                              const Vector& target, const Tolerances& tol) {
  if (core.rows() != core.cols() || base.size() != core.rows() ||
      target.size() != core.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "expansion core and points have inconsistent shapes");
  }
  EigenExpansion exp;
  exp.family = family;
  exp.param = param;
  exp.core = core;
  exp.base = base;
  exp.target = target;
  exp.direction = exp.transposed_family() ? Vector(target - base) : Vector(-target);
  decompose(exp, tol);
  return exp;
}

EigenExpansion build_expansion(const QuadraticGame& game, Family family, double param,
                               const Tolerances& tol) {
  check_param(param);
  const int d1 = game.dims().d1;
  const int d2 = game.dims().d2;
  switch (family) {
    case Family::E1: {
      const auto& agg = game.aggregates();
      const Matrix h_inv = block_scaling(d1, d2, 1.0 / std::cos(param), 1.0 / std::sin(param));
      auto n_t = factor_core(agg.N.transpose(), "N", tol);
      auto m_t = factor_core(agg.M.transpose(), "M", tol);
      // core^T = N^{-T} H^{-1} M^T
      const Matrix core = n_t.solve(h_inv * agg.M.transpose()).transpose();
      return make_expansion(family, param, core, m_t.solve(-agg.a), n_t.solve(-agg.b), tol);
    }
    case Family::E2: {
      const Matrix h_inv = block_scaling(d1, d2, 1.0 / std::cos(param), 1.0 / std::sin(param));
      auto m1 = factor_core(game.M1(), "M1", tol);
      auto m2 = factor_core(game.M2(), "M2", tol);
      const Matrix core = m2.solve(h_inv * game.M1()).transpose();
      return make_expansion(family, param, core, m1.solve(-game.c1()), m2.solve(-game.c2()), tol);
    }
    case Family::E3:
    case Family::E4: {
      const bool first = family == Family::E3;
      check_fixed_angle(game, first ? 1 : 2, param, tol);
      const SvoAngles fixed = first ? SvoAngles{param, 0.0} : SvoAngles{0.0, param};
      const Matrix K = svo_system_matrix(game, fixed);
      auto lu = factor_core(K, first ? "SVO system at (theta1, 0)" : "SVO system at (0, theta2)",
                            tol);
      const Vector base = lu.solve(svo_system_rhs(game, fixed));
      const Matrix K_inv = lu.inverse();
      const auto& b = game.blocks();
      Matrix Z, coupling;
      Vector forcing_b;
      if (first) {
        Z = K_inv.rightCols(d2);
        coupling.resize(d2, d1 + d2);
        coupling << b.B1, b.D1;
        forcing_b = b.b1;
      } else {
        Z = K_inv.leftCols(d1);
        coupling.resize(d1, d1 + d2);
        coupling << b.D2, b.B2;
        forcing_b = b.b2;
      }
      const Matrix core = Z * coupling;
      const Vector forcing = Z * forcing_b + core * base;
      return make_expansion(family, param, core, base, forcing, tol);
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown family");
}

Complex spectral_map(Family family, Complex lambda, double t) {
  if (family == Family::E1 || family == Family::E2) return t / (t + lambda);
  return t / (1.0 + t * lambda);
}

double blowup_t(Family family, double lambda) {
  if (family == Family::E1 || family == Family::E2) return -lambda;
  return -1.0 / lambda;
}

bool is_real_negative(Complex lambda, double rho, const Tolerances& tol) {
  const double eps = tol.spec_rel * rho;
  return lambda.real() < -eps && std::abs(lambda.imag()) <= eps * std::max(1.0, std::abs(lambda.real()));
}

std::vector<NegativeMode> real_negative_modes(const EigenExpansion& exp, const Tolerances& tol) {
  std::vector<NegativeMode> out;
  for (Eigen::Index i = 0; i < exp.eigenvalues.size(); ++i) {
    const Complex lambda = exp.eigenvalues(i);
    if (is_real_negative(lambda, exp.spectral_radius, tol)) {
      out.push_back({static_cast<int>(i), lambda.real(), blowup_t(exp.family, lambda.real())});
    }
  }
  return out;
}

Vector curve_point(const EigenExpansion& exp, double t, const Tolerances& tol) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::InvalidCoordinate, "curve coordinate t must be positive and finite");
  }
  for (const auto& mode : real_negative_modes(exp, tol)) {
    if (std::abs(t - mode.t_star) <= tol.blow_rel * (1.0 + mode.t_star)) {
      throw Error(ErrorKind::NearBlowup, "t=" + std::to_string(t) + " is at the blow-up of lambda=" +
                                             std::to_string(mode.lambda));
    }
  }
  const Eigen::Index d = exp.core.rows();
  Matrix A;
  if (exp.transposed_family()) {
    A = (exp.core + t * Matrix::Identity(d, d)).transpose();
  } else {
    A = Matrix::Identity(d, d) + t * exp.core;
  }
  if (rcond(A) <= tol.inv_rcond) {
    throw Error(ErrorKind::NearBlowup, "curve system singular at t=" + std::to_string(t));
  }
  return exp.base + A.partialPivLu().solve(t * exp.direction);
}

Matrix g_matrix(const EigenExpansion& exp, double t) {
  const Eigen::Index d = exp.core.rows();
  const Matrix I = Matrix::Identity(d, d);
  if (exp.transposed_family()) return (exp.core / t + I).transpose().inverse();
  return (I / t + exp.core).inverse();
}

ComplexVector g_spectrum(const EigenExpansion& exp, double t) {
  ComplexVector out(exp.eigenvalues.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = spectral_map(exp.family, exp.eigenvalues(i), t);
  }
  return out;
}

GFactors g_factors(const EigenExpansion& exp) {
  if (exp.defective) {
    throw Error(ErrorKind::DefectiveCore, "core eigenvector matrix is numerically singular");
  }
  if (exp.transposed_family()) return {exp.W, exp.V};
  return {exp.V, exp.W};
}

EigenSumPoint curve_point_eigen_sum(const EigenExpansion& exp, double t, const Tolerances& tol) {
  (void)tol;
  const GFactors f = g_factors(exp);
  const ComplexVector coeffs =
      g_spectrum(exp, t).cwiseProduct(f.Y.transpose() * exp.direction.cast<Complex>());
  const ComplexVector step = f.X * coeffs;
  EigenSumPoint out;
  out.u = exp.base + step.real();
  out.imag_residue = step.size() > 0 ? step.imag().cwiseAbs().maxCoeff() : 0.0;
  return out;
}

Vector curve_point_reversed(const EigenExpansion& exp, double t) {
  if (!exp.transposed_family()) {
    throw Error(ErrorKind::InvalidInput, "reversed form exists only for E1/E2");
  }
  const Eigen::Index d = exp.core.rows();
  const Matrix core_inv = exp.core.partialPivLu().inverse();
  const Matrix A = (t * core_inv + Matrix::Identity(d, d)).transpose();
  return exp.target + A.partialPivLu().solve(exp.base - exp.target);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<CurveSample> sample_curve(const EigenExpansion& exp, const std::vector<double>& t_grid,
                                      bool refine_near_blowups, const Tolerances& tol) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw Error(ErrorKind::InvalidInput, "t grid must be sorted ascending");
  }
  if (t_grid.empty()) return {};
  const auto modes = real_negative_modes(exp, tol);
  std::vector<double> ts = t_grid;
  if (refine_near_blowups) {
    constexpr int kRefine = 10;
    for (const auto& mode : modes) {
      for (int j = 0; j < kRefine; ++j) {
        const double k = 1.0 + 4.0 * j / (kRefine - 1);
        const double offset = std::pow(10.0, -k);
        ts.push_back(mode.t_star * (1.0 - offset));
        ts.push_back(mode.t_star * (1.0 + offset));
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  }

  const Eigen::Index d = exp.core.rows();
  std::vector<CurveSample> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    CurveSample& s = out[i];
    s.t = ts[i];
    s.min_spec_gap = std::numeric_limits<double>::infinity();
    for (const auto& mode : modes) {
      s.min_spec_gap = std::min(s.min_spec_gap, std::abs(s.t - mode.t_star));
    }
    s.spectrum = g_spectrum(exp, s.t);
    try {
      s.theta = to_theta(CurveCoord{exp.family, exp.param, s.t});
      s.u = curve_point(exp, s.t, tol);
      s.status = "ok";
    } catch (const Error& e) {
      if (!(s.t > 0.0)) s.theta = {kNaN, kNaN};
      s.u = Vector::Constant(d, kNaN);
      s.status = e.kind() == ErrorKind::NearBlowup ? "gap" : std::string(to_string(e.kind()));
    }
  });
  return out;
}

}  // namespace svo
