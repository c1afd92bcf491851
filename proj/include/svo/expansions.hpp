#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svo/coords.hpp"
#include "svo/equilibria.hpp"

namespace svo {

/// Eigen-decomposed core of one curve family at a fixed parameter.
///
/// E1/E2 curves are u(t) = base + G(t) (target - base) with
/// G(t) = [(1/t) core + I]^{-T}; the core is M H_phi^{-1} N^{-1} (E1, base u_N,
/// target u_A) or M1 H_psi^{-1} M2^{-1} (E2, base u1, target u2).
///
/// E3/E4 curves are u(t) = base - G(t) f with G(t) = [(1/t) I + core]^{-1},
/// where base is the SVO equilibrium with the free angle at zero and f the
/// forcing vector stored in `target`.
struct EigenExpansion {
  Family family = Family::E1;
  double param = 0.0;
  Matrix core;
  ComplexVector eigenvalues;  // sorted by (real, imag)
  ComplexMatrix V;            // right eigenvectors, unit 2-norm columns
  ComplexMatrix W;            // W^T V = I
  Vector base;
  Vector target;
  Vector direction;  // G(t) acts on this: target - base (E1/E2) or -f (E3/E4)
  double eigvec_condition = 1.0;
  bool defective = false;
  double spectral_radius = 0.0;

  bool transposed_family() const { return family == Family::E1 || family == Family::E2; }
};

/// Decomposes the core for `family` at `param` (phi, psi, theta1, theta2).
/// Errors: InvalidCoordinate (param outside (0, pi/2)), SingularCoreFactor
/// (a matrix that must be inverted is singular), NotWellPosed / NearCutoff
/// for E3/E4 params beyond the well-posedness cutoff. A core whose
/// eigenvector matrix is ill-conditioned is flagged `defective`.
EigenExpansion build_expansion(const QuadraticGame& game, Family family, double param,
                               const Tolerances& tol = {});

/// Wraps an arbitrary core (tests, synthetic cases). For E3/E4 `target` is
/// the forcing vector f.
EigenExpansion make_expansion(Family family, double param, const Matrix& core,
                              const Vector& base, const Vector& target,
                              const Tolerances& tol = {});

// Coefficient of mode lambda in G(t): t/(t+lambda) for E1/E2,
// t/(1+t lambda) for E3/E4.
Complex spectral_map(Family family, Complex lambda, double t);

// Curve coordinate at which a real negative lambda blows up.
double blowup_t(Family family, double lambda);

struct NegativeMode {
  int index = 0;
  double lambda = 0.0;
  double t_star = 0.0;
};

// Eigenvalues classified as real negative:
//   Re < -eps_spec and |Im| <= eps_spec * max(1, |Re|), eps_spec = spec_rel * rho.
std::vector<NegativeMode> real_negative_modes(const EigenExpansion& exp,
                                              const Tolerances& tol = {});

// Same classification rule for "real positive" (certifiable) spectra.
bool is_real_negative(Complex lambda, double rho, const Tolerances& tol);

/// Curve point by a real linear solve. Errors: InvalidCoordinate (t <= 0),
/// NearBlowup (t within eps_blow (1 + t*) of a blow-up).
Vector curve_point(const EigenExpansion& exp, double t, const Tolerances& tol = {});

Matrix g_matrix(const EigenExpansion& exp, double t);
ComplexVector g_spectrum(const EigenExpansion& exp, double t);

struct EigenSumPoint {
  Vector u;
  double imag_residue = 0.0;  // max |Im| discarded from the complex sum
};

/// Curve point through the eigen-sum of G(t). Throws DefectiveCore on
/// defective cores.
EigenSumPoint curve_point_eigen_sum(const EigenExpansion& exp, double t,
                                    const Tolerances& tol = {});

/// E1/E2 only: the same curve written from the target side,
/// target + (t core^{-1} + I)^{-T} (base - target).
Vector curve_point_reversed(const EigenExpansion& exp, double t);

/// Factors of G(t) = X diag(kappa(t)) Y^T in the eigenbasis.
struct GFactors {
  ComplexMatrix X;
  ComplexMatrix Y;
};
GFactors g_factors(const EigenExpansion& exp);

struct CurveSample {
  double t = 0.0;
  SvoAngles theta;
  Vector u;                  // NaN entries for gap records
  ComplexVector spectrum;    // g_spectrum at t
  double min_spec_gap = 0.0; // distance from t to the nearest blow-up t* (inf when none)
  std::string status;        // "ok", "gap" or the error kind
};

/// Evaluates the curve over a sorted grid. With `refine_near_blowups`, adds
/// the points t*(1 +- 10^-k) for 10 exponents k evenly spaced in [1, 5] per
/// blow-up. Points too close to a blow-up become gap records.
/// Throws Error{InvalidInput} on an unsorted grid.
std::vector<CurveSample> sample_curve(const EigenExpansion& exp, const std::vector<double>& t_grid,
                                      bool refine_near_blowups, const Tolerances& tol = {});

// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace svo
