#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace svo {

// Numerical thresholds shared by every module. Fields ending in _rel are
// multiplied by the norm named in the comment before use.
struct Tolerances {
  double sym_rel = 1e-9;        // asymmetry allowed: sym_rel * ||M||_F
  double pd_rel = 1e-10;        // "positive definite": min eig > pd_rel * max(1, ||block||_2)
  double inv_rcond = 1e-12;     // invertible: reciprocal condition number above this
  double theta = 1e-10;         // cutoff bisection width [rad]
  int cutoff_max_iter = 60;
  double res_rel = 1e-9;        // linear solve residual: res_rel * (1 + ||rhs||)
  double eig_rel = 1e-8;        // eigen residuals: eig_rel * ||core||
  double kappa_max = 1e8;       // eigenvector condition number above which a core is defective
  double real_abs = 1e-10;      // imaginary residue accepted on reconstructed real vectors
  double blow_rel = 1e-6;       // NearBlowup window: blow_rel * (1 + t*)
  double spec_rel = 1e-9;       // sign classification of eigenvalues: spec_rel * rho(core)
  double cluster_rel = 1e-6;    // eigenvalue clustering gap: cluster_rel * rho(core)
  double proj = 1e-10;          // removable blow-up: relative projection below this
  double approach_window = 0.1; // default relative window for asymptote checks

  /// Overrides one field by name (e.g. "eps_pd", "kappa_max").
  /// Throws Error{InvalidInput} on an unknown key.
  void set(std::string_view key, double value);

  static std::vector<std::string> keys();
};

}  // namespace svo
