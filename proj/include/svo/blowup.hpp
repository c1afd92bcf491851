#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svo/expansions.hpp"

namespace svo {

/// One cluster of real negative core eigenvalues and the curve's behaviour
/// near the resulting blow-up:
///   Gamma(t) - base ~ u_fin + kappa(t) u_inf  as t -> t_star,
/// where kappa is the spectral map of the cluster eigenvalue.
struct BlowupEvent {
  double lambda = 0.0;       // cluster mean
  std::vector<int> indices;  // positions in EigenExpansion::eigenvalues
  double t_star = 0.0;
  SvoAngles theta_star;
  Vector u_fin;  // empty when the core is defective
  Vector u_inf;
  bool removable = false;   // direction has no component on the cluster eigenspace
  bool well_posed = true;   // theta_star below both well-posedness cutoffs
};

struct BlowupReport {
  Family family = Family::E1;
  double param = 0.0;
  std::vector<BlowupEvent> events;
  // Complex eigenvalues with negative real part; G(t) stays finite for them.
  std::vector<Complex> oscillatory;
  bool asymptotes_available = true;
};

BlowupReport find_blowups(const EigenExpansion& exp, const Tolerances& tol = {});
// Also marks events whose theta_star lies beyond the cutoffs.
BlowupReport find_blowups(const EigenExpansion& exp, const Cutoffs& cutoffs,
                          const Tolerances& tol = {});

struct AsymptoteSample {
  double t = 0.0;
  double angle_error = 0.0;  // |1 - |cos angle(w(t), u_inf)||
  double scale_ratio = 0.0;  // ||w(t)|| / (|kappa(t)| ||u_inf||)
  int side = 0;              // sign of <w(t), u_inf>
};

struct AsymptoteCheck {
  std::vector<AsymptoteSample> samples;
  // Angle error non-increasing as t approaches t_star, on each side.
  bool monotone = true;
  double worst_angle_error = 0.0;
};

/// w(t) = Gamma(t) - base - u_fin compared against u_inf at each t.
/// Errors: NearBlowup for t within eps_blow of t_star, DefectiveCore when
/// asymptotes are unavailable, InvalidInput for a removable event.
AsymptoteCheck verify_asymptote(const EigenExpansion& exp, const BlowupEvent& event,
                                const std::vector<double>& approach_ts,
                                const Tolerances& tol = {});

// t_star (1 +- 10^-k) for each k, both sides.
std::vector<double> approach_points(double t_star, const std::vector<double>& exponents);

struct LocusEntry {
  double param = 0.0;
  std::optional<BlowupReport> report;
  std::string error;  // error kind when the expansion could not be built
};

struct BlowupLocus {
  Family family = Family::E1;
  std::vector<LocusEntry> entries;
  // Well-posed blow-up points in theta space, in parameter order.
  std::vector<SvoAngles> polyline;

  // Number of parameters with at least one well-posed event.
  int params_with_events() const;
};

BlowupLocus blowup_locus(const QuadraticGame& game, Family family,
                         const std::vector<double>& params, const Tolerances& tol = {});

}  // namespace svo
