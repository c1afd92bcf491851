#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "svo/blowup.hpp"
#include "svo/bounds.hpp"
#include "svo/lq.hpp"

namespace svo::io {

using Json = nlohmann::ordered_json;

// Shortest decimal that round-trips to the same double ("nan", "inf", "-inf"
// for non-finite values).
std::string format_double(double x);

Json to_json(const Vector& v);
Json to_json(const Matrix& m);  // row-major nested arrays
Json to_json(Complex z);        // [re, im]
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

/// {d1, d2, M1, M2, c1, c2}. Errors: InvalidInput for missing fields,
/// plus the QuadraticGame constructor errors.
QuadraticGame game_from_json(const Json& j, const Tolerances& tol = {});
Json game_to_json(const QuadraticGame& game);

/// {K, dt, n, m1, m2, F, G1, G2, x0, Q1, Q2, R1, R2, xbar1, xbar2}, where
/// each per-step entry may be a single matrix/vector (time-invariant) or a
/// list of K of them; or {"preset": "single_integrator_2d"}.
LtvGame ltv_from_json(const Json& j, const Tolerances& tol = {});

struct TGridSpec {
  double lo = 1e-3;
  double hi = 1e3;
  int n = 200;
};

struct Scenario {
  std::string name;
  std::optional<QuadraticGame> game;
  std::optional<LtvGame> ltv;
  Tolerances tol;
  TGridSpec t_grid;

  // The quadratic game analysed by every command (the assembled one for LTV).
  const QuadraticGame& quadratic() const { return ltv ? ltv->game : *game; }
};

/// Accepts {game: {...}} / {ltv: {...}} wrappers or a bare game / LTV
/// object, with optional "name", "tolerances" {key: value} and "t_grid"
/// {lo, hi, n}. `overrides` are applied after the file's tolerances.
Scenario parse_scenario(const Json& j,
                        const std::vector<std::pair<std::string, double>>& overrides = {});
Scenario load_scenario(const std::string& path,
                       const std::vector<std::pair<std::string, double>>& overrides = {});

Json to_json(const EquilibriumSet& eq);
Json to_json(const AssumptionReport& rep);
Json to_json(const Cutoffs& c);
Json to_json(const BlowupReport& rep);
Json to_json(const BlowupLocus& locus);
Json to_json(const EllipsoidBound& ball, Family family, double param, const char* role);
Json to_json(const NotApplicable& na);
Json to_json(const PointBounds& pb);
Json curve_to_json(const EigenExpansion& exp, const std::vector<CurveSample>& samples);

// Columns: t, theta1, theta2, u_0..u_{d-1}, min_spec_gap, status.
void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples, int d);
// Columns: param, lambda, t_star, theta1, theta2, well_posed, removable.
void write_locus_csv(std::ostream& os, const BlowupLocus& locus);
// Columns: k, t_phys, p1x, p1y, p2x, p2y for k = 0..K (state layout (p1, p2)).
void write_trajectory_csv(std::ostream& os, const LtvGame& ltv, const Matrix& states);

}  // namespace svo::io
