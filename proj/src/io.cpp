#include "svo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "svo/errors.hpp"

namespace svo::io {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) invalid(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) invalid(std::string(what) + " must be an integer");
  return j.get<int>();
}

// A single matrix, or a list of K matrices.
std::vector<Matrix> matrix_series(const Json& j, int K, const char* name) {
  if (!j.is_array() || j.empty()) invalid(std::string(name) + " must be a non-empty array");
  const bool is_list = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (!is_list) return std::vector<Matrix>(static_cast<std::size_t>(K), matrix_from_json(j));
  if (static_cast<int>(j.size()) != K) {
    throw Error(ErrorKind::ShapeMismatch, std::string(name) + " must list K matrices");
  }
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

std::vector<Vector> vector_series(const Json& j, int K, const char* name) {
  if (!j.is_array() || j.empty()) invalid(std::string(name) + " must be a non-empty array");
  if (!j[0].is_array()) return std::vector<Vector>(static_cast<std::size_t>(K), vector_from_json(j));
  if (static_cast<int>(j.size()) != K) {
    throw Error(ErrorKind::ShapeMismatch, std::string(name) + " must list K vectors");
  }
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

Json theta_json(const SvoAngles& th) { return Json::array({th.theta1, th.theta2}); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) invalid("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) invalid("expected a non-empty nested array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) invalid("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], "matrix entry");
    }
  }
  return m;
}

QuadraticGame game_from_json(const Json& j, const Tolerances& tol) {
  const Dims dims(integer(field(j, "d1"), "d1"), integer(field(j, "d2"), "d2"));
  return QuadraticGame(dims, matrix_from_json(field(j, "M1")), matrix_from_json(field(j, "M2")),
                       vector_from_json(field(j, "c1")), vector_from_json(field(j, "c2")), tol);
}

Json game_to_json(const QuadraticGame& game) {
  Json out;
  out["d1"] = game.dims().d1;
  out["d2"] = game.dims().d2;
  out["M1"] = to_json(game.M1());
  out["M2"] = to_json(game.M2());
  out["c1"] = to_json(game.c1());
  out["c2"] = to_json(game.c2());
  return out;
}

LtvGame ltv_from_json(const Json& j, const Tolerances& tol) {
  if (j.contains("preset")) {
    const auto& preset = j.at("preset");
    if (!preset.is_string() || preset.get<std::string>() != "single_integrator_2d") {
      invalid("unknown LTV preset");
    }
    return single_integrator_scenario();
  }
  LtvSystem s;
  s.K = integer(field(j, "K"), "K");
  s.n = integer(field(j, "n"), "n");
  s.m1 = integer(field(j, "m1"), "m1");
  s.m2 = integer(field(j, "m2"), "m2");
  if (s.K < 1) throw Error(ErrorKind::ShapeMismatch, "K must be positive");
  if (j.contains("dt")) s.dt = number(j.at("dt"), "dt");
  s.F = matrix_series(field(j, "F"), s.K, "F");
  s.G1 = matrix_series(field(j, "G1"), s.K, "G1");
  s.G2 = matrix_series(field(j, "G2"), s.K, "G2");
  s.x0 = vector_from_json(field(j, "x0"));
  LtvCosts c;
  c.Q1 = matrix_series(field(j, "Q1"), s.K, "Q1");
  c.Q2 = matrix_series(field(j, "Q2"), s.K, "Q2");
  c.R1 = matrix_series(field(j, "R1"), s.K, "R1");
  c.R2 = matrix_series(field(j, "R2"), s.K, "R2");
  c.xbar1 = vector_series(field(j, "xbar1"), s.K, "xbar1");
  c.xbar2 = vector_series(field(j, "xbar2"), s.K, "xbar2");
  return build_ltv_game(s, c, tol);
}

Scenario parse_scenario(const Json& j,
                        const std::vector<std::pair<std::string, double>>& overrides) {
  if (!j.is_object()) invalid("scenario must be a JSON object");
  Scenario sc;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) invalid("name must be a string");
    sc.name = j.at("name").get<std::string>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) invalid("tolerances must be an object");
    for (const auto& [key, value] : t.items()) sc.tol.set(key, number(value, "tolerance"));
  }
  for (const auto& [key, value] : overrides) sc.tol.set(key, value);
  if (j.contains("t_grid")) {
    const auto& g = j.at("t_grid");
    sc.t_grid.lo = number(field(g, "lo"), "t_grid.lo");
    sc.t_grid.hi = number(field(g, "hi"), "t_grid.hi");
    sc.t_grid.n = integer(field(g, "n"), "t_grid.n");
    if (!(sc.t_grid.lo > 0.0 && sc.t_grid.hi >= sc.t_grid.lo && sc.t_grid.n >= 1)) {
      invalid("t_grid must satisfy 0 < lo <= hi and n >= 1");
    }
  }

  const bool has_game = j.contains("game");
  const bool has_ltv = j.contains("ltv");
  if (has_game && has_ltv) invalid("scenario must contain exactly one of 'game' and 'ltv'");
  if (has_game) {
    sc.game.emplace(game_from_json(j.at("game"), sc.tol));
  } else if (has_ltv) {
    sc.ltv.emplace(ltv_from_json(j.at("ltv"), sc.tol));
  } else if (j.contains("d1")) {
    sc.game.emplace(game_from_json(j, sc.tol));
  } else if (j.contains("K") || j.contains("preset")) {
    sc.ltv.emplace(ltv_from_json(j, sc.tol));
  } else {
    invalid("scenario must contain a game or an LTV system");
  }
  return sc;
}

Scenario load_scenario(const std::string& path,
                       const std::vector<std::pair<std::string, double>>& overrides) {
  std::ifstream in(path);
  if (!in) invalid("cannot open scenario file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(j, overrides);
}

Json to_json(const EquilibriumSet& eq) {
  Json out;
  out["u_nash"] = to_json(eq.u_nash);
  out["u_altruistic"] = to_json(eq.u_altruistic);
  out["u_player1"] = to_json(eq.u_player1);
  out["u_player2"] = to_json(eq.u_player2);
  out["u_social"] = to_json(eq.u_social);
  const auto& r = eq.residuals;
  out["residuals"] = {{"nash", r.nash},         {"altruistic", r.altruistic},
                      {"player1", r.player1},   {"player2", r.player2},
                      {"social", r.social},     {"social_cross", r.social_cross}};
  return out;
}

Json to_json(const AssumptionReport& rep) {
  Json out;
  out["assump_1a"] = rep.assump_1a;
  out["assump_1b"] = rep.assump_1b;
  out["assump_1c"] = rep.assump_1c;
  out["implication_violated"] = rep.implication_violated;
  Json inv = Json::object();
  for (const auto& [name, v] : rep.invertibility) {
    inv[name] = {{"invertible", v.invertible}, {"rcond", v.rcond}};
  }
  out["invertibility"] = std::move(inv);
  Json eigs = Json::object();
  for (const auto& [name, v] : rep.min_eigs) eigs[name] = v;
  out["min_eigs"] = std::move(eigs);
  return out;
}

Json to_json(const Cutoffs& c) {
  return {{"theta_bar1", c.theta_bar1}, {"theta_bar2", c.theta_bar2}};
}

Json to_json(const BlowupReport& rep) {
  Json out;
  out["family"] = std::string(to_string(rep.family));
  out["param"] = rep.param;
  Json events = Json::array();
  for (const auto& ev : rep.events) {
    Json e;
    e["lambda"] = ev.lambda;
    e["multiplicity"] = ev.indices.size();
    e["t_star"] = ev.t_star;
    e["theta_star"] = theta_json(ev.theta_star);
    e["u_fin"] = to_json(ev.u_fin);
    e["u_inf"] = to_json(ev.u_inf);
    e["removable"] = ev.removable;
    e["well_posed"] = ev.well_posed;
    events.push_back(std::move(e));
  }
  out["events"] = std::move(events);
  Json osc = Json::array();
  for (const auto& z : rep.oscillatory) osc.push_back(to_json(z));
  out["oscillatory"] = std::move(osc);
  out["asymptotes_available"] = rep.asymptotes_available;
  return out;
}

Json to_json(const BlowupLocus& locus) {
  Json out;
  out["family"] = std::string(to_string(locus.family));
  Json entries = Json::array();
  for (const auto& entry : locus.entries) {
    Json e;
    if (entry.report) {
      e = to_json(*entry.report);
    } else {
      e["family"] = std::string(to_string(locus.family));
      e["param"] = entry.param;
      e["events"] = Json::array();
      e["oscillatory"] = Json::array();
      e["asymptotes_available"] = false;
    }
    e["error"] = entry.error.empty() ? Json(nullptr) : Json(entry.error);
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  Json poly = Json::array();
  for (const auto& th : locus.polyline) poly.push_back(theta_json(th));
  out["polyline"] = std::move(poly);
  out["params_with_events"] = locus.params_with_events();
  return out;
}

Json to_json(const EllipsoidBound& ball, Family family, double param, const char* role) {
  Json out;
  out["family"] = std::string(to_string(family));
  out["param"] = param;
  out["role"] = role;
  out["center"] = to_json(ball.center);
  out["radius"] = ball.radius;
  out["P"] = to_json(ball.P);
  return out;
}

Json to_json(const NotApplicable& na) {
  Json out;
  out["status"] = "not_applicable";
  out["family"] = na.family;
  out["param"] = na.param;
  out["reason"] = na.reason;
  Json off = Json::array();
  for (const auto& z : na.offending) off.push_back(to_json(z));
  out["offending"] = std::move(off);
  return out;
}

Json to_json(const PointBounds& pb) {
  Json out;
  out["status"] = "certified";
  out["theta"] = theta_json(pb.theta);
  Json balls = Json::array();
  balls.push_back(to_json(pb.e1.base_ball, pb.e1.family, pb.e1.param, "base"));
  balls.push_back(to_json(pb.e1.target_ball, pb.e1.family, pb.e1.param, "target"));
  balls.push_back(to_json(pb.e2.base_ball, pb.e2.family, pb.e2.param, "base"));
  balls.push_back(to_json(pb.e2.target_ball, pb.e2.family, pb.e2.param, "target"));
  out["balls"] = std::move(balls);
  out["u_theta"] = to_json(pb.u_theta);
  out["member"] = pb.member;
  return out;
}

Json curve_to_json(const EigenExpansion& exp, const std::vector<CurveSample>& samples) {
  Json out;
  out["family"] = std::string(to_string(exp.family));
  out["param"] = exp.param;
  Json eig = Json::array();
  for (Eigen::Index i = 0; i < exp.eigenvalues.size(); ++i) eig.push_back(to_json(exp.eigenvalues(i)));
  out["eigenvalues"] = std::move(eig);
  out["base"] = to_json(exp.base);
  out["target"] = to_json(exp.target);
  Json rows = Json::array();
  for (const auto& s : samples) {
    Json r;
    r["t"] = s.t;
    r["theta"] = theta_json(s.theta);
    r["u"] = to_json(s.u);
    r["min_spec_gap"] = std::isfinite(s.min_spec_gap) ? Json(s.min_spec_gap) : Json(nullptr);
    r["status"] = s.status;
    rows.push_back(std::move(r));
  }
  out["samples"] = std::move(rows);
  return out;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples, int d) {
  os << "t,theta1,theta2";
  for (int i = 0; i < d; ++i) os << ",u_" << i;
  os << ",min_spec_gap,status\n";
  for (const auto& s : samples) {
    os << format_double(s.t) << ',' << format_double(s.theta.theta1) << ','
       << format_double(s.theta.theta2);
    for (int i = 0; i < d; ++i) os << ',' << format_double(s.u(i));
    os << ',' << format_double(s.min_spec_gap) << ',' << s.status << '\n';
  }
}

void write_locus_csv(std::ostream& os, const BlowupLocus& locus) {
  os << "param,lambda,t_star,theta1,theta2,well_posed,removable\n";
  for (const auto& entry : locus.entries) {
    if (!entry.report) continue;
    for (const auto& ev : entry.report->events) {
      os << format_double(entry.param) << ',' << format_double(ev.lambda) << ','
         << format_double(ev.t_star) << ',' << format_double(ev.theta_star.theta1) << ','
         << format_double(ev.theta_star.theta2) << ',' << (ev.well_posed ? 1 : 0) << ','
         << (ev.removable ? 1 : 0) << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& os, const LtvGame& ltv, const Matrix& states) {
  const auto& s = ltv.system;
  if (s.n < 4 || states.rows() != s.n || states.cols() != s.K) {
    throw Error(ErrorKind::ShapeMismatch, "trajectory CSV needs n >= 4 and K states");
  }
  os << "k,t_phys,p1x,p1y,p2x,p2y\n";
  for (int k = 0; k <= s.K; ++k) {
    const Vector x = k == 0 ? s.x0 : Vector(states.col(k - 1));
    os << k << ',' << format_double(k * s.dt);
    for (int i = 0; i < 4; ++i) os << ',' << format_double(x(i));
    os << '\n';
  }
}

}  // namespace svo::io
