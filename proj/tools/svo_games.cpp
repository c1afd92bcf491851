#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svo/blowup.hpp"
#include "svo/bounds.hpp"
#include "svo/errors.hpp"
#include "svo/io.hpp"
#include "svo/lq.hpp"

namespace {

using svo::io::Json;

constexpr int kExitNotApplicable = 1;
constexpr int kExitError = 2;

struct Options {
  std::string scenario;
  std::string family = "e1";
  std::vector<double> params;
  int param_grid = 0;
  std::vector<double> theta;
  std::string out;
  std::string format;
  std::vector<std::string> tol_overrides;
};

std::vector<std::pair<std::string, double>> parse_overrides(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw svo::Error(svo::ErrorKind::InvalidInput, "--tol-override expects KEY=VAL, got " + item);
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw svo::Error(svo::ErrorKind::InvalidInput, "bad value in --tol-override " + item);
    }
    out.emplace_back(item.substr(0, eq), value);
  }
  return out;
}

svo::Family family_of(const std::string& text) {
  auto f = svo::parse_family(text);
  if (!f) throw svo::Error(svo::ErrorKind::InvalidInput, "unknown family " + text);
  return *f;
}

svo::SvoAngles theta_of(const std::vector<double>& v, bool required) {
  if (v.empty() && !required) return {};
  if (v.size() != 2) {
    throw svo::Error(svo::ErrorKind::InvalidInput, "--theta expects two comma-separated angles");
  }
  return {v[0], v[1]};
}

// Writes to --out or stdout.
void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw svo::Error(svo::ErrorKind::InvalidInput, "cannot write " + opt.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_equilibria(const Options& opt) {
  const auto sc = svo::io::load_scenario(opt.scenario, parse_overrides(opt.tol_overrides));
  const auto& game = sc.quadratic();
  Json out;
  out["scenario"] = sc.name;
  out["d1"] = game.dims().d1;
  out["d2"] = game.dims().d2;
  out["equilibria"] = svo::io::to_json(svo::classical_points(game, sc.tol));
  out["assumptions"] = svo::io::to_json(svo::check_assumptions(game, sc.tol));
  out["cutoffs"] = svo::io::to_json(svo::wellposed_cutoffs(game, sc.tol));
  emit(opt, dump(out));
  return 0;
}

int cmd_curve(const Options& opt) {
  const auto sc = svo::io::load_scenario(opt.scenario, parse_overrides(opt.tol_overrides));
  if (opt.params.size() != 1) {
    throw svo::Error(svo::ErrorKind::InvalidInput, "curve expects exactly one --param");
  }
  const auto exp = svo::build_expansion(sc.quadratic(), family_of(opt.family), opt.params[0], sc.tol);
  const auto grid = svo::log_grid(sc.t_grid.lo, sc.t_grid.hi, sc.t_grid.n);
  const auto samples = svo::sample_curve(exp, grid, true, sc.tol);
  if (opt.format == "json") {
    emit(opt, dump(svo::io::curve_to_json(exp, samples)));
  } else {
    std::ostringstream os;
    svo::io::write_curve_csv(os, samples, sc.quadratic().dims().d());
    emit(opt, os.str());
  }
  return 0;
}

int cmd_blowup(const Options& opt) {
  const auto sc = svo::io::load_scenario(opt.scenario, parse_overrides(opt.tol_overrides));
  std::vector<double> params = opt.params;
  if (opt.param_grid > 0) {
    // Cell midpoints of a uniform split of (0, pi/2).
    for (int k = 0; k < opt.param_grid; ++k) {
      params.push_back((k + 0.5) * (std::numbers::pi / 2.0) / opt.param_grid);
    }
  }
  if (params.empty()) {
    throw svo::Error(svo::ErrorKind::InvalidInput, "blowup needs --param or --param-grid");
  }
  const auto locus = svo::blowup_locus(sc.quadratic(), family_of(opt.family), params, sc.tol);
  if (opt.format == "csv") {
    std::ostringstream os;
    svo::io::write_locus_csv(os, locus);
    emit(opt, os.str());
  } else {
    emit(opt, dump(svo::io::to_json(locus)));
  }
  return 0;
}

int cmd_bounds(const Options& opt) {
  const auto sc = svo::io::load_scenario(opt.scenario, parse_overrides(opt.tol_overrides));
  const auto result = svo::theta_point_bounds(sc.quadratic(), theta_of(opt.theta, true), sc.tol);
  if (const auto* na = std::get_if<svo::NotApplicable>(&result)) {
    emit(opt, dump(svo::io::to_json(*na)));
    return kExitNotApplicable;
  }
  emit(opt, dump(svo::io::to_json(std::get<svo::PointBounds>(result))));
  return 0;
}

int cmd_trajectory(const Options& opt) {
  const auto sc = svo::io::load_scenario(opt.scenario, parse_overrides(opt.tol_overrides));
  if (!sc.ltv) {
    throw svo::Error(svo::ErrorKind::InvalidInput, "trajectory needs an LTV scenario");
  }
  const svo::Vector u = svo::svo_nash_direct(sc.ltv->game, theta_of(opt.theta, false), sc.tol);
  std::ostringstream os;
  svo::io::write_trajectory_csv(os, *sc.ltv, svo::rollout(*sc.ltv, u));
  emit(opt, os.str());
  return 0;
}

void report_error(std::string_view kind, const std::string& message) {
  Json err;
  err["error"] = std::string(kind);
  err["message"] = message;
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social value orientation equilibria of two-player quadratic games"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
    sub->add_option("--out", opt.out, "Output file (default: stdout)");
    sub->add_option("--tol-override", opt.tol_overrides, "Tolerance override KEY=VAL");
  };

  auto* eq = app.add_subcommand("equilibria", "Classical points, assumption checks, cutoffs");
  add_common(eq);

  auto* curve = app.add_subcommand("curve", "Sample one expansion curve");
  add_common(curve);
  curve->add_option("--family", opt.family)->check(CLI::IsMember({"e1", "e2", "e3", "e4"}));
  curve->add_option("--param", opt.params, "Family parameter in (0, pi/2)")->required();
  curve->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));

  auto* blow = app.add_subcommand("blowup", "Blow-up events over a parameter grid");
  add_common(blow);
  blow->add_option("--family", opt.family)->check(CLI::IsMember({"e1", "e2", "e3", "e4"}));
  blow->add_option("--param", opt.params, "Parameter values")->delimiter(',');
  blow->add_option("--param-grid", opt.param_grid, "Uniform interior grid of N parameters");
  blow->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));

  auto* bounds = app.add_subcommand("bounds", "Four-ball certificate at an SVO angle pair");
  add_common(bounds);
  bounds->add_option("--theta", opt.theta, "theta1,theta2")->delimiter(',')->required();
  bounds->add_option("--format", opt.format)->check(CLI::IsMember({"json"}));

  auto* traj = app.add_subcommand("trajectory", "State trajectory of an LTV scenario");
  add_common(traj);
  traj->add_option("--theta", opt.theta, "theta1,theta2 (default 0,0)")->delimiter(',');
  traj->add_option("--format", opt.format)->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("InvalidInput", e.what());
    return kExitError;
  }

  try {
    if (eq->parsed()) return cmd_equilibria(opt);
    if (curve->parsed()) return cmd_curve(opt);
    if (blow->parsed()) return cmd_blowup(opt);
    if (bounds->parsed()) return cmd_bounds(opt);
    if (traj->parsed()) return cmd_trajectory(opt);
  } catch (const svo::Error& e) {
    report_error(svo::to_string(e.kind()), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return kExitError;
  }
  return kExitError;
}
