// One pass/fail line per acceptance criterion; exits 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"
#include "svo/blowup.hpp"
#include "svo/bounds.hpp"
#include "svo/errors.hpp"
#include "svo/lq.hpp"

using svo::Family;
using svo::Matrix;
using svo::Vector;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Family kAll[] = {Family::E1, Family::E2, Family::E3, Family::E4};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double relative(const Vector& a, const Vector& ref) {
  return (a - ref).norm() / std::max(ref.norm(), 1e-300);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

struct Result {
  bool pass = false;
  std::string detail;
};

Result criterion1() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  const int n = 15;
  double worst = 0.0;
  long checked = 0, skipped = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d1 = 1 + trial % 4, d2 = 1 + (trial / 4) % 4;
    const auto g = oracle::random_pd_game(rng, d1, d2);
    const auto cut = svo::wellposed_cutoffs(g);
    for (auto f : kAll) {
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const svo::SvoAngles th{(kPi / 2) * i / (n + 1), (kPi / 2) * j / (n + 1)};
          const auto c = svo::from_theta(f, th);
          Vector u, direct;
          try {
            direct = svo::svo_nash_direct(g, th, cut);
            u = svo::curve_point(svo::build_expansion(g, f, c.param), c.t);
          } catch (const svo::Error& e) {
            if (e.kind() != svo::ErrorKind::NearBlowup && e.kind() != svo::ErrorKind::SingularAtTheta) {
              return {false, std::string("unexpected error ") + std::string(svo::to_string(e.kind()))};
            }
            ++skipped;
            continue;
          }
          worst = std::max(worst, relative(u, direct));
          ++checked;
        }
      }
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-8 && secs < 60.0,
          "max rel err " + fmt(worst) + " over " + std::to_string(checked) + " points (" +
              std::to_string(skipped) + " blow-up skips), " + fmt(secs) + " s"};
}

Result criterion2() {
  std::mt19937_64 rng(1002);
  double worst_small = 0.0, worst_large = 0.0;
  int bounded = 0;
  std::vector<svo::QuadraticGame> games{oracle::example_2d(), oracle::example_3d()};
  for (int trial = 0; trial < 40; ++trial) games.push_back(oracle::random_pd_game(rng, 1 + trial % 4, 1 + trial % 3));
  for (const auto& g : games) {
    const auto eq = svo::classical_points(g);
    for (auto f : {Family::E1, Family::E2}) {
      for (double p : {0.3, kPi / 4, 1.2}) {
        const auto exp = svo::build_expansion(g, f, p);
        const Vector& lo = f == Family::E1 ? eq.u_nash : eq.u_player1;
        const Vector& hi = f == Family::E1 ? eq.u_altruistic : eq.u_player2;
        worst_small = std::max(worst_small, (svo::curve_point(exp, 1e-8) - lo).norm());
        if (svo::real_negative_modes(exp).empty()) {
          ++bounded;
          worst_large = std::max(worst_large, (svo::curve_point(exp, 1e8) - hi).norm());
        }
      }
    }
  }
  return {worst_small <= 1e-6 && worst_large <= 1e-6 && bounded > 0,
          "t=1e-8 dist " + fmt(worst_small) + ", t=1e8 dist " + fmt(worst_large) + " over " +
              std::to_string(bounded) + " bounded curves"};
}

Result criterion3() {
  std::mt19937_64 rng(1003);
  double worst = 0.0, cross = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_pd_game(rng, 1 + trial % 4, 1 + (trial / 4) % 4);
    const auto eq = svo::classical_points(g);
    worst = std::max(worst, relative(svo::svo_nash_direct(g, {kPi / 4, kPi / 4}), eq.u_social));
    cross = std::max(cross, eq.residuals.social_cross);
  }
  return {worst <= 1e-9 && cross <= 1e-10,
          "rel err " + fmt(worst) + ", (M1+M2) vs (M+N) gap " + fmt(cross)};
}

Result criterion4() {
  const auto g = oracle::example_2d();
  int samples = 0, outside = 0;
  for (auto f : {Family::E1, Family::E2}) {
    for (int k = 0; k < 20; ++k) {
      const double p = (k + 0.5) * (kPi / 2) / 20;
      const auto exp = svo::build_expansion(g, f, p);
      const auto res = svo::curve_bounds(exp);
      if (!std::holds_alternative<svo::CurveBounds>(res)) {
        return {false, "curve bounds not applicable for " + std::string(svo::to_string(f)) +
                           " at " + fmt(p)};
      }
      const auto& cb = std::get<svo::CurveBounds>(res);
      const double slack = 1e-9 * cb.base_ball.radius;
      for (double t : svo::log_grid(1e-4, 1e4, 50)) {
        const Vector u = svo::curve_point(exp, t);
        ++samples;
        outside += !(cb.base_ball.contains(u, slack) && cb.target_ball.contains(u, slack));
      }
    }
  }
  int members = 0;
  const std::vector<svo::SvoAngles> thetas{{kPi / 8, 3 * kPi / 8}, {3 * kPi / 8, kPi / 8}, {kPi / 4, kPi / 4}};
  for (const auto& th : thetas) {
    const auto res = svo::theta_point_bounds(g, th);
    if (const auto* pb = std::get_if<svo::PointBounds>(&res)) {
      members += pb->member && relative(pb->u_theta, oracle::svo_equilibrium(g, th.theta1, th.theta2)) < 1e-9;
    }
  }
  return {outside == 0 && members == 3,
          std::to_string(samples - outside) + "/" + std::to_string(samples) +
              " curve samples in both balls, " + std::to_string(members) + "/3 four-ball memberships"};
}

Result criterion5() {
  std::mt19937_64 rng(1005);
  double worst_imag = 0.0, worst_match = 0.0;
  bool positive = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 8;
    const auto rep = svo::check_m1m2_spectrum(oracle::random_spd(rng, d), oracle::random_spd(rng, d));
    worst_imag = std::max(worst_imag, rep.max_imag / rep.spectral_radius);
    worst_match = std::max(worst_match, rep.max_mismatch);
    positive = positive && rep.real_positive && rep.direct.real().minCoeff() > 0.0;
  }
  return {positive && worst_imag <= 1e-10 && worst_match <= 1e-8,
          "max |Im|/rho " + fmt(worst_imag) + ", direct vs congruence " + fmt(worst_match)};
}

Result criterion6() {
  std::vector<double> params;
  for (int k = 0; k < 20; ++k) params.push_back((k + 0.5) * (kPi / 2) / 20);
  std::ostringstream detail;
  bool pass = true;
  for (int num : {-2, 0, 2}) {
    const auto locus = svo::blowup_locus(oracle::rotated_example(num * kPi / 16), Family::E1, params);
    int with_events = 0;
    for (const auto& e : locus.entries) with_events += e.report && !e.report->events.empty();
    pass = pass && with_events == 0;
    detail << "gamma=" << num << "pi/16: " << with_events << "/20; ";
  }
  double worst_angle = 0.0;
  for (int num : {7, 8, 9}) {
    const auto g = oracle::rotated_example(num * kPi / 16);
    const auto locus = svo::blowup_locus(g, Family::E1, params);
    int with_events = 0;
    for (const auto& e : locus.entries) {
      if (!e.report || e.report->events.empty()) continue;
      ++with_events;
      const auto exp = svo::build_expansion(g, Family::E1, e.param);
      for (const auto& ev : e.report->events) {
        if (ev.removable) continue;
        const auto chk = svo::verify_asymptote(exp, ev, svo::approach_points(ev.t_star, {5.0}));
        worst_angle = std::max(worst_angle, chk.worst_angle_error);
      }
    }
    pass = pass && with_events >= 16;
    detail << "gamma=" << num << "pi/16: " << with_events << "/20; ";
  }
  pass = pass && worst_angle < 1e-3;
  detail << "asymptote angle err " << fmt(worst_angle);
  return {pass, detail.str()};
}

Result criterion7() {
  const auto start = Clock::now();
  const auto ltv = svo::single_integrator_scenario();
  const auto& g = ltv.game;
  const auto cut = svo::wellposed_cutoffs(g);
  const bool a = std::abs(cut.theta_bar1 - 3 * kPi / 8) <= 0.05 && std::abs(cut.theta_bar2 - 3 * kPi / 8) <= 0.05;

  const Matrix X = svo::rollout(ltv, svo::svo_nash_direct(g, {0.0, 0.0}, cut));
  double deviation = 0.0;
  for (int k = 0; k < ltv.system.K; ++k) {
    const Vector e = X.col(k) - ltv.costs.xbar1[k];
    deviation = std::max({deviation, e.head(2).norm(), e.tail(2).norm()});
  }
  const bool b = deviation <= 0.1;

  const auto exp = svo::build_expansion(g, Family::E1, kPi / 4);
  const auto rep = svo::find_blowups(exp, cut);
  std::vector<svo::BlowupEvent> wp;
  for (const auto& ev : rep.events) {
    if (ev.well_posed) wp.push_back(ev);
  }
  auto nearest = [&](double target) -> const svo::BlowupEvent* {
    const svo::BlowupEvent* best = nullptr;
    for (const auto& ev : wp) {
      if (!best || std::abs(ev.lambda - target) < std::abs(best->lambda - target)) best = &ev;
    }
    return best;
  };
  const auto* e11 = nearest(-1.1);
  const auto* e22 = nearest(-2.2);
  const bool c = wp.size() == 2 && e11 && e22 && std::abs(e11->lambda + 1.1) <= 0.05 &&
                 std::abs(e22->lambda + 2.2) <= 0.05;
  bool d = false;
  int s11 = -1, s22 = -1;
  if (e11 && e22 && e11 != e22 && rep.asymptotes_available) {
    s11 = svo::trajectory_asymptotes(ltv, *e11).control_sign_changes;
    s22 = svo::trajectory_asymptotes(ltv, *e22).control_sign_changes;
    d = s22 > s11;
  }
  const double secs = seconds_since(start);
  std::ostringstream lambdas;
  for (const auto& ev : wp) lambdas << fmt(ev.lambda) << "(x" << ev.indices.size() << ") ";
  std::ostringstream detail;
  detail << "(a) " << (a ? "ok" : "FAIL") << " cutoffs " << fmt(cut.theta_bar1) << "," << fmt(cut.theta_bar2)
         << "; (b) " << (b ? "ok" : "FAIL") << " max deviation " << fmt(deviation)
         << "; (c) " << (c ? "ok" : "FAIL") << " " << wp.size() << " well-posed events " << lambdas.str()
         << "of " << rep.events.size() << " total; (d) " << (d ? "ok" : "FAIL") << " sign changes "
         << s11 << " vs " << s22 << "; " << fmt(secs) << " s";
  return {a && b && c && d && secs < 120.0, detail.str()};
}

Result criterion8() {
  std::mt19937_64 rng(1008);
  double worst_cost = 0.0, worst_roll = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int K = 1 + trial % 10, n = 1 + trial % 4, m1 = 1 + trial % 3, m2 = 1 + (trial / 3) % 3;
    const auto r = oracle::random_ltv(rng, K, n, m1, m2);
    const auto ltv = svo::build_ltv_game(r.system, r.costs);
    const Vector u = oracle::random_vector(rng, K * (m1 + m2));
    for (int p : {1, 2}) {
      const double ref = oracle::stage_cost(r.system, r.costs, p, u);
      const double quad = svo::cost(ltv.game, p, u) + (p == 1 ? ltv.constant1 : ltv.constant2);
      worst_cost = std::max(worst_cost, std::abs(quad - ref) / std::max(std::abs(ref), 1e-300));
    }
    const Matrix X = svo::rollout(ltv, u);
    const auto xs = oracle::simulate(r.system, u);
    for (int k = 0; k < K; ++k) {
      worst_roll = std::max(worst_roll, (X.col(k) - xs[k]).norm() / std::max(1.0, xs[k].norm()));
    }
  }
  return {worst_cost <= 1e-9 && worst_roll <= 1e-12,
          "cost rel err " + fmt(worst_cost) + ", rollout err " + fmt(worst_roll)};
}

Result criterion9() {
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> ang(0.05, kPi / 2 - 0.05);
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 200) {
    const int d1 = 1 + pairs % 4, d2 = 1 + (pairs / 4) % 4;
    const auto g = oracle::random_pd_game(rng, d1, d2);
    const double th1 = ang(rng), th2 = ang(rng);
    const Vector u = svo::svo_nash_direct(g, {th1, th2});
    for (int player : {1, 2}) {
      const double th = player == 1 ? th1 : th2;
      const Vector grad = oracle::fd_gradient(
          [&](const Vector& v) { return oracle::svo_cost(g, player, th, v); }, u, 1e-5);
      const Vector own = player == 1 ? Vector(grad.head(d1)) : Vector(grad.tail(d2));
      const double scale = g.M(player).norm() * u.norm() + g.c(player).norm();
      worst = std::max(worst, own.norm() / scale);
    }
    ++pairs;
  }
  return {worst <= 1e-5, "max relative gradient " + fmt(worst) + " over 200 pairs"};
}

bool read_file(const std::filesystem::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  out = os.str();
  return true;
}

Result criterion10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("svo_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Job {
    std::string scenario, args, kind, ext;
  };
  std::vector<Job> jobs;
  for (const char* s : {"example_2d", "example_3d", "rotated_gamma_minus_2pi16", "rotated_gamma_0pi16",
                        "rotated_gamma_2pi16", "rotated_gamma_7pi16", "rotated_gamma_8pi16",
                        "rotated_gamma_9pi16"}) {
    jobs.push_back({s, "equilibria", "equilibria", "json"});
    jobs.push_back({s, "curve --family e1 --param 0.7 --format json", "curve", "json"});
    jobs.push_back({s, "curve --family e2 --param 0.7 --format csv", "curve_csv", "csv"});
    jobs.push_back({s, "blowup --family e1 --param-grid 20 --format json", "blowup", "json"});
    jobs.push_back({s, "blowup --family e1 --param-grid 20 --format csv", "locus_csv", "csv"});
    jobs.push_back({s, "bounds --theta 0.4,1.1", "bounds", "json"});
  }
  jobs.push_back({"single_integrator_2d", "equilibria", "equilibria", "json"});
  jobs.push_back({"single_integrator_2d", "blowup --family e1 --param 0.7853981633974483 --format json",
                  "blowup", "json"});
  jobs.push_back({"single_integrator_2d", "trajectory --theta 0,0", "trajectory_csv", "csv"});

  int identical = 0, valid = 0, failures = 0;
  std::string first_problem;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    std::string bytes[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / (std::to_string(i) + "_" + std::to_string(run) + "." + job.ext);
      const std::string cmd = std::string("\"") + SVO_CLI_PATH + "\" " + job.args + " --scenario \"" +
                              SVO_SCENARIO_DIR + "/" + job.scenario + ".json\" --out \"" + out.string() +
                              "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      if ((code != 0 && code != 1) || !read_file(out, bytes[run])) bytes[run] = "\x01missing";
    }
    if (bytes[0] == bytes[1] && bytes[0] != "\x01missing") {
      ++identical;
    } else if (first_problem.empty()) {
      first_problem = job.scenario + " " + job.args + " not reproducible";
    }
    const fs::path out = dir / (std::to_string(i) + "_0." + job.ext);
    const std::string check = std::string("\"") + SVO_PYTHON + "\" \"" + SVO_VALIDATOR + "\" " + job.kind +
                              " \"" + out.string() + "\"";
    if (std::system(check.c_str()) == 0) {
      ++valid;
    } else {
      ++failures;
      if (first_problem.empty()) first_problem = job.scenario + " " + job.args + " fails schema";
    }
  }
  fs::remove_all(dir);
  const int n = static_cast<int>(jobs.size());
  std::string detail = std::to_string(identical) + "/" + std::to_string(n) + " byte-identical, " +
                       std::to_string(valid) + "/" + std::to_string(n) + " schema-valid";
  if (!first_problem.empty()) detail += "; " + first_problem;
  return {identical == n && valid == n && failures == 0, detail};
}

}  // namespace

int main() {
  using Fn = Result (*)();
  const std::vector<std::pair<const char*, Fn>> criteria{
      {"expansions match direct solve", criterion1},
      {"endpoint limits", criterion2},
      {"prosocial identity", criterion3},
      {"ellipsoid containment", criterion4},
      {"M1 M2^-1 spectrum", criterion5},
      {"rotated-example blow-ups", criterion6},
      {"single-integrator LQ scenario", criterion7},
      {"LQ assembly", criterion8},
      {"finite-difference stationarity", criterion9},
      {"CLI determinism and schemas", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": " << criteria[i].first
              << " -- " << r.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
