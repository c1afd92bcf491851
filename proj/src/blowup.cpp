#include "svo/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "svo/errors.hpp"
#include "svo/parallel.hpp"

namespace svo {

namespace {

double cosine(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace

BlowupReport find_blowups(const EigenExpansion& exp, const Tolerances& tol) {
  BlowupReport rep;
  rep.family = exp.family;
  rep.param = exp.param;
  const double eps = tol.spec_rel * exp.spectral_radius;
  for (Eigen::Index i = 0; i < exp.eigenvalues.size(); ++i) {
    const Complex lambda = exp.eigenvalues(i);
    if (lambda.real() < -eps && !is_real_negative(lambda, exp.spectral_radius, tol)) {
      rep.oscillatory.push_back(lambda);
    }
  }

  // Eigenvalues are sorted by real part, so clusters are contiguous runs.
  const auto modes = real_negative_modes(exp, tol);
  const double gap = tol.cluster_rel * exp.spectral_radius;
  for (std::size_t k = 0; k < modes.size();) {
    std::size_t end = k + 1;
    while (end < modes.size() && modes[end].lambda - modes[end - 1].lambda <= gap) ++end;
    BlowupEvent ev;
    double sum = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      ev.indices.push_back(modes[j].index);
      sum += modes[j].lambda;
    }
    ev.lambda = sum / static_cast<double>(end - k);
    ev.t_star = blowup_t(exp.family, ev.lambda);
    ev.theta_star = to_theta(CurveCoord{exp.family, exp.param, ev.t_star});
    rep.events.push_back(std::move(ev));
    k = end;
  }

  if (exp.defective) {
    rep.asymptotes_available = false;
    return rep;
  }
  const GFactors f = g_factors(exp);
  const ComplexVector proj = f.Y.transpose() * exp.direction.cast<Complex>();
  const double dnorm = exp.direction.norm();
  const Eigen::Index d = exp.core.rows();
  for (auto& ev : rep.events) {
    ComplexVector inf = ComplexVector::Zero(d);
    ComplexVector fin = ComplexVector::Zero(d);
    double cluster_proj = 0.0;
    for (Eigen::Index i = 0; i < exp.eigenvalues.size(); ++i) {
      const bool in_cluster =
          std::find(ev.indices.begin(), ev.indices.end(), static_cast<int>(i)) != ev.indices.end();
      if (in_cluster) {
        inf += f.X.col(i) * proj(i);
        cluster_proj += std::norm(proj(i));
      } else {
        fin += f.X.col(i) * (spectral_map(exp.family, exp.eigenvalues(i), ev.t_star) * proj(i));
      }
    }
    ev.u_inf = inf.real();
    ev.u_fin = fin.real();
    ev.removable = std::sqrt(cluster_proj) <= tol.proj * dnorm;
  }
  return rep;
}

BlowupReport find_blowups(const EigenExpansion& exp, const Cutoffs& cutoffs,
                          const Tolerances& tol) {
  BlowupReport rep = find_blowups(exp, tol);
  for (auto& ev : rep.events) {
    ev.well_posed = ev.theta_star.theta1 < cutoffs.theta_bar1 - tol.theta &&
                    ev.theta_star.theta2 < cutoffs.theta_bar2 - tol.theta;
  }
  return rep;
}

std::vector<double> approach_points(double t_star, const std::vector<double>& exponents) {
  std::vector<double> out;
  for (double k : exponents) {
    out.push_back(t_star * (1.0 - std::pow(10.0, -k)));
    out.push_back(t_star * (1.0 + std::pow(10.0, -k)));
  }
  return out;
}

AsymptoteCheck verify_asymptote(const EigenExpansion& exp, const BlowupEvent& event,
                                const std::vector<double>& approach_ts, const Tolerances& tol) {
  if (event.u_inf.size() == 0) {
    throw Error(ErrorKind::DefectiveCore, "asymptotes unavailable for a defective core");
  }
  if (event.removable) {
    throw Error(ErrorKind::InvalidInput, "removable event has no asymptote");
  }
  AsymptoteCheck out;
  const double inf_norm = event.u_inf.norm();
  for (double t : approach_ts) {
    if (std::abs(t - event.t_star) <= tol.blow_rel * (1.0 + event.t_star)) {
      throw Error(ErrorKind::NearBlowup, "approach point coincides with t_star");
    }
    const Vector w = curve_point(exp, t, tol) - exp.base - event.u_fin;
    const double c = cosine(w, event.u_inf);
    const double kappa = std::abs(spectral_map(exp.family, Complex(event.lambda, 0.0), t));
    AsymptoteSample s;
    s.t = t;
    s.angle_error = std::abs(1.0 - std::abs(c));
    s.scale_ratio = w.norm() / (kappa * inf_norm);
    s.side = c >= 0.0 ? 1 : -1;
    out.samples.push_back(s);
    out.worst_angle_error = std::max(out.worst_angle_error, s.angle_error);
  }

  for (int side : {-1, 1}) {
    std::vector<const AsymptoteSample*> run;
    for (const auto& s : out.samples) {
      if ((s.t - event.t_star) * side > 0.0) run.push_back(&s);
    }
    std::sort(run.begin(), run.end(), [&](const auto* a, const auto* b) {
      return std::abs(a->t - event.t_star) > std::abs(b->t - event.t_star);
    });
    for (std::size_t i = 1; i < run.size(); ++i) {
      // Small absolute floor so round-off at the finest points is not read
      // as a loss of alignment.
      if (run[i]->angle_error > run[i - 1]->angle_error + 1e-12) out.monotone = false;
    }
  }
  return out;
}

int BlowupLocus::params_with_events() const {
  int count = 0;
  for (const auto& e : entries) {
    if (!e.report) continue;
    const auto& evs = e.report->events;
    if (std::any_of(evs.begin(), evs.end(), [](const auto& ev) { return ev.well_posed; })) ++count;
  }
  return count;
}

BlowupLocus blowup_locus(const QuadraticGame& game, Family family,
                         const std::vector<double>& params, const Tolerances& tol) {
  BlowupLocus locus;
  locus.family = family;
  locus.entries.resize(params.size());
  std::optional<Cutoffs> cutoffs;
  std::string cutoff_error;
  try {
    cutoffs = wellposed_cutoffs(game, tol);
  } catch (const Error& e) {
    cutoff_error = std::string(to_string(e.kind()));
  }
  parallel_for(params.size(), [&](std::size_t i) {
    LocusEntry& entry = locus.entries[i];
    entry.param = params[i];
    if (!cutoffs) {
      entry.error = cutoff_error;
      return;
    }
    try {
      entry.report = find_blowups(build_expansion(game, family, params[i], tol), *cutoffs, tol);
    } catch (const Error& e) {
      entry.error = std::string(to_string(e.kind()));
    }
  });
  for (const auto& entry : locus.entries) {
    if (!entry.report) continue;
    for (const auto& ev : entry.report->events) {
      if (ev.well_posed) locus.polyline.push_back(ev.theta_star);
    }
  }
  return locus;
}

}  // namespace svo
