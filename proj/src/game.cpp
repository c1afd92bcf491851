#include "svo/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "svo/errors.hpp"

namespace svo {

Dims::Dims(int player1, int player2) : d1(player1), d2(player2) {
  if (d1 < 1 || d2 < 1) {
    throw Error(ErrorKind::DimensionMismatch, "action dimensions must be >= 1, got d1=" +
                                                  std::to_string(d1) + " d2=" + std::to_string(d2));
  }
}

int Dims::own(int player) const { return player == 1 ? d1 : d2; }

namespace {

void require_player(int player) {
  if (player != 1 && player != 2) {
    throw Error(ErrorKind::InvalidInput, "player index must be 1 or 2");
  }
}

void check_shape(const Matrix& m, int d, const char* name) {
  if (m.rows() != d || m.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(name) + " must be " + std::to_string(d) + "x" + std::to_string(d) +
                    ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void check_shape(const Vector& v, int d, const char* name) {
  if (v.size() != d) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " must have length " +
                                                  std::to_string(d) + ", got " +
                                                  std::to_string(v.size()));
  }
}

double symmetrize(Matrix& m, const Tolerances& tol, const char* name) {
  const double asym = (m - m.transpose()).norm();
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + " has non-finite entries");
  }
  if (asym > tol.sym_rel * m.norm()) {
    throw Error(ErrorKind::AsymmetryExceedsTolerance,
                std::string(name) + " asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  m = sym_part(m);
  return asym;
}

}  // namespace

QuadraticGame::QuadraticGame(Dims dims, const Matrix& M1, const Matrix& M2, const Vector& c1,
                             const Vector& c2, const Tolerances& tol)
    : dims_(dims), M1_(M1), M2_(M2), c1_(c1), c2_(c2) {
  const int d = dims_.d();
  const int d1 = dims_.d1;
  const int d2 = dims_.d2;
  check_shape(M1_, d, "M1");
  check_shape(M2_, d, "M2");
  check_shape(c1_, d, "c1");
  check_shape(c2_, d, "c2");
  if (!c1_.allFinite() || !c2_.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "cost vectors have non-finite entries");
  }
  asym1_ = symmetrize(M1_, tol, "M1");
  asym2_ = symmetrize(M2_, tol, "M2");

  auto& b = blocks_;
  b.A1 = M1_.topLeftCorner(d1, d1);
  b.B1 = M1_.bottomLeftCorner(d2, d1);
  b.D1 = M1_.bottomRightCorner(d2, d2);
  b.D2 = M2_.topLeftCorner(d1, d1);
  b.B2 = M2_.topRightCorner(d1, d2);
  b.A2 = M2_.bottomRightCorner(d2, d2);
  b.a1 = c1_.head(d1);
  b.b1 = c1_.tail(d2);
  b.b2 = c2_.head(d1);
  b.a2 = c2_.tail(d2);

  auto& agg = aggregates_;
  agg.M.resize(d, d);
  agg.M << b.A1, b.B2, b.B1, b.A2;
  agg.N.resize(d, d);
  agg.N << b.D2, b.B1.transpose(), b.B2.transpose(), b.D1;
  agg.a.resize(d);
  agg.a << b.a1, b.a2;
  agg.b.resize(d);
  agg.b << b.b2, b.b1;
}

QuadraticGame QuadraticGame::from_blocks(const Subblocks& b, const Tolerances& tol) {
  const int d1 = static_cast<int>(b.A1.rows());
  const int d2 = static_cast<int>(b.A2.rows());
  Dims dims(d1, d2);
  const int d = dims.d();
  Matrix M1(d, d), M2(d, d);
  M1 << b.A1, b.B1.transpose(), b.B1, b.D1;
  M2 << b.D2, b.B2, b.B2.transpose(), b.A2;
  Vector c1(d), c2(d);
  c1 << b.a1, b.b1;
  c2 << b.b2, b.a2;
  return QuadraticGame(dims, M1, M2, c1, c2, tol);
}

const Matrix& QuadraticGame::M(int player) const {
  require_player(player);
  return player == 1 ? M1_ : M2_;
}

const Vector& QuadraticGame::c(int player) const {
  require_player(player);
  return player == 1 ? c1_ : c2_;
}

double QuadraticGame::asymmetry(int player) const {
  require_player(player);
  return player == 1 ? asym1_ : asym2_;
}

const Subblocks& subblocks(const QuadraticGame& game) { return game.blocks(); }
const AggregateMatrices& aggregates(const QuadraticGame& game) { return game.aggregates(); }

bool is_positive_definite(const Matrix& block, const Tolerances& tol) {
  const double scale = std::max(1.0, spectral_norm(block));
  return min_sym_eig(block) > tol.pd_rel * scale;
}

AssumptionReport check_assumptions(const QuadraticGame& game, const Tolerances& tol) {
  const auto& b = game.blocks();
  const auto& agg = game.aggregates();
  AssumptionReport report;

  const std::pair<const char*, const Matrix*> named[] = {
      {"A1", &b.A1}, {"A2", &b.A2}, {"D1", &b.D1},
      {"D2", &b.D2}, {"M1", &game.M1()}, {"M2", &game.M2()},
  };
  std::map<std::string, bool> pd;
  for (const auto& [name, m] : named) {
    report.min_eigs[name] = min_sym_eig(*m);
    pd[name] = is_positive_definite(*m, tol);
  }
  report.assump_1a = pd["A1"] && pd["A2"];
  report.assump_1b = report.assump_1a && pd["D1"] && pd["D2"];
  report.assump_1c = pd["M1"] && pd["M2"];
  // Principal blocks of a PD matrix are PD, so 1c must imply 1b; a failure
  // here means the tolerance regime is inconsistent for this game.
  report.implication_violated = report.assump_1c && !report.assump_1b;

  const Matrix sum = game.M1() + game.M2();
  const std::pair<const char*, const Matrix*> inv[] = {
      {"M1", &game.M1()}, {"M2", &game.M2()}, {"M", &agg.M}, {"N", &agg.N}, {"M1+M2", &sum},
  };
  for (const auto& [name, m] : inv) {
    const double r = rcond(*m);
    report.invertibility[name] = Invertibility{r > tol.inv_rcond, r};
  }
  return report;
}

Matrix effective_curvature(const QuadraticGame& game, int player, double theta) {
  require_player(player);
  const auto& b = game.blocks();
  const Matrix& own = player == 1 ? b.A1 : b.A2;
  const Matrix& other = player == 1 ? b.D2 : b.D1;
  return std::cos(theta) * own + std::sin(theta) * other;
}

double wellposed_cutoff(const QuadraticGame& game, int player, const Tolerances& tol) {
  require_player(player);
  const auto& b = game.blocks();
  const Matrix& own = player == 1 ? b.A1 : b.A2;
  const Matrix& other = player == 1 ? b.D2 : b.D1;
  if (!is_positive_definite(own, tol)) {
    throw Error(ErrorKind::NotWellPosedAtZero,
                "A" + std::to_string(player) + " is not positive definite");
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (min_sym_eig(other) >= 0.0) return kHalfPi;

  auto curvature_ok = [&](double theta) {
    return min_sym_eig(std::cos(theta) * own + std::sin(theta) * other) > 0.0;
  };
  double lo = 0.0;
  double hi = kHalfPi;
  for (int it = 0; it < tol.cutoff_max_iter && hi - lo > tol.theta; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (curvature_ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Cutoffs wellposed_cutoffs(const QuadraticGame& game, const Tolerances& tol) {
  return Cutoffs{wellposed_cutoff(game, 1, tol), wellposed_cutoff(game, 2, tol)};
}

}  // namespace svo
