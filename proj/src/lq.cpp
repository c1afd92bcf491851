#include "svo/lq.hpp"

#include <cmath>
#include <string>

#include "svo/errors.hpp"

namespace svo {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::ShapeMismatch, what);
}

void check_list(const std::vector<Matrix>& list, int K, Eigen::Index rows, Eigen::Index cols,
                const char* name) {
  require(static_cast<int>(list.size()) == K,
          std::string(name) + " must have K=" + std::to_string(K) + " entries");
  for (const auto& m : list) {
    require(m.rows() == rows && m.cols() == cols,
            std::string(name) + " entries must be " + std::to_string(rows) + "x" +
                std::to_string(cols));
  }
}

void check_list(const std::vector<Vector>& list, int K, Eigen::Index size, const char* name) {
  require(static_cast<int>(list.size()) == K,
          std::string(name) + " must have K=" + std::to_string(K) + " entries");
  for (const auto& v : list) {
    require(v.size() == size, std::string(name) + " entries must have length " +
                                  std::to_string(size));
  }
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Vector stack(const std::vector<Vector>& parts) {
  Eigen::Index size = 0;
  for (const auto& p : parts) size += p.size();
  Vector out(size);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

}  // namespace

RolloutOperators rollout_operators(const LtvSystem& s) {
  const int K = s.K;
  const int n = s.n;
  RolloutOperators ops;
  ops.H.resize(n * K, n);
  ops.F = Matrix::Zero(n * K, n * K);
  // Row block k-1 holds state x_k. Column block j carries the input applied
  // at step j, propagated by F_{k-1} ... F_{j+1}.
  for (int k = 1; k <= K; ++k) {
    Matrix prod = Matrix::Identity(n, n);
    for (int j = k - 1; j >= 0; --j) {
      ops.F.block((k - 1) * n, j * n, n, n) = prod;
      prod = prod * s.F[static_cast<std::size_t>(j)];
    }
    ops.H.block((k - 1) * n, 0, n, n) = prod;
  }
  ops.Gbar1 = ops.F * block_diag(s.G1);
  ops.Gbar2 = ops.F * block_diag(s.G2);
  return ops;
}

LtvGame build_ltv_game(const LtvSystem& s, const LtvCosts& c, const Tolerances& tol) {
  require(s.K >= 1 && s.n >= 1 && s.m1 >= 1 && s.m2 >= 1, "K, n, m1, m2 must be positive");
  check_list(s.F, s.K, s.n, s.n, "F");
  check_list(s.G1, s.K, s.n, s.m1, "G1");
  check_list(s.G2, s.K, s.n, s.m2, "G2");
  require(s.x0.size() == s.n, "x0 must have length n");
  check_list(c.Q1, s.K, s.n, s.n, "Q1");
  check_list(c.Q2, s.K, s.n, s.n, "Q2");
  check_list(c.R1, s.K, s.m1, s.m1, "R1");
  check_list(c.R2, s.K, s.m2, s.m2, "R2");
  check_list(c.xbar1, s.K, s.n, "xbar1");
  check_list(c.xbar2, s.K, s.n, "xbar2");
  for (int player : {1, 2}) {
    const auto& R = player == 1 ? c.R1 : c.R2;
    for (std::size_t k = 0; k < R.size(); ++k) {
      if (!is_positive_definite(R[k], tol)) {
        throw Error(ErrorKind::ControlCostNotPD,
                    "R" + std::to_string(player) + " at step " + std::to_string(k) +
                        " is not positive definite");
      }
    }
  }

  RolloutOperators ops = rollout_operators(s);
  std::vector<Matrix> q1_sym, q2_sym;
  for (const auto& q : c.Q1) q1_sym.push_back(sym_part(q));
  for (const auto& q : c.Q2) q2_sym.push_back(sym_part(q));
  const Matrix Q1 = block_diag(q1_sym);
  const Matrix Q2 = block_diag(q2_sym);
  const Matrix R1 = sym_part(block_diag(c.R1));
  const Matrix R2 = sym_part(block_diag(c.R2));
  const Vector hx0 = ops.H * s.x0;
  const Vector e1 = hx0 - stack(c.xbar1);
  const Vector e2 = hx0 - stack(c.xbar2);
  const Matrix& G1 = ops.Gbar1;
  const Matrix& G2 = ops.Gbar2;

  Subblocks b;
  const Matrix Q1G1 = Q1 * G1, Q1G2 = Q1 * G2;
  const Matrix Q2G1 = Q2 * G1, Q2G2 = Q2 * G2;
  b.A1 = R1 + G1.transpose() * Q1G1;
  b.B1 = G2.transpose() * Q1G1;
  b.D1 = G2.transpose() * Q1G2;
  b.a1 = Q1G1.transpose() * e1;
  b.b1 = Q1G2.transpose() * e1;
  b.A2 = R2 + G2.transpose() * Q2G2;
  b.B2 = G1.transpose() * Q2G2;
  b.D2 = G1.transpose() * Q2G1;
  b.a2 = Q2G2.transpose() * e2;
  b.b2 = Q2G1.transpose() * e2;
  // Products such as G^T Q G are symmetric only up to round-off.
  for (Matrix* m : {&b.A1, &b.A2, &b.D1, &b.D2}) *m = sym_part(*m);

  LtvGame out{s, c, std::move(ops), QuadraticGame::from_blocks(b, tol), 0.0, 0.0};
  out.constant1 = 0.5 * e1.dot(Q1 * e1);
  out.constant2 = 0.5 * e2.dot(Q2 * e2);
  return out;
}

LtvGame single_integrator_scenario(const SingleIntegratorParams& p) {
  const int K = p.K;
  LtvSystem s;
  s.K = K;
  s.n = 4;
  s.m1 = 2;
  s.m2 = 2;
  s.dt = p.dt;
  s.x0 = p.x_start;
  Matrix g1 = Matrix::Zero(4, 2), g2 = Matrix::Zero(4, 2);
  g1.topRows(2) = p.dt * Matrix::Identity(2, 2);
  g2.bottomRows(2) = p.dt * Matrix::Identity(2, 2);
  s.F.assign(static_cast<std::size_t>(K), Matrix::Identity(4, 4));
  s.G1.assign(static_cast<std::size_t>(K), g1);
  s.G2.assign(static_cast<std::size_t>(K), g2);

  const Matrix I2 = Matrix::Identity(2, 2);
  Matrix prox(4, 4);
  prox << I2, -I2, -I2, I2;
  prox *= p.q_prox;

  LtvCosts c;
  for (int k = 1; k <= K; ++k) {
    const double q = k >= p.high_from ? p.q_track_high : p.q_track_low;
    Vector diag1(4), diag2(4);
    diag1 << q, q, p.q_cross, p.q_cross;
    diag2 << p.q_cross, p.q_cross, q, q;
    c.Q1.push_back(Matrix(diag1.asDiagonal()) - prox);
    c.Q2.push_back(Matrix(diag2.asDiagonal()) - prox);
    const double w = static_cast<double>(k) / K;
    const Vector xbar = (1.0 - w) * p.x_start + w * p.x_goal;
    c.xbar1.push_back(xbar);
    c.xbar2.push_back(xbar);
  }
  c.R1.assign(static_cast<std::size_t>(K), p.r * I2);
  c.R2.assign(static_cast<std::size_t>(K), p.r * I2);
  return build_ltv_game(s, c);
}

Matrix rollout(const RolloutOperators& ops, const Vector& x0, const Vector& u, int m1_total) {
  const Eigen::Index n = ops.H.cols();
  require(x0.size() == n, "x0 must have length n");
  require(u.size() == ops.Gbar1.cols() + ops.Gbar2.cols() && m1_total == ops.Gbar1.cols(),
          "stacked control has the wrong length");
  const Vector x = ops.H * x0 + ops.Gbar1 * u.head(m1_total) + ops.Gbar2 * u.tail(ops.Gbar2.cols());
  return Eigen::Map<const Matrix>(x.data(), n, x.size() / n);
}

Matrix rollout(const LtvGame& ltv, const Vector& u) {
  return rollout(ltv.ops, ltv.system.x0, u, ltv.system.K * ltv.system.m1);
}

Matrix simulate(const LtvSystem& s, const Vector& u) {
  require(u.size() == s.K * (s.m1 + s.m2), "stacked control has the wrong length");
  Matrix out(s.n, s.K);
  Vector x = s.x0;
  const Eigen::Index off2 = static_cast<Eigen::Index>(s.K) * s.m1;
  for (int k = 0; k < s.K; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    x = s.F[ks] * x + s.G1[ks] * u.segment(k * s.m1, s.m1) +
        s.G2[ks] * u.segment(off2 + k * s.m2, s.m2);
    out.col(k) = x;
  }
  return out;
}

double stage_cost(const LtvGame& ltv, int player, const Vector& u) {
  const auto& s = ltv.system;
  const auto& c = ltv.costs;
  const Matrix x = simulate(s, u);
  const auto& Q = player == 1 ? c.Q1 : c.Q2;
  const auto& R = player == 1 ? c.R1 : c.R2;
  const auto& xbar = player == 1 ? c.xbar1 : c.xbar2;
  const int m = player == 1 ? s.m1 : s.m2;
  const Eigen::Index off = player == 1 ? 0 : static_cast<Eigen::Index>(s.K) * s.m1;
  double total = 0.0;
  for (int k = 0; k < s.K; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const Vector e = x.col(k) - xbar[ks];
    const Vector uk = u.segment(off + k * m, m);
    total += 0.5 * e.dot(Q[ks] * e) + 0.5 * uk.dot(R[ks] * uk);
  }
  return total;
}

int sign_changes(const Vector& v, double rel) {
  if (v.size() == 0) return 0;
  const double floor = rel * v.cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= floor) continue;
    const int s = v(i) > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

TrajectoryAsymptotes trajectory_asymptotes(const LtvGame& ltv, const BlowupEvent& event) {
  const auto& s = ltv.system;
  const Eigen::Index d1 = static_cast<Eigen::Index>(s.K) * s.m1;
  const Eigen::Index d = d1 + static_cast<Eigen::Index>(s.K) * s.m2;
  require(event.u_inf.size() == d && event.u_fin.size() == d,
          "event vectors do not match the LTV game dimension");
  auto lift = [&](const Vector& u) {
    const Vector x = ltv.ops.Gbar1 * u.head(d1) + ltv.ops.Gbar2 * u.tail(d - d1);
    return Matrix(Eigen::Map<const Matrix>(x.data(), s.n, s.K));
  };
  TrajectoryAsymptotes out;
  out.x_fin = lift(event.u_fin);
  out.x_inf = lift(event.u_inf);
  for (int player : {1, 2}) {
    const int m = player == 1 ? s.m1 : s.m2;
    const Eigen::Index off = player == 1 ? 0 : d1;
    for (int ch = 0; ch < m; ++ch) {
      Vector seq(s.K);
      for (int k = 0; k < s.K; ++k) seq(k) = event.u_inf(off + k * m + ch);
      out.control_sign_changes += sign_changes(seq);
    }
  }
  return out;
}

}  // namespace svo
