#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "svo/bounds.hpp"
#include "svo/errors.hpp"

using svo::Family;
using svo::Matrix;
using svo::Vector;

namespace {

constexpr double kPi = std::numbers::pi;

svo::EigenExpansion diag_expansion(const Vector& eigs) {
  std::mt19937_64 rng(7);
  const int n = static_cast<int>(eigs.size());
  const Matrix T = Matrix::Identity(n, n) + 0.3 * oracle::random_matrix(rng, n, n);
  const Matrix core = T * eigs.asDiagonal() * T.inverse();
  return svo::make_expansion(Family::E1, 0.5, core, oracle::random_vector(rng, n),
                             oracle::random_vector(rng, n));
}

TEST(Bounds, PNormIsANorm) {
  std::mt19937_64 rng(31);
  const auto exp = svo::build_expansion(oracle::example_3d(), Family::E1, 0.7);
  const auto norm = svo::p_norm(exp);
  const Matrix P = norm.P();
  EXPECT_LT((P - P.transpose()).norm(), 1e-12 * P.norm());
  for (int i = 0; i < 50; ++i) {
    const Vector x = oracle::random_vector(rng, 3), y = oracle::random_vector(rng, 3);
    const double a = std::normal_distribution<double>(0.0, 2.0)(rng);
    EXPECT_GT(norm(x), 0.0);
    EXPECT_NEAR(norm(a * x), std::abs(a) * norm(x), 1e-12 * norm(x) * (1 + std::abs(a)));
    EXPECT_LE(norm(x + y), norm(x) + norm(y) + 1e-12);
    // Equivalent form via the eigenvectors.
    EXPECT_NEAR(norm(x), (exp.V.transpose() * x.cast<svo::Complex>()).norm(), 1e-10 * norm(x));
  }
  EXPECT_EQ(norm(Vector::Zero(3)), 0.0);
}

TEST(Bounds, GIsContractionForPositiveSpectrum) {
  std::mt19937_64 rng(32);
  const auto exp = diag_expansion((Vector(4) << 0.3, 1.0, 2.5, 7.0).finished());
  const auto norm = svo::p_norm(exp);
  for (double t : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
    const auto c = svo::is_contraction(exp, t);
    EXPECT_TRUE(c.contraction);
    EXPECT_GT(c.margin, 0.0);
    const Matrix G = svo::g_matrix(exp, t);
    for (int i = 0; i < 20; ++i) {
      const Vector v = oracle::random_vector(rng, 4);
      EXPECT_LT(norm(G * v), norm(v));
      EXPECT_LT(norm(v - G * v), norm(v));
    }
  }
}

TEST(Bounds, NegativeEigenvalueIsNotContraction) {
  const auto exp = diag_expansion((Vector(3) << -2.0, 1.0, 3.0).finished());
  EXPECT_FALSE(svo::is_contraction(exp, 1.0).contraction);
  const auto res = svo::curve_bounds(exp);
  ASSERT_TRUE(std::holds_alternative<svo::NotApplicable>(res));
  const auto& na = std::get<svo::NotApplicable>(res);
  ASSERT_EQ(na.offending.size(), 1u);
  EXPECT_NEAR(na.offending[0].real(), -2.0, 1e-10);
}

TEST(Bounds, CurveStaysInBothBalls) {
  for (double gamma : {-kPi / 8, 0.0, kPi / 8}) {
    const auto g = oracle::rotated_example(gamma);
    for (auto f : {Family::E1, Family::E2}) {
      for (double p : {0.2, kPi / 4, 1.2}) {
        const auto exp = svo::build_expansion(g, f, p);
        const auto res = svo::curve_bounds(exp);
        ASSERT_TRUE(std::holds_alternative<svo::CurveBounds>(res)) << gamma << " " << p;
        const auto& cb = std::get<svo::CurveBounds>(res);
        const double r = cb.base_ball.radius;
        EXPECT_DOUBLE_EQ(r, cb.target_ball.radius);
        for (double t : svo::log_grid(1e-3, 1e3, 200)) {
          const Vector u = svo::curve_point(exp, t);
          EXPECT_TRUE(cb.base_ball.contains(u, 1e-9 * r));
          EXPECT_TRUE(cb.target_ball.contains(u, 1e-9 * r));
        }
      }
    }
  }
}

TEST(Bounds, PreconditionOnFamily) {
  const auto exp = svo::build_expansion(oracle::example_2d(), Family::E3, 0.3);
  try {
    svo::curve_bounds(exp);
    FAIL();
  } catch (const svo::Error& e) {
    EXPECT_EQ(e.kind(), svo::ErrorKind::PreconditionFailed);
  }
}

TEST(Bounds, DefectiveCoreRaises) {
  Matrix J(2, 2);
  J << 1, 1, 0, 1;
  const auto exp = svo::make_expansion(Family::E1, 0.5, J, Vector::Zero(2), Vector::Ones(2));
  try {
    svo::p_norm(exp);
    FAIL();
  } catch (const svo::Error& e) {
    EXPECT_EQ(e.kind(), svo::ErrorKind::DefectiveCore);
  }
  EXPECT_THROW(svo::curve_bounds(exp), svo::Error);
}

TEST(Bounds, ThetaPointBoundsContainEquilibrium) {
  const auto g = oracle::rotated_example(0.0);
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      const svo::SvoAngles th{(kPi / 2) * i / 7, (kPi / 2) * j / 7};
      const auto res = svo::theta_point_bounds(g, th);
      ASSERT_TRUE(std::holds_alternative<svo::PointBounds>(res));
      const auto& pb = std::get<svo::PointBounds>(res);
      EXPECT_TRUE(pb.member);
      EXPECT_LT(oracle::rel_err(pb.u_theta, oracle::svo_equilibrium(g, th.theta1, th.theta2)), 1e-9);
    }
  }
  try {
    svo::theta_point_bounds(g, {0.0, 0.4});
    FAIL();
  } catch (const svo::Error& e) {
    EXPECT_EQ(e.kind(), svo::ErrorKind::BoundaryTheta);
  }
}

TEST(Bounds, M1M2SpectrumRealPositive) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 6;
    const Matrix M1 = oracle::random_spd(rng, d), M2 = oracle::random_spd(rng, d);
    const auto rep = svo::check_m1m2_spectrum(M1, M2);
    EXPECT_TRUE(rep.real_positive);
    EXPECT_LE(rep.max_imag, 1e-10 * rep.spectral_radius);
    EXPECT_LE(rep.max_mismatch, 1e-10);
    const Eigen::VectorXcd ref = Eigen::EigenSolver<Matrix>(M1 * M2.inverse()).eigenvalues();
    EXPECT_LT(oracle::spectrum_distance(rep.direct, ref), 1e-9 * rep.spectral_radius);
  }
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  EXPECT_THROW(svo::check_m1m2_spectrum(indefinite, Matrix::Identity(2, 2)), svo::Error);
}

}  // namespace
