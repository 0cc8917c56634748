#include "slthermo/errors.hpp"
#include "slthermo/quadrature.hpp"
#include "slthermo/tensor.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace slthermo {
namespace {

using testing::random_tensor;

Eigen::Matrix2d full(const SymTensor2& t) {
  Eigen::Matrix2d m;
  m << t.t11(), t.t12(), t.t12(), t.t22();
  return m;
}

TEST(SymTensor2, MandelNormMatchesFrobenius) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const SymTensor2 a = random_tensor(rng, 3.0);
    const SymTensor2 b = random_tensor(rng, 3.0);
    const Eigen::Matrix2d fa = full(a);
    const Eigen::Matrix2d fb = full(b);
    EXPECT_NEAR(a.norm(), fa.norm(), 1e-14 * fa.norm());
    EXPECT_NEAR(a.dot(b), (fa.array() * fb.array()).sum(), 1e-14 * (fa.norm() * fb.norm()));
  }
}

TEST(SymTensor2, PrincipalValuesAreEigenvalues) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const SymTensor2 t = random_tensor(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(full(t));
    const auto pv = t.principal_values();
    EXPECT_NEAR(pv[0], eig.eigenvalues()[1], 1e-13);
    EXPECT_NEAR(pv[1], eig.eigenvalues()[0], 1e-13);
  }
}

TEST(BuildStiffness, UnitShearModulusGivesIdentity) {
  for (double angle : {0.0, 0.3, 1.2}) {
    const Stiffness3 e = build_stiffness(0.0, 0.5, 0.0, angle);
    EXPECT_TRUE(e.entries().isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  }
}

TEST(BuildStiffness, IsotropicAppliedToIdentity) {
  const Stiffness3 e = build_stiffness(1.0, 1.0, 0.0, 0.0);
  const SymTensor2 s = e.apply(SymTensor2::identity());
  EXPECT_DOUBLE_EQ(s[0], 4.0);
  EXPECT_DOUBLE_EQ(s[1], 4.0);
  EXPECT_DOUBLE_EQ(s[2], 0.0);
}

TEST(BuildStiffness, FiberAlongXAppliedToUniaxialStrain) {
  const Stiffness3 e = build_stiffness(1.0, 1.0, 1.0, 0.0);
  const SymTensor2 s = e.apply({1.0, 0.0, 0.0});
  EXPECT_NEAR(s[0], 4.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0, 1e-15);
  EXPECT_NEAR(s[2], 0.0, 1e-15);
}

TEST(BuildStiffness, GammaZeroIsIsotropicLameOperator) {
  std::mt19937_64 rng(13);
  const double lambda = 2.3;
  const double mu = 0.7;
  const Stiffness3 e = build_stiffness(lambda, mu, 0.0, 0.8);
  for (int i = 0; i < 100; ++i) {
    const SymTensor2 eps = random_tensor(rng);
    const Eigen::Matrix2d expected = 2.0 * mu * full(eps) + lambda * eps.trace() * Eigen::Matrix2d::Identity();
    EXPECT_TRUE(full(e.apply(eps)).isApprox(expected, 1e-14));
  }
}

TEST(BuildStiffness, RotatedFiberMatchesStructuralTensorContraction) {
  const double angle = 0.6;
  const Stiffness3 e = build_stiffness(1.0, 1.0, 2.0, angle);
  const Eigen::Vector2d m(std::cos(angle), std::sin(angle));
  const Eigen::Matrix2d mm = m * m.transpose();
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const SymTensor2 eps = random_tensor(rng);
    const Eigen::Matrix2d fe = full(eps);
    const Eigen::Matrix2d expected =
        2.0 * fe + fe.trace() * Eigen::Matrix2d::Identity() + 2.0 * (fe.array() * mm.array()).sum() * mm;
    EXPECT_TRUE(full(e.apply(eps)).isApprox(expected, 1e-14));
  }
}

TEST(BuildStiffness, RejectsIndefinite) {
  EXPECT_THROW(build_stiffness(1.0, 1.0, -10.0, 0.0), NotPositiveDefinite);
  EXPECT_THROW(build_stiffness(1.0, 0.0, 0.0, 0.0), NotPositiveDefinite);
  EXPECT_THROW(Stiffness3(Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal().toDenseMatrix()), NotPositiveDefinite);
  Eigen::Matrix3d asym = Eigen::Matrix3d::Identity();
  asym(0, 1) = 0.5;
  EXPECT_THROW(Stiffness3{asym}, NotPositiveDefinite);
}

TEST(BuildStiffness, NegativeGammaAcceptedWhileDefinite) {
  const Stiffness3 e = build_stiffness(1.0, 1.0, -0.5, 0.0);
  EXPECT_GT(e.min_eigenvalue(), 0.0);
}

TEST(BuildCompliance, DiagonalAndIdentity) {
  const Compliance3 id = build_compliance(Stiffness3(Eigen::Matrix3d::Identity()));
  EXPECT_TRUE(id.entries().isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  const Compliance3 k = build_compliance(Stiffness3(Eigen::Vector3d(4.0, 1.0, 2.0).asDiagonal().toDenseMatrix()));
  EXPECT_NEAR(k.entries()(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(k.entries()(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(k.entries()(2, 2), 0.5, 1e-15);
  EXPECT_NEAR(k.entries()(0, 1), 0.0, 1e-15);
}

TEST(BuildCompliance, InverseOfTransverselyIsotropicStiffness) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> modulus(0.1, 10.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const Stiffness3 e = build_stiffness(modulus(rng), modulus(rng), modulus(rng), angle(rng));
    const Compliance3 k = build_compliance(e);
    EXPECT_LT((k.entries() * e.entries() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
  const Stiffness3 e = build_stiffness(1.0, 1.0, 1.0, 0.0);
  const Compliance3 k = build_compliance(e);
  EXPECT_LT((k.entries() * e.entries() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EnergyNorm, Examples) {
  const Stiffness3 id(Eigen::Matrix3d::Identity());
  EXPECT_EQ(energy_norm(SymTensor2::zero(), id), 0.0);
  EXPECT_NEAR(energy_norm({3.0, 4.0, 0.0}, id), 5.0, 1e-15);
  const Stiffness3 diag(Eigen::Vector3d(4.0, 1.0, 2.0).asDiagonal().toDenseMatrix());
  EXPECT_NEAR(energy_norm({1.0, 1.0, 1.0}, diag), std::sqrt(7.0), 1e-15);
}

TEST(EnergyNorm, SquareIsQuadraticFormForRandomSpd) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 1000; ++i) {
    Eigen::Matrix3d g;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g(r, c) = normal(rng);
    const Stiffness3 e(g * g.transpose() + 0.1 * Eigen::Matrix3d::Identity());
    const SymTensor2 eps = random_tensor(rng);
    const double quad = eps.dot(e.apply(eps));
    EXPECT_NEAR(std::pow(energy_norm(eps, e), 2), quad, 1e-12 * quad);
    // Equals |E^{1/2} eps| computed through an explicit square root.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(e.entries());
    EXPECT_NEAR(energy_norm(eps, e), (eig.operatorSqrt() * eps.mandel()).norm(), 1e-12 * std::sqrt(quad));
  }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n = 1; n <= 32; ++n) {
    const auto rule = gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(rule.size()), n);
    for (int degree = 0; degree <= 2 * n - 1; ++degree) {
      double sum = 0.0;
      for (const auto& q : rule) sum += q.w * std::pow(q.x, degree);
      const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
      EXPECT_NEAR(sum, exact, 1e-14) << "n=" << n << " degree=" << degree;
    }
  }
}

}  // namespace
}  // namespace slthermo
