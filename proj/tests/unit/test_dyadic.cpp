#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bergman/dyadic.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

namespace {

DyadicParams base_params(int G = 12) {
  DyadicParams p;
  p.max_generation = G;
  return p;
}

}  // namespace

TEST(Radii, ClosedForm) {
  DyadicParams p = base_params();
  for (int k = 0; k <= 12; ++k) {
    double t = std::ldexp(1.0, k);
    EXPECT_NEAR(p.radius(k), (t - 1.0) / (t + 1.0), 1e-15) << k;
    EXPECT_NEAR(p.radius(k), std::tanh(k * 0.5 * std::log(2.0)), 1e-15);
    EXPECT_NEAR(tent_measure(p, k), 4.0 / ((t + 1.0) * (t + 1.0)), 1e-15);
    EXPECT_NEAR(p.one_minus_radius_sq(k), 1.0 - p.radius(k) * p.radius(k), 1e-12);
  }
  EXPECT_NEAR(p.theta0(), 0.5 * std::log(2.0), 1e-15);
}

TEST(Radii, FromTheta0) {
  DyadicParams p = DyadicParams::from_theta0(0.3, 8);
  EXPECT_NEAR(p.radius(3), std::tanh(0.9), 1e-14);
  EXPECT_THROW(DyadicParams::from_theta0(0.0, 8), ParameterError);
  EXPECT_THROW(DyadicParams::from_theta0(0.3, 0), ParameterError);
  EXPECT_THROW(DyadicParams::from_theta0(0.3, 40), BudgetError);
}

TEST(Measures, KubeIsTentMinusChildren) {
  DyadicParams p = base_params();
  for (int k = 0; k < 12; ++k) {
    // annulus sector between r_k and r_{k+1} over an arc of length 2 pi / 2^k
    double r0 = p.radius(k), r1 = p.radius(k + 1);
    double direct = (r1 * r1 - r0 * r0) / std::ldexp(1.0, k);
    EXPECT_NEAR(kube_measure(p, k), direct, 1e-14);
  }
}

TEST(Forest, Shape) {
  DyadicForest F = DyadicForest::build(base_params(6), 2);
  ASSERT_EQ(F.systems_count(), 2);
  const DyadicSystem& S = F.system(0);
  EXPECT_EQ(S.size(), (std::size_t{1} << 7) - 1);
  EXPECT_NEAR(F.system(1).shift() - S.shift(), std::numbers::pi / 3.0, 1e-15);
  for (int id = 1; id < static_cast<int>(S.size()); ++id) {
    const Kube& K = S.kube(id);
    EXPECT_EQ(kube_generation(id), K.generation);
    const Kube& P = S.kube(K.parent);
    EXPECT_EQ(P.generation + 1, K.generation);
    // child arc sits inside the parent arc
    if (P.generation > 0) {
      EXPECT_TRUE(P.arc.contains(K.arc.start));
      EXPECT_TRUE(P.arc.contains(K.arc.start + 0.5 * K.arc.length));
    }
    EXPECT_NEAR(K.arc.length, 2.0 * std::numbers::pi / std::ldexp(1.0, K.generation), 1e-15);
  }
  EXPECT_THROW(DyadicForest::build(base_params(6), 0), ParameterError);
}

TEST(Locate, PointLiesInItsKube) {
  DyadicForest F = DyadicForest::build(base_params(12), 2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double r = 0.999 * std::sqrt(U(rng)), t = 2.0 * std::numbers::pi * U(rng);
    Point z = std::polar(r, t);
    for (int l = 0; l < 2; ++l) {
      const DyadicSystem& S = F.system(l);
      int id = S.locate(z);
      const Kube& K = S.kube(id);
      EXPECT_GT(r, K.generation == 0 ? -1.0 : S.params().radius(K.generation));
      EXPECT_LE(r, S.params().radius(K.generation + 1));
      if (K.generation > 0) EXPECT_TRUE(K.arc.contains(t));
      EXPECT_TRUE(S.tent_contains(id, z));
    }
  }
  EXPECT_THROW(F.system(0).locate(Point(1.0, 0.0)), DomainError);
  EXPECT_THROW(F.system(0).locate(Point(0.99999999, 0.0)), OutOfTruncation);
  EXPECT_EQ(kube_generation(F.system(0).locate_clamped(Point(0.99999999, 0.0), 5)), 5);
}

TEST(Structure, ClosedFormConstants) {
  DyadicForest F = DyadicForest::build(base_params(12), 2);
  StructureConstants sc = structure_constants(F, 12);
  EXPECT_NEAR(sc.rho, 8.0 / 9.0, 1e-12);
  double a = std::pow(std::ldexp(1.0, 13) + 1.0, 2) / std::pow(std::ldexp(1.0, 12) + 1.0, 2);
  EXPECT_NEAR(sc.alpha, a, 1e-12);
  EXPECT_LE(sc.alpha, 4.0);
  // sparse condition: |K| >= (1 - rho) |K-hat|
  EXPECT_GE(sc.kube_tent_min, 1.0 - sc.rho - 1e-12);
}

TEST(TentApprox, ContainsAndComparable) {
  DyadicForest F = DyadicForest::build(base_params(12), 2);
  for (Point z : {Point(0.5, 0.1), Point(-0.2, 0.93), Point(0.0, -0.99)}) {
    TentApproximation A = approx_tent(z, F);
    const DyadicSystem& S = F.system(A.system);
    TentGeometry tg = S.tent_geometry(A.kube);
    double ratio = tg.tent_measure / carleson_tent_measure(z);
    EXPECT_NEAR(ratio, A.ratio, 1e-9 * ratio);
    EXPECT_GE(ratio, 1.0);
    EXPECT_LE(ratio, 64.0);
  }
  EXPECT_THROW(approx_tent(Point(1.0, 0.0), F), NotFound);
}

TEST(Json, RoundTrip) {
  DyadicForest F = DyadicForest::build(base_params(5), 2);
  auto j = to_json(F);
  DyadicForest G = forest_from_json(j);
  ASSERT_EQ(G.systems_count(), F.systems_count());
  EXPECT_EQ(G.depth(), F.depth());
  for (int l = 0; l < 2; ++l)
    for (std::size_t id = 0; id < F.system(l).size(); ++id) {
      const Kube& a = F.system(l).kube(static_cast<int>(id));
      const Kube& b = G.system(l).kube(static_cast<int>(id));
      EXPECT_DOUBLE_EQ(a.arc.start, b.arc.start);
      EXPECT_EQ(a.parent, b.parent);
    }
  EXPECT_EQ(to_json(G).dump(), j.dump());
  EXPECT_THROW(forest_from_json(nlohmann::json::object()), ConfigError);
}

TEST(Arc, WrapAround) {
  Arc a{6.0, 1.0};
  EXPECT_TRUE(a.contains(6.5));
  EXPECT_TRUE(a.contains(0.2));
  EXPECT_FALSE(a.contains(0.8));
  EXPECT_TRUE(a.covers(6.1, 6.2 + 0.3));
  EXPECT_FALSE(a.covers(6.1, 7.2));
}
