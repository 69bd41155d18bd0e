#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"

using namespace bergman;

namespace {

// midpoint rule in polar coordinates for the normalized area dA/pi
template <class F>
double disk_integral(F f, int nr = 600, int nt = 600) {
  double s = 0.0;
  for (int i = 0; i < nr; ++i) {
    double r = (i + 0.5) / nr;
    for (int j = 0; j < nt; ++j) {
      double t = 2.0 * std::numbers::pi * (j + 0.5) / nt;
      s += f(std::polar(r, t)) * r;
    }
  }
  return s * (1.0 / nr) * (2.0 * std::numbers::pi / nt) / std::numbers::pi;
}

}  // namespace

TEST(Kernel, ClosedForm) {
  Point z(0.3, -0.2), w(-0.5, 0.4);
  cplx expect = 1.0 / std::pow(1.0 - z * std::conj(w), 2);
  EXPECT_NEAR(std::abs(kernel(z, w) - expect), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(kernel(z, w) - std::conj(kernel(w, z))), 0.0, 1e-15);
  EXPECT_NEAR(kernel(z, z).real(), 1.0 / std::pow(1.0 - std::norm(z), 2), 1e-14);
  EXPECT_EQ(kernel(0.0, w), cplx(1.0));
}

TEST(Kernel, BallPathMatchesDisk) {
  std::vector<cplx> z{cplx(0.1, 0.6)}, w{cplx(-0.3, 0.2)};
  EXPECT_NEAR(std::abs(kernel(z, w, Dimension{1}) - kernel(z[0], w[0])), 0.0, 1e-15);
  std::vector<cplx> z2{cplx(0.3, 0.0), cplx(0.0, 0.4)}, w2{cplx(0.2, 0.1), cplx(0.5, 0.0)};
  cplx pw = 0.3 * cplx(0.2, -0.1) + cplx(0.0, 0.4) * 0.5;
  EXPECT_NEAR(std::abs(kernel(z2, w2, Dimension{2}) - std::pow(1.0 - pw, -3)), 0.0, 1e-14);
  EXPECT_THROW(kernel(z2, w2, Dimension{1}), DomainError);
}

TEST(Kernel, Errors) {
  EXPECT_THROW(kernel(Point(1.2, 0), Point(0, 0)), DomainError);
  EXPECT_THROW(kernel(Point(1, 0), Point(1, 0)), DomainError);
  EXPECT_THROW(norm_kernel(0.5, 0.1, 1.0), DomainError);
}

TEST(NormKernel, UnitNormAtP2) {
  for (Point z : {Point(0.0, 0.0), Point(0.5, 0.0), Point(-0.3, 0.6)}) {
    double n2 = disk_integral([&](Point w) { return std::norm(norm_kernel(z, w, 2.0)); });
    EXPECT_NEAR(n2, 1.0, 2e-4) << z;
  }
}

TEST(NormKernel, LpNormBounded) {
  // ||k_z^{(p)}||_p^p = (1-|z|^2)^{2p/p'} int |1 - conj(z) w|^{-2p}; finite and z-uniform up to constants for p = 4
  Point z(0.6, 0.0);
  double p = 4.0;
  double v = disk_integral([&](Point w) { return std::pow(std::abs(norm_kernel(z, w, p)), p); });
  EXPECT_GT(v, 0.1);
  EXPECT_LT(v, 10.0);
}

TEST(Mobius, Involution) {
  Point z(0.4, -0.3);
  EXPECT_NEAR(std::abs(mobius(z, z)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(mobius(z, 0.0) - z), 0.0, 1e-16);
  for (Point w : {Point(0.1, 0.2), Point(-0.7, 0.5), Point(0.0, -0.99)}) {
    EXPECT_NEAR(std::abs(mobius(z, mobius(z, w)) - w), 0.0, 1e-14);
    EXPECT_LT(std::abs(mobius(z, w)), 1.0);
  }
  // boundary goes to boundary
  EXPECT_NEAR(std::abs(mobius(z, std::polar(1.0, 1.1))), 1.0, 1e-14);
}

TEST(Beta, HyperbolicDistance) {
  EXPECT_NEAR(beta(0.0, 0.5), 0.5 * std::log(3.0), 1e-14);
  Point a(0.2, 0.1), b(-0.4, 0.5), c(0.7, -0.2);
  EXPECT_NEAR(beta(a, b), beta(b, a), 1e-14);
  EXPECT_LE(beta(a, c), beta(a, b) + beta(b, c) + 1e-14);
  // invariance under a disk automorphism
  Point m(0.3, 0.3);
  EXPECT_NEAR(beta(mobius(m, a), mobius(m, b)), beta(a, b), 1e-13);
  EXPECT_THROW(beta(0.0, 1.0), DomainError);
}

TEST(CarlesonTent, MeasureMatchesArea) {
  for (double r : {0.3, 0.6, 0.9}) {
    Point apex = std::polar(r, 0.8);
    double area = disk_integral([&](Point w) { return in_carleson_tent(apex, w) ? 1.0 : 0.0; }, 1500, 1500);
    EXPECT_NEAR(carleson_tent_measure(apex), area, 3e-3 * std::max(area, 0.01)) << r;
  }
  EXPECT_EQ(carleson_tent_measure(0.0), 1.0);
}

TEST(CarlesonTent, HalfwidthIsShadow) {
  Point apex = std::polar(0.7, 0.0);
  double h = carleson_tent_halfwidth(apex);
  // the exact shadow is |arg| < 2 asin((1 - r) / 2); the recorded width is within a few percent of it
  EXPECT_NEAR(h / (2.0 * std::asin(0.15)), 1.0, 0.02);
  EXPECT_TRUE(in_carleson_tent(apex, std::polar(0.999, 0.5 * h)));
  EXPECT_FALSE(in_carleson_tent(apex, std::polar(0.999, 1.5 * h)));
}

TEST(BoundaryRho, Chordal) {
  Point a = std::polar(1.0, 0.0), b = std::polar(1.0, std::numbers::pi);
  EXPECT_NEAR(boundary_rho(a, b), 2.0, 1e-15);
  EXPECT_NEAR(boundary_rho(a, a), 0.0, 1e-15);
}
