#include <cmath>
#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "bergman/errors.hpp"
#include "bergman/functions.hpp"
#include "bergman/norms.hpp"
#include "bergman/orlicz.hpp"

using namespace bergman;

namespace {

const QuadratureGrid& grid() {
  static QuadratureGrid g = QuadratureGrid::build(DyadicParams{}, GridSpec{});
  return g;
}

}  // namespace

TEST(Norms, StrongOfOne) {
  const QuadratureGrid& g = grid();
  std::vector<double> one(g.size(), 1.0);
  double rt = g.truncation_radius();
  // 1e-11 covers summation roundoff
  EXPECT_NEAR(norm(one, one, g, NormMode::Strong(2.0)), rt, 1e-11);
  EXPECT_NEAR(norm(one, one, g, NormMode::Strong(2.0)), 0.99805, 1e-5);
  EXPECT_NEAR(norm(one, one, g, NormMode::Strong(1.0)), rt * rt, 1e-11);
  // 0.6 = r_2 is a cell boundary, so the tail mass is exact
  EXPECT_NEAR(norm(one, one, g, NormMode::StrongTail(1.0, 0.6)), rt * rt - 0.36, 1e-11);
}

TEST(Norms, WeightedStrong) {
  // b = -1: int_0^{R^2} s (1 - s) ds, a cubic in s that the grid integrates exactly
  const QuadratureGrid& g = grid();
  double R2 = g.covered_mass();
  double exact = R2 * R2 / 2.0 - R2 * R2 * R2 / 3.0;
  EXPECT_NEAR(norm(fn_abs2(g), weight_power(-1.0), g, NormMode::Strong(1.0)), exact, 1e-11);
  // b = 1/2: int_0^{R^2} s (1-s)^{-1/2} ds is not polynomial; the refined grid must do better
  auto F = [](double s) { return -2.0 * std::sqrt(1.0 - s) + (2.0 / 3.0) * std::pow(1.0 - s, 1.5); };
  double singular = F(R2) - F(0.0);
  double coarse = std::abs(norm(fn_abs2(g), weight_power(0.5), g, NormMode::Strong(1.0)) - singular);
  QuadratureGrid fine = QuadratureGrid::build(DyadicParams{}, GridSpec{}.refined());
  double R2f = fine.covered_mass();
  double fine_err = std::abs(norm(fn_abs2(fine), weight_power(0.5), fine, NormMode::Strong(1.0)) - (F(R2f) - F(0.0)));
  EXPECT_LT(fine_err, coarse / 4.0);
}

TEST(Norms, WeakOfIndicator) {
  // lambda |{f > lambda}| for an indicator is maximal just below 1: the set's measure
  const QuadratureGrid& g = grid();
  std::vector<double> one(g.size(), 1.0);
  DyadicParams p;
  DyadicForest F = DyadicForest::build(p, 2);
  auto f = abs_values(fn_kube_indicator(g, F.system(1), kube_id(3, 2)));
  EXPECT_NEAR(norm(f, one, g, NormMode::Weak()), kube_measure(p, 3), 1e-12);
  auto c = std::vector<double>(g.size(), 3.0);
  EXPECT_NEAR(norm(c, one, g, NormMode::Weak()), 3.0 * g.covered_mass(), 1e-12);
  EXPECT_NEAR(norm(c, one, g, NormMode::WeakTail(0.6)), 3.0 * (g.covered_mass() - 0.36), 1e-12);
}

TEST(Norms, WeakOfRadialFunction) {
  // f = |z|^2: lambda (R^2 - lambda) peaks at R^4 / 4
  const QuadratureGrid& g = grid();
  std::vector<double> one(g.size(), 1.0);
  double R2 = g.covered_mass();
  // the discrete distribution function is off by at most the mass of the s-cell holding lambda,
  // so the error is below max over cells of s_hi (s_hi - s_lo); cells end at tanh^2(j ln2 / 4)
  double slack = 0.0;
  for (int j = 0; j < 20; ++j) {
    double lo = std::pow(std::tanh(j * std::log(2.0) / 4.0), 2), hi = std::pow(std::tanh((j + 1) * std::log(2.0) / 4.0), 2);
    slack = std::max(slack, hi * (hi - lo));
  }
  EXPECT_NEAR(norm(abs_values(fn_abs2(g)), one, g, NormMode::Weak()), R2 * R2 / 4.0, slack);
  // weak norm never exceeds the L^1 norm
  EXPECT_LE(norm(abs_values(fn_abs2(g)), one, g, NormMode::Weak()),
            norm(abs_values(fn_abs2(g)), one, g, NormMode::Strong(1.0)));
}

TEST(Norms, Errors) {
  const QuadratureGrid& g = grid();
  std::vector<double> one(g.size(), 1.0), short_v(3, 1.0);
  EXPECT_THROW(norm(short_v, one, g, NormMode::Weak()), DomainError);
  EXPECT_THROW(norm(one, one, g, NormMode::Strong(0.5)), ParameterError);
}

TEST(Young, ComplementIsLegendreTransform) {
  for (double r : {1.5, 2.0, 4.0})
    for (double kappa : {1.0, 0.3}) {
      YoungFunction phi = YoungFunction::power(r, kappa);
      for (double s : {0.5, 1.0, 3.0}) {
        // sup_t (s t - Phi(t)) by a fine scan then golden refinement
        double lo = 0.0, hi = 100.0;
        for (int it = 0; it < 200; ++it) {
          double a = lo + (hi - lo) * 0.382, b = lo + (hi - lo) * 0.618;
          if (s * a - phi.phi(a) < s * b - phi.phi(b)) lo = a;
          else hi = b;
        }
        double t = 0.5 * (lo + hi);
        EXPECT_NEAR(phi.psi(s), s * t - phi.phi(t), 1e-10 * std::max(1.0, phi.psi(s))) << r << " " << kappa;
        EXPECT_NEAR(phi.psi_inverse(phi.psi(s)), s, 1e-12 * s);
      }
    }
  EXPECT_THROW(YoungFunction::power(1.0), ParameterError);
  EXPECT_THROW(YoungFunction::power(2.0, 0.0), ParameterError);
}

TEST(Luxemburg, ClosedForms) {
  // constant c: Phi(c / lambda) = 1 gives lambda = c kappa^{1/r}
  std::vector<double> c(50, 2.0), w(50, 0.02);
  YoungFunction phi = YoungFunction::power(3.0, 2.0);
  EXPECT_NEAR(luxemburg_norm(c, w, phi), 2.0 * std::cbrt(2.0), 1e-7);
  EXPECT_NEAR(luxemburg_norm(c, w, phi, true), 2.0 * std::cbrt(2.0), 1e-12);
  // t^2 gives the normalized L^2 norm
  std::vector<double> f{1.0, 3.0, 0.0, 2.0}, m{0.1, 0.2, 0.3, 0.4};
  double l2 = std::sqrt((0.1 * 1 + 0.2 * 9 + 0.4 * 4) / 1.0);
  EXPECT_NEAR(luxemburg_norm(f, m, YoungFunction::power(2.0)), l2, 1e-7 * l2);
  EXPECT_NEAR(luxemburg_norm(f, m, YoungFunction::power(2.0), true), l2, 1e-12);
  EXPECT_EQ(luxemburg_norm(std::vector<double>(4, 0.0), m, YoungFunction::power(2.0)), 0.0);
  EXPECT_THROW(luxemburg_norm(f, std::vector<double>(2, 1.0), YoungFunction::power(2.0)), DomainError);
}

TEST(Luxemburg, TentNorm) {
  DyadicParams p;
  DyadicForest F = DyadicForest::build(p, 2);
  TentIndex I(F, grid(), 10);
  std::vector<double> f(grid().size(), 5.0);
  EXPECT_NEAR(orlicz_norm(f, YoungFunction::power(2.0), I, 1, kube_id(3, 2)), 5.0, 1e-6);
}

TEST(Cphi, DirectSummation) {
  const double rho = 8.0 / 9.0, C = 1.05;
  for (double rp : {2.0, 10.0, 100.0, 1000.0}) {
    long double s = 1.0L;
    for (int k = 1; k < 20000; ++k) {
      long double t = std::exp(std::pow(static_cast<long double>(C), k) * std::log(static_cast<long double>(rho)) / rp);
      s += t;
      if (t < 1e-22L) break;
    }
    CphiResult c = cphi(rp / (rp - 1.0), rho, C);
    EXPECT_NEAR(c.c_phi, static_cast<double>(s), 1e-9 * c.c_phi) << rp;
    EXPECT_NEAR(c.ratio_to_log, c.c_phi / (1.0 + std::log(rp)), 1e-12);
  }
}

TEST(Cphi, LogGrowth) {
  // c_Phi / (1 + log r') stays within a factor-10 window and grows with r'
  double lo = 1e300, hi = 0.0, prev = 0.0;
  for (double rp : {2.0, 10.0, 100.0, 1000.0}) {
    CphiResult c = cphi(rp / (rp - 1.0), 8.0 / 9.0, 1.05);
    lo = std::min(lo, c.ratio_to_log);
    hi = std::max(hi, c.ratio_to_log);
    EXPECT_GT(c.c_phi, prev);
    prev = c.c_phi;
  }
  EXPECT_LE(hi / lo, 10.0);
  EXPECT_THROW(cphi(2.0, 8.0 / 9.0, 1.2), ParameterError);
  EXPECT_THROW(cphi(1.0, 0.5, 1.05), ParameterError);
}
