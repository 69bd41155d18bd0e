#include <cmath>

#include <gtest/gtest.h>

#include "bergman/characteristics.hpp"
#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

struct Env {
  DyadicParams params;
  DyadicForest forest;
  QuadratureGrid grid;
  TentIndex index;
  Env()
      : params(),
        forest(DyadicForest::build(params, 2)),
        grid(QuadratureGrid::build(params, GridSpec{})),
        index(forest, grid, 10) {}
  WeightContext ctx(bool force_grid = false) const { return {&forest, 12, &index, force_grid}; }
};

const Env& env() {
  static Env e;
  return e;
}

// tent averages of (1-|z|^2)^{-eb} are (1-r_k^2)^{-eb} / (1 - eb), so every ratio below is k-independent
double bp_oracle(double b, double p) {
  double pp = p / (p - 1.0);
  return 1.0 / (1.0 - b) * std::pow(1.0 / (1.0 + b * (pp - 1.0)), p - 1.0);
}

}  // namespace

TEST(ClosedForm, B2) {
  for (double b : {0.1, 0.5, 0.9}) {
    auto r = characteristic(CharacteristicKind::Bp(2.0), weight_power(b), env().ctx());
    EXPECT_NEAR(r.value, 1.0 / (1.0 - b * b), 1e-12) << b;
    EXPECT_EQ(r.method, "closed-form");
  }
  EXPECT_NEAR(characteristic(CharacteristicKind::Bp(2.0), weight_power(0.5), env().ctx()).value, 4.0 / 3.0, 1e-12);
}

TEST(ClosedForm, BpGeneral) {
  for (double p : {1.5, 3.0, 4.0})
    for (double b : {0.2, 0.6}) {
      auto r = characteristic(CharacteristicKind::Bp(p), weight_power(b), env().ctx());
      EXPECT_NEAR(r.value, bp_oracle(b, p), 1e-12) << p << " " << b;
    }
  // scale invariance
  auto s = characteristic(CharacteristicKind::Bp(3.0), weight_power(0.2, 7.0), env().ctx());
  EXPECT_NEAR(s.value, bp_oracle(0.2, 3.0), 1e-12);
}

TEST(ClosedForm, ReverseHolder) {
  auto r = characteristic(CharacteristicKind::RH(1.5), weight_power(0.5), env().ctx());
  EXPECT_NEAR(r.value, std::cbrt(2.0), 1e-12);
  for (double b : {0.1, 0.3})
    for (double rr : {1.2, 2.0, 3.0}) {
      double v = characteristic(CharacteristicKind::RH(rr), weight_power(b), env().ctx()).value;
      EXPECT_NEAR(v, (1.0 - b) / std::pow(1.0 - b * rr, 1.0 / rr), 1e-12);
    }
  EXPECT_THROW(characteristic(CharacteristicKind::RH(2.0), weight_power(0.6), env().ctx()), DivergenceError);
}

TEST(ClosedForm, B1) {
  // <sigma>_{K-hat} * sup_{K-hat} sigma^{-1} = 1 / (1 - b) for b >= 0
  for (double b : {0.0, 0.3, 0.7})
    EXPECT_NEAR(characteristic(CharacteristicKind::B1(), weight_power(b), env().ctx()).value, 1.0 / (1.0 - b), 1e-12);
}

TEST(ClosedForm, UnitWeight) {
  Symbol one = symbol_one();
  for (auto kind : {CharacteristicKind::Bp(2.0), CharacteristicKind::Bp(4.0 / 3.0), CharacteristicKind::B1(),
                    CharacteristicKind::UBp(one, 2.0), CharacteristicKind::UB1(one), CharacteristicKind::RH(3.0),
                    CharacteristicKind::BInf(), CharacteristicKind::Regularity()}) {
    EXPECT_NEAR(characteristic(kind, weight_one(), env().ctx()).value, 1.0, 1e-12) << kind.label();
    EXPECT_NEAR(characteristic(kind, weight_one(), env().ctx(true)).value, 1.0, 1e-10) << kind.label();
  }
}

TEST(ClosedForm, SymbolScalesCharacteristic) {
  Symbol half = symbol_constant(0.5);
  double a = characteristic(CharacteristicKind::UBp(half, 2.0), weight_power(0.4), env().ctx()).value;
  EXPECT_NEAR(a, 0.5 / (1.0 - 0.16), 1e-12);
  // |w|^2 has sup 1 on every tent
  Symbol abs2 = symbol_abs2();
  double c = characteristic(CharacteristicKind::UBp(abs2, 2.0), weight_power(0.4), env().ctx()).value;
  EXPECT_NEAR(c, 1.0 / (1.0 - 0.16), 1e-12);
}

TEST(GridRoute, AgreesWithClosedForm) {
  // mild singularities only: the two-point collar cannot resolve (1-s)^{-e} with e near 1
  for (double b : {0.1, 0.2}) {
    double cf = characteristic(CharacteristicKind::Bp(2.0), weight_power(b), env().ctx()).value;
    auto gr = characteristic(CharacteristicKind::Bp(2.0), weight_power(b), env().ctx(true));
    EXPECT_EQ(gr.method, "grid");
    EXPECT_NEAR(gr.value / cf, 1.0, 1e-2) << b;
    double rh = characteristic(CharacteristicKind::RH(1.5), weight_power(b), env().ctx(true)).value;
    EXPECT_NEAR(rh, (1.0 - b) / std::pow(1.0 - 1.5 * b, 1.0 / 1.5), 2e-2) << b;
  }
}

TEST(GridRoute, BInfinityAtLeastOne) {
  auto r = characteristic(CharacteristicKind::BInf(), weight_power(0.5), env().ctx(true));
  EXPECT_GE(r.value, 1.0);
  EXPECT_GE(r.value, r.per_system - 1e-12);
  auto t = characteristic(CharacteristicKind::BInf(), weight_synthetic_table(), env().ctx());
  EXPECT_GE(t.value, 1.0);
  EXPECT_LT(t.value, 10.0);
}

TEST(TentAverage, Routes) {
  const DyadicSystem& S = env().forest.system(1);
  int id = kube_id(4, 9);
  double cf = tent_average(weight_power(0.3), S, id, 1.0, env().ctx());
  double rk2 = env().params.one_minus_radius_sq(4);
  EXPECT_NEAR(cf, std::pow(rk2, -0.3) / 0.7, 1e-12);
  double gr = tent_average(weight_power(0.3), S, id, 1.0, env().ctx(true));
  EXPECT_NEAR(gr / cf, 1.0, 1e-2);
  EXPECT_THROW(tent_average(weight_power(0.5), S, id, 2.0, env().ctx()), DivergenceError);
  WeightContext bare{&env().forest, 12, nullptr, false};
  EXPECT_THROW(tent_average(weight_synthetic_table(), S, id, 1.0, bare), ParameterError);
}

TEST(Errors, Context) {
  WeightContext none;
  EXPECT_THROW(characteristic(CharacteristicKind::Bp(2.0), weight_one(), none), ParameterError);
  EXPECT_THROW(characteristic(CharacteristicKind::Bp(1.0), weight_one(), env().ctx()), ParameterError);
  EXPECT_THROW(characteristic(CharacteristicKind::RH(1.0), weight_one(), env().ctx()), ParameterError);
  CharacteristicKind k{CharacteristicKind::ubp, 2.0, 2.0, nullptr};
  EXPECT_THROW(characteristic(k, weight_one(), env().ctx()), ParameterError);
  WeightContext deep{&env().forest, 30, &env().index, false};
  EXPECT_THROW(characteristic(CharacteristicKind::Bp(2.0), weight_one(), deep), ParameterError);
}

TEST(ContinuousBp, UnitAndPower) {
  std::vector<Point> apexes{Point(0.3, 0.0), Point(0.0, 0.7), Point(-0.9, 0.1)};
  auto one = continuous_bp(weight_one(), 2.0, apexes, env().grid);
  EXPECT_NEAR(one.value, 1.0, 1e-12);
  EXPECT_GE(one.min_nodes, 16);
  auto pw = continuous_bp(weight_power(0.5), 2.0, apexes, env().grid);
  EXPECT_GE(pw.value, 1.0);
  EXPECT_THROW(continuous_bp(weight_one(), 2.0, {Point(0.99999, 0.0)}, env().grid), CoverageError);
}

TEST(Extrapolation, SolverConstraints) {
  auto x = extrapolation_params(3.0, 2.0, 1.5);
  EXPECT_GT(x.theta, 0.0);
  EXPECT_LE(std::max(x.r_theta, x.t_theta), 1.5 + 1e-6);
  // p1 interpolates: 1/p = (1 - theta)/p1 + theta/p0
  EXPECT_NEAR(1.0 / x.p, (1.0 - x.theta) / x.p1 + x.theta / x.p0, 1e-12);
  auto same = extrapolation_params(2.0, 2.0, 3.0);
  EXPECT_NEAR(same.theta, 0.5, 1e-12);
  EXPECT_THROW(extrapolation_params(1.0, 2.0, 2.0), ParameterError);
  EXPECT_THROW(extrapolation_params(2.0, 2.0, 1.0), ParameterError);
}

TEST(Predicted, UnitWeight) {
  Symbol one = symbol_one();
  PredictedConstants pc = predicted_constants(weight_one(), one, env().ctx());
  StructureConstants sc = structure_constants(env().forest, 12);
  EXPECT_NEAR(pc.b_inf, 1.0, 1e-12);
  EXPECT_NEAR(pc.c_sigma, 1.0, 1e-12);
  EXPECT_NEAR(pc.r, 1.0 + 1.0 / (2.0 * sc.alpha), 1e-12);
  EXPECT_NEAR(pc.rh_bound, 18.0, 1e-9);
  EXPECT_NEAR(pc.weak_bound, std::log(std::exp(1.0) + 1.0), 1e-12);
}
