#pragma once

#include <string>
#include <vector>

#include "bergman/dyadic.hpp"
#include "bergman/symbol.hpp"
#include "bergman/tent_index.hpp"
#include "bergman/weight.hpp"

namespace bergman {

struct CharacteristicKind {
  enum Type { bp, b1, ubp, ub1, rh, binf, regularity } type = bp;
  double p = 2.0;
  double r = 2.0;
  const Symbol* u = nullptr;

  static CharacteristicKind Bp(double p) { return {bp, p, 2.0, nullptr}; }
  static CharacteristicKind B1() { return {b1, 2.0, 2.0, nullptr}; }
  static CharacteristicKind UBp(const Symbol& u, double p) { return {ubp, p, 2.0, &u}; }
  static CharacteristicKind UB1(const Symbol& u) { return {ub1, 2.0, 2.0, &u}; }
  static CharacteristicKind RH(double r) { return {rh, 2.0, r, nullptr}; }
  static CharacteristicKind BInf() { return {binf, 2.0, 2.0, nullptr}; }
  static CharacteristicKind Regularity() { return {regularity, 2.0, 2.0, nullptr}; }
  std::string label() const;
};

struct WeightContext {
  const DyadicForest* forest = nullptr;
  int G = 12;
  // grid statistics; required for weights without a closed form
  const TentIndex* index = nullptr;
  bool force_grid = false;
};

struct CharacteristicResult {
  double value = 0.0;
  int system = 0;
  int kube = 0;
  int generation = 0;
  std::string method;
  // BInfinity only: inner sup restricted to the tent's own system
  double per_system = 0.0;
};

double tent_average(const Weight& w, const DyadicSystem& sys, int kube, double e, const WeightContext& ctx);
CharacteristicResult characteristic(const CharacteristicKind& kind, const Weight& w, const WeightContext& ctx);

struct ContinuousBp {
  double value = 0.0;
  Point witness;
  int min_nodes = 0;
};
ContinuousBp continuous_bp(const Weight& w, double p, const std::vector<Point>& apexes, const QuadratureGrid& grid);

struct ExtrapolationParams {
  double p = 0, p0 = 0, r = 0;
  double theta = 0, p1 = 0, r_theta = 0, t_theta = 0;
};
ExtrapolationParams extrapolation_params(double p, double p0, double r);
// r(theta), t(theta) and p1(theta) for given exponents
ExtrapolationParams extrapolation_at(double p, double p0, double theta);

struct PredictedConstants {
  double rh_bound = 0.0;
  double weak_bound = 0.0;
  double r = 0.0;
  double rho = 0.0, alpha = 0.0, c_sigma = 0.0, b_inf = 0.0, ub1 = 0.0;
};
PredictedConstants predicted_constants(const Weight& w, const Symbol& u, const WeightContext& ctx);

}  // namespace bergman
