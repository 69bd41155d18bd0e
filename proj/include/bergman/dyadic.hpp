#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bergman/geometry.hpp"

namespace bergman {

struct DyadicParams {
  // e^{2 theta0}; the default 2 keeps every radius rational
  double base = 2.0;
  int max_generation = 12;
  Dimension dim{};

  static DyadicParams from_theta0(double theta0, int G);
  double theta0() const;
  double caliber() const { return 1.0 / base; }

  // r_k = tanh(k theta0), with 1 - r_k^2 kept accurate for large k
  double radius(int k) const;
  double one_minus_radius_sq(int k) const;
  double center_radius(int k) const;
  void validate() const;
};

struct Arc {
  double start = 0.0;   // in [0, 2pi)
  double length = 0.0;  // half-open [start, start + length)
  bool contains(double angle) const;
  // [lo, hi] of angles (lo <= hi, no wrap normalisation needed)
  bool covers(double lo, double hi) const;
  double end() const { return start + length; }
};

struct Kube {
  int generation = 0;
  std::int64_t index = 0;
  Arc arc;
  Point center;
  int parent = -1;
  std::vector<int> children;
};

inline int kube_id(int k, std::int64_t j) { return static_cast<int>((std::int64_t{1} << k) - 1 + j); }
inline int kube_generation(int id) {
  int k = 0;
  while ((std::int64_t{2} << k) - 1 <= id) ++k;
  return k;
}

struct TentGeometry {
  double tent_measure = 0.0;
  double kube_measure = 0.0;
  double inner_radius = 0.0;
  Arc arc;
};

class DyadicSystem {
 public:
  DyadicSystem(const DyadicParams& params, int shift_index, double shift);

  const DyadicParams& params() const { return params_; }
  int shift_index() const { return shift_index_; }
  double shift() const { return shift_; }
  int depth() const { return params_.max_generation; }
  std::size_t size() const { return kubes_.size(); }
  const Kube& kube(int id) const { return kubes_.at(static_cast<std::size_t>(id)); }
  const std::vector<Kube>& kubes() const { return kubes_; }

  int generation_of_radius(double r) const;
  // index of the arc of generation k containing angle
  std::int64_t arc_index(int k, double angle) const;
  int locate(Point z) const;
  // same as locate but never deeper than max_gen; never throws for |z| < 1
  int locate_clamped(Point z, int max_gen) const;
  TentGeometry tent_geometry(int id) const;
  bool tent_contains(int id, Point w) const;

 private:
  DyadicParams params_;
  int shift_index_;
  double shift_;
  std::vector<Kube> kubes_;
};

class DyadicForest {
 public:
  DyadicForest() = default;
  static DyadicForest build(const DyadicParams& params, int M = 2);

  const DyadicParams& params() const { return params_; }
  int systems_count() const { return static_cast<int>(systems_.size()); }
  const DyadicSystem& system(int l) const { return systems_.at(static_cast<std::size_t>(l)); }
  int depth() const { return params_.max_generation; }

 private:
  DyadicParams params_;
  std::vector<DyadicSystem> systems_;
};

// closed-form normalized measures, n = 1
double tent_measure(const DyadicParams& p, int k);
double kube_measure(const DyadicParams& p, int k);

struct StructureConstants {
  double rho = 0.0;
  int rho_generation = 0;
  double alpha = 0.0;
  int alpha_generation = 0;  // parent generation of the maximizing pair
  double kube_tent_min = 0.0, kube_tent_max = 0.0;
  double comparability_min = 0.0, comparability_max = 0.0;
  int G = 0;
};

StructureConstants structure_constants(const DyadicForest& forest, int G);

struct TentApproximation {
  int system = 0;
  int kube = 0;
  int generation = 0;
  double ratio = 1.0;
};

TentApproximation approx_tent(Point z, const DyadicForest& forest);

nlohmann::json to_json(const DyadicForest& forest);
nlohmann::json to_json(const StructureConstants& sc);
DyadicForest forest_from_json(const nlohmann::json& j);

}  // namespace bergman
