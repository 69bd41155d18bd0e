#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

struct Weight {
  std::string name;
  std::function<double(Point)> eval;
  // closed form scale * (1 - |z|^2)^{-b}
  std::optional<double> power_b;
  double scale = 1.0;

  double operator()(Point z) const { return eval(z); }
  bool is_power() const { return power_b.has_value(); }
};

Weight weight_one();
Weight weight_power(double b, double scale = 1.0);
Weight weight_scaled(const Weight& w, double c);
Weight weight_product(const std::vector<Weight>& factors);
Weight weight_custom(std::string name, std::function<double(Point)> fn);

struct TableSample {
  double r, theta, value;
};
Weight weight_table(std::vector<TableSample> samples, std::string name = "table");
Weight weight_table_file(const std::string& path);
// non-radial reference weight tabulated on a polar lattice
Weight weight_synthetic_table();

// sigma^{1 - p'}
Weight dual_weight(const Weight& w, double p);

// power:b=<b>[,c=<scale>] | product:[spec;spec;...] | table:<path> | table:synthetic | one
Weight parse_weight(const std::string& spec);

}  // namespace bergman
