#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/dyadic.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

inline constexpr const char* module_version = "0.3.0";

struct RunConfig {
  int n = 1;
  double theta0 = 0.0;  // 0 selects (ln 2)/2
  int G = 12;
  int M = 2;
  GridSpec grid{};
  std::vector<std::string> weights{"one", "table:synthetic"};
  std::vector<std::string> symbols{"one", "abs2", "vanishing:1", "halfplane"};
  std::vector<double> b_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> p_values{2.0, 4.0, 4.0 / 3.0};
  std::vector<double> r_primes{2.0, 10.0, 100.0, 1000.0};
  double stopping_C = 1.05;
  std::uint64_t seed = 20240601;
  std::string report_path;
  std::string csv_path;
  int workers = 1;
  bool timing = false;

  DyadicParams dyadic_params() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;
  // FNV-1a of the canonical JSON dump
  std::string hash() const;
  void validate() const;
};

}  // namespace bergman
