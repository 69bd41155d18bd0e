#include "bergman/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bergman/characteristics.hpp"
#include "bergman/errors.hpp"
#include "bergman/symbol.hpp"
#include "bergman/weight.hpp"

namespace bergman {

DyadicParams RunConfig::dyadic_params() const {
  DyadicParams p;
  if (theta0 > 0.0) p = DyadicParams::from_theta0(theta0, G);
  p.max_generation = G;
  p.dim.n = n;
  return p;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    c.n = j.value("n", c.n);
    if (j.contains("theta0")) {
      const auto& t = j.at("theta0");
      if (t.is_string()) {
        if (t.get<std::string>() != "default") throw ConfigError("config: theta0 must be a number or \"default\"");
      } else {
        c.theta0 = t.get<double>();
      }
    }
    c.G = j.value("G", c.G);
    c.M = j.value("M", c.M);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid.G_q = g.value("G_q", c.grid.G_q);
      c.grid.radial_per_generation = g.value("radial_per_generation", c.grid.radial_per_generation);
      c.grid.angular_density = g.value("angular_density", c.grid.angular_density);
      c.grid.safety_radius = g.value("safety_radius", c.grid.safety_radius);
      c.grid.collar = g.value("collar", c.grid.collar);
      c.grid.collar_cells = g.value("collar_cells", c.grid.collar_cells);
    }
    c.weights = j.value("weights", c.weights);
    c.symbols = j.value("symbols", c.symbols);
    if (j.contains("sweeps")) {
      const auto& s = j.at("sweeps");
      c.b_values = s.value("b", c.b_values);
      c.p_values = s.value("p", c.p_values);
      c.r_primes = s.value("r_prime", c.r_primes);
    }
    c.stopping_C = j.value("stopping_C", c.stopping_C);
    c.seed = j.value("seed", c.seed);
    if (j.contains("outputs")) {
      c.report_path = j.at("outputs").value("report", c.report_path);
      c.csv_path = j.at("outputs").value("csv", c.csv_path);
    }
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  if (theta0 > 0.0)
    j["theta0"] = theta0;
  else
    j["theta0"] = "default";
  j["G"] = G;
  j["M"] = M;
  j["grid"] = {{"G_q", grid.G_q},
               {"radial_per_generation", grid.radial_per_generation},
               {"angular_density", grid.angular_density},
               {"safety_radius", grid.safety_radius},
               {"collar", grid.collar},
               {"collar_cells", grid.collar_cells}};
  j["weights"] = weights;
  j["symbols"] = symbols;
  j["sweeps"] = {{"b", b_values}, {"p", p_values}, {"r_prime", r_primes}};
  j["stopping_C"] = stopping_C;
  j["seed"] = seed;
  j["outputs"] = {{"report", report_path}, {"csv", csv_path}};
  return j;
}

std::string RunConfig::hash() const {
  std::string s = to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void RunConfig::validate() const {
  if (n != 1) throw ConfigError("config: only n = 1 is supported");
  if (theta0 < 0.0) throw ConfigError("config: theta0 must be positive");
  if (G < 1 || G > 20) throw ConfigError("config: G must lie in [1, 20]");
  if (M < 1 || M > 6) throw ConfigError("config: M must lie in [1, 6]");
  if (grid.G_q < 1 || grid.G_q > 14) throw ConfigError("config: grid.G_q must lie in [1, 14]");
  if (workers < 1) throw ConfigError("config: workers must be positive");
  if (!(stopping_C > 1.0)) throw ConfigError("config: stopping_C must exceed 1");
  for (double b : b_values)
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("config: b values must lie in (0, 1)");
  for (double p : p_values)
    if (!(p > 1.0)) throw ConfigError("config: p values must exceed 1");
  for (double r : r_primes)
    if (!(r > 1.0)) throw ConfigError("config: r' values must exceed 1");
  try {
    for (const auto& w : weights) parse_weight(w);
    for (const auto& s : symbols) parse_symbol(s);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace bergman
