#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "bergman/functions.hpp"
#include "bergman/norms.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const std::vector<double> tail_radii{0.8, 0.9, 0.95, 0.975};

// tau(R) = max over the kernel dictionary of int_{|z|>R} |T_u f|^2 sigma / int |f|^2 sigma
std::vector<double> tail_functional(const Symbol& u, const std::vector<double>& sigma, const QuadratureGrid& g,
                                    const Projector& P, const std::vector<GridFunction>& dict) {
  std::vector<double> tau(tail_radii.size(), 0.0);
  for (const auto& f : dict) {
    double nf = std::pow(norm(f, sigma, g, NormMode::Strong(2.0)), 2.0);
    GridFunction T = toeplitz_all(u, f, P);
    for (std::size_t i = 0; i < tail_radii.size(); ++i) {
      double t = std::pow(norm(T, sigma, g, NormMode::StrongTail(2.0, tail_radii[i])), 2.0);
      tau[i] = std::max(tau[i], t / nf);
    }
  }
  return tau;
}

nlohmann::json series(const std::vector<double>& tau) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < tau.size(); ++i) j["R=" + num(tail_radii[i])] = tau[i];
  return j;
}

}  // namespace

std::vector<CheckReport> check_compactness(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const QuadratureGrid& g = ctx.grid();
  const Projector& P = ctx.projector();

  std::vector<GridFunction> dict;
  for (double r : {0.0, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95}) dict.push_back(fn_kernel(g, Point(r, 0.0), 2.0));

  std::vector<Symbol> vanishing{symbol_vanishing(0.5), symbol_vanishing(1.0), symbol_vanishing(2.0)};
  std::vector<std::pair<Symbol, bool>> all;
  for (const auto& u : vanishing) all.emplace_back(u, true);
  all.emplace_back(symbol_one(), false);
  all.emplace_back(symbol_halfplane(), false);

  std::map<std::string, double> tail_ratio;  // b = 0, for the classification below
  for (double b : {0.0, 0.1}) {
    std::vector<double> sigma = sample_weight(weight_power(b), g);
    for (const auto& [u, vanishes] : all) {
      auto tau = tail_functional(u, sigma, g, P, dict);
      double ratio = tau.back() / tau.front();
      if (b == 0.0) tail_ratio[u.name] = ratio;
      std::string name = "compact.tail.u=" + u.name + ".b=" + num(b);
      CheckReport r;
      if (u.name == "halfplane") {
        r = info_check(name, ratio);
      } else if (vanishes) {
        bool decreasing = true;
        for (std::size_t i = 1; i < tau.size(); ++i) decreasing = decreasing && tau[i] < tau[i - 1];
        r = hard_check(name, ratio, 0.2);
        r.pass = r.pass && decreasing;
        r.details["strictly_decreasing"] = decreasing;
      } else {
        // no decay: tau(0.975) >= tau(0.8) / 2
        r = hard_check(name, tau.front() / tau.back(), 2.0);
        r.details["tail_ratio"] = ratio;
      }
      r.details["tau"] = series(tau);
      // the same ratio read as a quotient of norms rather than of p-th powers
      r.details["norm_ratio"] = std::sqrt(ratio);
      out.push_back(r);
    }
  }

  // Berezin decay classifies the same symbols as the tail test; (1 - |z|^2)^{1/2} is still near 0.08 at 0.995,
  // so decay is read as a drop by half from |z| = 0.9 to 0.995 rather than a fixed threshold
  {
    int mismatches = 0;
    nlohmann::json table = nlohmann::json::object();
    auto berezin_max = [&](const Symbol& u, double R) {
      double m = 0.0;
      for (int i = 0; i < 8; ++i) {
        Point z = std::polar(R, 2.0 * std::numbers::pi * i / 8);
        m = std::max(m, std::abs(berezin(u, z, BerezinRoute::invariance, g)));
      }
      return m;
    };
    for (const auto& [u, vanishes] : all) {
      double inner = berezin_max(u, 0.9), outer = berezin_max(u, 0.995);
      bool berezin_decays = outer <= 0.5 * inner;
      bool tail_decays = tail_ratio[u.name] <= 0.2;
      if (berezin_decays != tail_decays || berezin_decays != vanishes) ++mismatches;
      table[u.name] = {{"berezin_max_0.9", inner},
                       {"berezin_max_0.995", outer},
                       {"tail_ratio", tail_ratio[u.name]},
                       {"compact", tail_decays}};
    }
    auto r = hard_check("compact.classification", mismatches, 0.0);
    r.details = table;
    out.push_back(r);
  }
  return out;
}

}  // namespace bergman
