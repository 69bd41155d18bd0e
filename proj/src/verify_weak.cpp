#include <cmath>
#include <cstdio>

#include "bergman/functions.hpp"
#include "bergman/norms.hpp"
#include "bergman/orlicz.hpp"
#include "bergman/sparse.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<GridFunction> l1_dictionary(const DyadicForest& F, const QuadratureGrid& g) {
  std::vector<GridFunction> d;
  const DyadicSystem& S = F.system(0);
  for (auto [k, j] : {std::pair{2, 1}, {4, 5}, {6, 17}, {8, 100}}) d.push_back(fn_kube_indicator(g, S, kube_id(k, j)));
  d.push_back(fn_kube_indicator(g, F.system(F.systems_count() - 1), kube_id(5, 9)));
  d.push_back(fn_kernel(g, Point(0.5, 0.0), 2.0));
  d.push_back(fn_kernel(g, Point(0.0, -0.9), 2.0));
  return d;
}

double l1(const std::vector<double>& absf, const std::vector<double>& weight, const QuadratureGrid& g) {
  return norm(absf, weight, g, NormMode::Strong(1.0));
}

double weak(const std::vector<double>& absf, const std::vector<double>& sigma, const QuadratureGrid& g) {
  return norm(absf, sigma, g, NormMode::Weak());
}

}  // namespace

std::vector<CheckReport> check_weak_type(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const QuadratureGrid& g = ctx.grid();
  const TentIndex& I = ctx.index();
  const DyadicForest& F = ctx.forest();
  const Projector& P = ctx.projector();
  WeightContext wc = ctx.weight_context();
  std::vector<Symbol> symbols = ctx.symbols();
  auto dict = l1_dictionary(F, g);
  std::vector<std::vector<double>> absdict;
  for (const auto& f : dict) absdict.push_back(abs_values(f));

  std::vector<std::pair<double, std::vector<double>>> sigmas;
  for (double b : ctx.config().b_values) sigmas.emplace_back(b, sample_weight(weight_power(b), g));

  // weak (1,1) of T_u against the predicted constant, stable across b
  for (const Symbol& u : symbols) {
    std::vector<std::vector<double>> T;
    for (const auto& f : dict) T.push_back(abs_values(toeplitz_all(u, f, P)));
    std::vector<std::pair<std::string, double>> series;
    nlohmann::json measured = nlohmann::json::object(), bounds = nlohmann::json::object();
    for (const auto& [b, sigma] : sigmas) {
      double best = 0.0;
      for (std::size_t i = 0; i < dict.size(); ++i) {
        double nf = l1(absdict[i], sigma, g);
        if (nf > 0.0) best = std::max(best, weak(T[i], sigma, g) / nf);
      }
      double bound = predicted_constants(weight_power(b), u, wc).weak_bound;
      std::string key = "b=" + num(b);
      series.emplace_back(key, best / bound);
      measured[key] = best;
      bounds[key] = bound;
    }
    auto r = stability_check("weak.ratio.u=" + u.name, series);
    r.details["measured"] = measured;
    r.details["weak_bound"] = bounds;
    out.push_back(r);
  }

  // point-mass surrogate for P on the unweighted disk
  {
    const DyadicSystem& S = F.system(0);
    GridFunction f = fn_kube_indicator(g, S, kube_id(8, 37));
    std::vector<double> unit(g.size(), 1.0);
    double nf = l1(abs_values(f), unit, g);
    auto Pf = abs_values(P.apply(f));
    auto r = info_check("weak.point_mass", weak(Pf, unit, g) / nf);
    r.witness = {{"system", 0}, {"kube", kube_id(8, 37)}};
    out.push_back(r);
  }

  // Fefferman-Stein: ||M_u f||_{L^{1,inf}_sigma} <= M ||f||_{L^1_{M_u sigma}}
  {
    double worst = 0.0;
    nlohmann::json wit;
    std::vector<std::pair<std::string, std::vector<double>>> ws;
    ws.emplace_back("one", std::vector<double>(g.size(), 1.0));
    for (const auto& [b, s] : sigmas) ws.emplace_back("b=" + num(b), s);
    for (const Symbol& u : symbols) {
      MaximalSpec spec;
      spec.kind = MaximalSpec::symbol;
      spec.u = &u;
      for (const auto& [wname, sigma] : ws) {
        auto Msigma = maximal_all(spec, sigma, I);
        for (std::size_t i = 0; i < dict.size(); ++i) {
          if (dict[i].provenance.rfind("indicator:kube", 0) != 0) continue;
          auto Mf = maximal_all(spec, absdict[i], I);
          double q = weak(Mf, sigma, g) / l1(absdict[i], Msigma, g);
          if (q > worst) worst = q, wit = {{"symbol", u.name}, {"weight", wname}, {"function", dict[i].provenance}};
        }
      }
    }
    auto r = hard_check("weak.fefferman_stein", worst, static_cast<double>(F.systems_count()), 1e-9);
    r.witness = wit;
    out.push_back(r);
  }

  // sparse weak type against the M_{u,r} sigma weighted L^1 norm with its (1 + log r') factor
  for (const Symbol& u : symbols) {
    std::vector<std::vector<double>> S;
    for (const auto& a : absdict) S.push_back(sparse_apply_all(u, a, I));
    std::vector<std::pair<std::string, double>> series;
    nlohmann::json skipped = nlohmann::json::array();
    for (double rp : {2.0, 10.0, 100.0}) {
      double r = rp / (rp - 1.0);
      MaximalSpec spec;
      spec.kind = MaximalSpec::symbol_power;
      spec.u = &u;
      spec.r = r;
      for (const auto& [b, sigma] : sigmas) {
        std::string key = "r'=" + num(rp) + ",b=" + num(b);
        // <sigma_b^r> diverges on tents once b r >= 1
        if (b * r >= 1.0) {
          skipped.push_back(key);
          continue;
        }
        auto Mr = maximal_all(spec, sigma, I);
        double best = 0.0;
        for (std::size_t i = 0; i < dict.size(); ++i) {
          double nf = l1(absdict[i], Mr, g);
          if (nf > 0.0) best = std::max(best, weak(S[i], sigma, g) / ((1.0 + std::log(rp)) * nf));
        }
        series.emplace_back(key, best);
      }
    }
    auto r = stability_check("weak.mr.u=" + u.name, series);
    r.details["skipped"] = skipped;
    out.push_back(r);
  }

  // c_Phi against 1 + log r'
  {
    StructureConstants sc = structure_constants(F, ctx.G());
    const double C = ctx.config().stopping_C;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    nlohmann::json series = nlohmann::json::object();
    bool monotone = true;
    double prev = 0.0;
    for (double rp : ctx.config().r_primes) {
      CphiResult c = cphi(rp / (rp - 1.0), sc.rho, C);
      lo = std::min(lo, c.ratio_to_log);
      hi = std::max(hi, c.ratio_to_log);
      series["r'=" + num(rp)] = {{"c_phi", c.c_phi}, {"ratio_to_log", c.ratio_to_log}, {"terms", c.terms}};
      if (c.c_phi < prev) monotone = false;
      prev = c.c_phi;
    }
    auto r = hard_check("weak.cphi_law", hi / lo, 10.0);
    r.details = {{"series", series}, {"rho", sc.rho}, {"C", C}, {"monotone_in_r_prime", monotone}};
    out.push_back(r);
  }
  return out;
}

}  // namespace bergman
