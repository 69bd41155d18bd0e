#include <cmath>
#include <cstdio>
#include <map>

#include "bergman/functions.hpp"
#include "bergman/norms.hpp"
#include "bergman/sparse.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// |u|^q with the tent sup carried over
Symbol symbol_power_of(const Symbol& u, double q) {
  Symbol s;
  s.name = u.name + "^" + num(q);
  auto e = u.eval;
  s.eval = [e, q](Point z) { return cplx(std::pow(std::abs(e(z)), q)); };
  if (u.tent_sup) {
    auto t = u.tent_sup;
    s.tent_sup = [t, q](double r, const Arc& a) { return std::pow(t(r, a), q); };
  }
  s.sup_norm = std::pow(u.sup_norm, q);
  return s;
}

std::vector<GridFunction> base_dictionary(const QuadratureGrid& g) {
  std::vector<GridFunction> d;
  for (int m = 0; m <= 4; ++m) d.push_back(fn_monomial(g, m));
  d.push_back(fn_annulus(g, 0.2, 0.5));
  d.push_back(fn_annulus(g, 0.6, 0.9));
  return d;
}

std::vector<GridFunction> kernel_dictionary(const QuadratureGrid& g, double p) {
  std::vector<GridFunction> d;
  for (Point w : {Point(0.3, 0.0), Point(0.0, 0.5), Point(-0.8, 0.0)}) d.push_back(fn_kernel(g, w, p));
  return d;
}

struct SparseStats {
  double max_ratio = 0.0;
  std::string symbol, function;
  Point z;
};

SparseStats sparse_ratio(const std::vector<Symbol>& symbols, const QuadratureGrid& g, const TentIndex& I,
                         const Projector& P) {
  SparseStats st;
  auto dict = base_dictionary(g);
  for (auto& k : kernel_dictionary(g, 2.0)) dict.push_back(k);
  dict.push_back(fn_kernel(g, Point(0.56, 0.56), 2.0));
  for (const Symbol& u : symbols) {
    for (const GridFunction& f : dict) {
      GridFunction T = toeplitz_all(u, f, P);
      auto S = sparse_apply_all(u, abs_values(f), I);
      for (std::size_t i = 0; i < g.interior_size(); ++i) {
        if (std::abs(g.nodes()[i]) > 0.8) continue;
        double t = std::abs(T[i]);
        double q = S[i] > 0.0 ? t / S[i] : (t > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0);
        if (q > st.max_ratio) st.max_ratio = q, st.symbol = u.name, st.function = f.provenance, st.z = g.nodes()[i];
      }
    }
  }
  return st;
}

double lp_norm(const GridFunction& f, const std::vector<double>& sigma, const QuadratureGrid& g, double p) {
  return norm(f, sigma, g, NormMode::Strong(p));
}

}  // namespace

std::vector<CheckReport> check_sparse_and_lp(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const QuadratureGrid& g = ctx.grid();
  const Projector& P = ctx.projector();
  std::vector<Symbol> symbols = ctx.symbols();
  WeightContext wc = ctx.weight_context();

  // (i) pointwise sparse domination, default grid against one refinement
  {
    SparseStats a = sparse_ratio(symbols, g, ctx.index(), P);
    SparseStats b = sparse_ratio(symbols, ctx.refined_grid(), ctx.refined_index(), ctx.refined_projector());
    double hi = std::max(a.max_ratio, b.max_ratio), lo = std::min(a.max_ratio, b.max_ratio);
    auto r = hard_check("lp.sparse_domination", hi / lo, 2.0);
    r.pass = r.pass && std::isfinite(hi) && lo > 0.0;
    r.witness = {{"symbol", a.symbol}, {"function", a.function}, {"z", {a.z.real(), a.z.imag()}}};
    r.details = {{"constant", hi},
                 {"default_grid", a.max_ratio},
                 {"refined_grid", b.max_ratio},
                 {"refined_witness", {{"symbol", b.symbol}, {"function", b.function}}}};
    out.push_back(r);
  }

  // cache T_u f over the dictionary
  std::vector<GridFunction> dict = base_dictionary(g);
  std::map<double, std::vector<GridFunction>> kernels;
  for (double p : ctx.config().p_values) kernels[p] = kernel_dictionary(g, p);
  auto functions_for = [&](double p) {
    std::vector<const GridFunction*> fs;
    for (const auto& f : dict) fs.push_back(&f);
    for (const auto& f : kernels[p]) fs.push_back(&f);
    return fs;
  };
  std::map<std::pair<std::string, const GridFunction*>, GridFunction> Tcache;
  auto T_of = [&](const Symbol& u, const GridFunction* f, bool adjoint = false) -> const GridFunction& {
    auto key = std::make_pair(u.name + (adjoint ? "*" : ""), f);
    auto it = Tcache.find(key);
    if (it == Tcache.end()) it = Tcache.emplace(key, toeplitz_all(u, *f, P, adjoint)).first;
    return it->second;
  };

  std::vector<std::pair<double, std::vector<double>>> sigmas;
  for (double b : ctx.config().b_values) sigmas.emplace_back(b, sample_weight(weight_power(b), g));

  // P fixes the normalized kernels
  {
    double worst = 0.0;
    Symbol one = symbol_one();
    for (const auto& k : kernel_dictionary(g, 2.0)) {
      const GridFunction& Tk = T_of(one, &k);
      std::vector<double> unit(g.size(), 1.0);
      double a = lp_norm(Tk, unit, g, 2.0), b = lp_norm(k, unit, g, 2.0);
      worst = std::max(worst, std::abs(a - b) / b);
    }
    out.push_back(hard_check("lp.kernel_isometry", worst, 1e-3));
  }

  // (ii) p >= 2: ||T_u f|| / ([sigma]_{uB_p} ||f||), stable across b
  for (double p : ctx.config().p_values) {
    if (p < 2.0) continue;
    for (const Symbol& u : symbols) {
      std::vector<std::pair<std::string, double>> series;
      nlohmann::json chars = nlohmann::json::object();
      for (const auto& [b, sigma] : sigmas) {
        double ch = characteristic(CharacteristicKind::UBp(u, p), weight_power(b), wc).value;
        double best = 0.0;
        for (const GridFunction* f : functions_for(p)) {
          double nf = lp_norm(*f, sigma, g, p);
          if (nf <= 0.0) continue;
          best = std::max(best, lp_norm(T_of(u, f), sigma, g, p) / (ch * nf));
        }
        std::string key = "b=" + num(b);
        series.emplace_back(key, best);
        chars[key] = ch;
      }
      auto r = stability_check("lp.ratio.p=" + num(p) + ".u=" + u.name, series);
      r.details["characteristic"] = chars;
      out.push_back(r);
    }
  }

  // (iii) 1 < p < 2 through the dual characteristic
  for (double p : ctx.config().p_values) {
    if (p >= 2.0) continue;
    const double pp = p / (p - 1.0);
    const std::string ptag = num(p);
    double ident = 0.0;
    for (const Symbol& u : symbols) {
      Symbol up = symbol_power_of(u, p - 1.0);
      std::vector<std::pair<std::string, double>> series, adjoint;
      for (const auto& [b, sigma] : sigmas) {
        Weight w = weight_power(b);
        double ch = characteristic(CharacteristicKind::UBp(up, p), w, wc).value;
        double dual = characteristic(CharacteristicKind::UBp(u, pp), dual_weight(w, p), wc).value;
        double lifted = std::pow(ch, pp / p);
        ident = std::max(ident, std::abs(dual - lifted) / lifted);
        std::vector<double> sdual = sample_weight(dual_weight(w, p), g);
        double best = 0.0, best_adj = 0.0;
        for (const GridFunction* f : functions_for(p)) {
          double nf = lp_norm(*f, sigma, g, p);
          if (nf > 0.0) best = std::max(best, lp_norm(T_of(u, f), sigma, g, p) / (lifted * nf));
        }
        for (const GridFunction* f : functions_for(pp)) {
          double nf = lp_norm(*f, sdual, g, pp);
          if (nf <= 0.0) continue;
          best_adj = std::max(best_adj, lp_norm(T_of(u, f, true), sdual, g, pp) / (dual * nf));
        }
        std::string key = "b=" + num(b);
        series.emplace_back(key, best);
        adjoint.emplace_back(key, best_adj);
      }
      out.push_back(stability_check("lp.ratio.p=" + ptag + ".u=" + u.name, series));
      out.push_back(stability_check("lp.adjoint.p'=" + num(pp) + ".u=" + u.name, adjoint));
    }
    auto r = hard_check("lp.dual_identity.p=" + ptag, ident, 1e-10);
    r.details["relative"] = true;
    out.push_back(r);
  }
  return out;
}

}  // namespace bergman
