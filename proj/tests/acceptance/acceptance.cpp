// Acceptance run: default configuration, every check group, one verdict per criterion.
// Bounds are pinned here and applied to the measured values; report pass flags are not used.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "bergman/verify.hpp"

using namespace bergman;

namespace {

struct Rule {
  std::string prefix;  // a trailing '.' or ':' matches a family, anything else one name
  CheckReport::Kind kind;
  double bound;
  double tol;          // relative slack on the bound
  std::size_t min_count;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Rule> rules;
};

bool matches(const std::string& name, const std::string& key) {
  char last = key.back();
  if (last == '.' || last == ':') return name.compare(0, key.size(), key) == 0;
  return name == key;
}

}  // namespace

int main() {
  // 1/(1 - C rho) with C = 1.05, rho = 8/9
  const double stopping_factor = 1.0 / (1.0 - 1.05 * 8.0 / 9.0);
  const auto H = CheckReport::hard;
  const auto S = CheckReport::stability;

  const std::vector<Criterion> criteria{
      {1, "dyadic exactness",
       {{"structure.radii", H, 1e-12, 0.0, 1},
        {"structure.tent_measure", H, 1e-12, 0.0, 1},
        {"structure.rho", H, 1e-12, 0.0, 1},
        {"structure.alpha", H, 1e-12, 0.0, 1},
        {"structure.alpha_bound", H, 4.0, 0.0, 1}}},
      {2, "weight characteristics",
       {{"weights.exact_b2", H, 1e-10, 0.0, 1},
        {"weights.exact_rh", H, 1e-10, 0.0, 1},
        {"weights.exact_unit", H, 1e-10, 0.0, 1}}},
      {3, "quadrature fidelity",
       {{"quadrature.monomials", H, 1e-3, 0.0, 1},
        {"quadrature.conjugate", H, 1e-3, 0.0, 1},
        {"quadrature.toeplitz_abs2", H, 1e-3, 0.0, 1},
        {"quadrature.kernel_norm", H, 1e-3, 0.0, 1}}},
      {4, "Berezin transform",
       {{"berezin.routes", H, 5e-3, 0.0, 1},
        {"berezin.abs2_log2", H, 1e-3, 0.0, 1},
        {"berezin.boundary", H, 0.05, 0.0, 1},
        {"berezin.vanishing_series", H, 1e-3, 0.0, 1}}},
      {5, "reverse Hoelder theorem and lemma",
       {{"weights.rh_theorem.", H, 18.0, 1e-9, 9}, {"weights.rh_lemma.", H, 2.0, 1e-9, 9}}},
      {6, "sparse domination under refinement", {{"lp.sparse_domination", H, 2.0, 0.0, 1}}},
      {7, "weighted bound stability over the b sweep",
       {{"lp.ratio.p=2.", S, 3.0, 0.0, 1}, {"weak.ratio.", S, 3.0, 0.0, 1}}},
      {8, "stopping time families",
       {{"stopping.disjoint", H, 0.0, 0.0, 1},
        {"stopping.tent_ratio.u=one", H, stopping_factor, 1e-9, 1},
        {"weak.fefferman_stein", H, 2.0, 1e-9, 1}}},
      {9, "compactness tails",
       {{"compact.tail.u=vanishing:", H, 0.2, 0.0, 3},
        // tau(0.8) / tau(0.975) <= 2, i.e. no decay below half
        {"compact.tail.u=one.", H, 2.0, 0.0, 1}}},
      {10, "c_Phi logarithmic law", {{"weak.cphi_law", H, 10.0, 0.0, 1}}},
  };

  std::vector<CheckReport> reports;
  try {
    VerifyContext ctx{RunConfig{}};
    reports = run_checks(ctx, "all");
  } catch (const std::exception& e) {
    std::printf("FAIL all criteria: verification run threw: %s\n", e.what());
    return 1;
  }

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    std::string why;
    double worst_frac = 0.0;
    for (const auto& rule : c.rules) {
      std::size_t count = 0;
      for (const auto& r : reports) {
        if (!matches(r.name, rule.prefix)) continue;
        ++count;
        double lim = rule.bound * (1.0 + rule.tol);
        bool good = r.kind == rule.kind && std::isfinite(r.measured) && r.measured <= lim;
        if (lim > 0.0) worst_frac = std::max(worst_frac, r.measured / lim);
        if (!good) {
          ok = false;
          char buf[256];
          std::snprintf(buf, sizeof buf, " %s=%.6g>%.6g", r.name.c_str(), r.measured, lim);
          why += buf;
        }
      }
      if (count < rule.min_count) {
        ok = false;
        why += " missing:" + rule.prefix;
      }
    }
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (worst measured/bound %.4g)%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                worst_frac, why.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
