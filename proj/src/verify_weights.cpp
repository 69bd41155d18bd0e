#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/norms.hpp"
#include "bergman/sparse.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

struct LemmaSide {
  double lhs = 0.0;  // <(M_K sigma)^{1+delta}>_{K-hat}
  double avg = 0.0;  // <sigma>_{K-hat}
};

// Power weights: M_K sigma equals the deepest tent average on the chain,
// truncated at generation G, so both sides are finite sums.
LemmaSide lemma_power(double b, const DyadicParams& P, int k, int G, double delta) {
  auto A = [&](int j) { return std::pow(P.one_minus_radius_sq(j), -b) / (1.0 - b); };
  double s = 0.0;
  for (int j = k; j < G; ++j) {
    double kube = (P.one_minus_radius_sq(j) - P.one_minus_radius_sq(j + 1)) / std::ldexp(1.0, j);
    s += std::ldexp(1.0, j - k) * kube * std::pow(A(j), 1.0 + delta);
  }
  s += std::ldexp(1.0, G - k) * tent_measure(P, G) * std::pow(A(G), 1.0 + delta);
  return {s / tent_measure(P, k), A(k)};
}

LemmaSide lemma_grid(const std::vector<double>& sigma, const TentIndex& I, int l, int id, double delta) {
  MaximalSpec spec;
  spec.kind = MaximalSpec::localized;
  spec.system = l;
  spec.kube = id;
  auto m = maximal_all(spec, sigma, I);
  const auto& w = I.grid().weights();
  double s = 0.0, a = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!I.tent_contains_node(l, id, i)) continue;
    s += std::pow(m[i], 1.0 + delta) * w[i];
    a += sigma[i] * w[i];
  }
  double mass = I.tent_mass(l)[static_cast<std::size_t>(id)];
  return {s / mass, a / mass};
}

}  // namespace

std::vector<CheckReport> check_weight_theory(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const DyadicForest& F = ctx.forest();
  const DyadicParams& P = F.params();
  const TentIndex& I = ctx.index();
  const int G = ctx.G();
  WeightContext wc = ctx.weight_context();
  StructureConstants sc = structure_constants(F, G);
  const double alpha = sc.alpha, rho = sc.rho;

  // closed-form characteristics
  {
    double worst = 0.0;
    double wb = 0.0;
    for (double b : ctx.config().b_values) {
      double v = characteristic(CharacteristicKind::Bp(2.0), weight_power(b), wc).value;
      double e = std::abs(v - 1.0 / (1.0 - b * b));
      if (e > worst) worst = e, wb = b;
    }
    double half = characteristic(CharacteristicKind::Bp(2.0), weight_power(0.5), wc).value;
    worst = std::max(worst, std::abs(half - 4.0 / 3.0));
    auto r = hard_check("weights.exact_b2", worst, 1e-10);
    r.witness["b"] = wb;
    r.details["b=0.5"] = half;
    out.push_back(r);
  }
  {
    double v = characteristic(CharacteristicKind::RH(1.5), weight_power(0.5), wc).value;
    auto r = exact_check("weights.exact_rh", v, std::cbrt(2.0), 1e-10);
    out.push_back(r);
  }
  {
    Weight one = weight_one();
    Symbol u1 = symbol_one();
    std::vector<CharacteristicKind> kinds{CharacteristicKind::Bp(2.0),  CharacteristicKind::Bp(4.0),
                                          CharacteristicKind::Bp(4.0 / 3.0), CharacteristicKind::B1(),
                                          CharacteristicKind::UBp(u1, 2.0), CharacteristicKind::UB1(u1),
                                          CharacteristicKind::RH(1.5), CharacteristicKind::BInf(),
                                          CharacteristicKind::Regularity()};
    double worst = 0.0;
    std::string wk;
    nlohmann::json vals = nlohmann::json::object();
    for (bool grid : {false, true}) {
      WeightContext c = ctx.weight_context(grid);
      for (const auto& k : kinds) {
        double v = characteristic(k, one, c).value;
        vals[(grid ? "grid:" : "closed:") + k.label()] = v;
        if (std::abs(v - 1.0) > worst) worst = std::abs(v - 1.0), wk = k.label();
      }
    }
    auto r = hard_check("weights.exact_unit", worst, 1e-10);
    r.witness["kind"] = wk;
    r.details["values"] = vals;
    out.push_back(r);
  }
  {
    int thrown = 0;
    for (double b : {1.0, 1.5}) {
      try {
        characteristic(CharacteristicKind::Bp(2.0), weight_power(b), wc);
      } catch (const DivergenceError&) {
        ++thrown;
      }
    }
    auto r = hard_check("weights.divergence_rejected", 2 - thrown, 0.0);
    out.push_back(r);
  }

  std::vector<Weight> sigmas = ctx.power_weights();
  for (auto& w : ctx.extra_weights()) sigmas.push_back(w);

  std::vector<Point> apexes;
  for (double r : {0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.98})
    for (int i = 0; i < 8; ++i) apexes.push_back(std::polar(r, 2.0 * std::numbers::pi * (i + 0.37) / 8));

  nlohmann::json trend = nlohmann::json::array();
  for (const Weight& w : sigmas) {
    const std::string tag = w.name;
    const bool closed = w.is_power();
    std::vector<double> sigma = sample_weight(w, ctx.grid());

    auto binf = characteristic(CharacteristicKind::BInf(), w, wc);
    double B = binf.value;
    double c_sigma = characteristic(CharacteristicKind::Regularity(), w, wc).value;
    double delta = 1.0 / (2.0 * alpha * B);

    // (i) continuous against dyadic B_2
    {
      auto cont = continuous_bp(w, 2.0, apexes, ctx.grid());
      double dy = characteristic(CharacteristicKind::Bp(2.0), w, wc).value;
      double ratio = cont.value / dy;
      auto r = hard_check("weights.b2_sandwich." + tag, std::max(ratio, 1.0 / ratio), alpha * alpha);
      r.witness = {{"apex", {cont.witness.real(), cont.witness.imag()}}};
      r.details = {{"continuous", cont.value}, {"dyadic", dy}, {"min_nodes", cont.min_nodes}};
      out.push_back(r);
    }

    // (ii) reverse Hoelder lemma on random kubes
    {
      auto rng = ctx.rng("weights.rh_lemma." + tag);
      const int D = closed ? G : I.depth();
      std::uniform_int_distribution<int> gen(0, D);
      std::uniform_int_distribution<int> sys(0, F.systems_count() - 1);
      double worst = 0.0;
      nlohmann::json wit;
      for (int s = 0; s < 50; ++s) {
        int k = gen(rng), l = sys(rng);
        std::uniform_int_distribution<std::int64_t> pick(0, (std::int64_t{1} << k) - 1);
        int id = kube_id(k, pick(rng));
        LemmaSide side = closed ? lemma_power(*w.power_b, P, k, G, delta) : lemma_grid(sigma, I, l, id, delta);
        double q = side.lhs / (B * std::pow(side.avg, 1.0 + delta));
        if (q > worst) worst = q, wit = {{"system", l}, {"kube", id}, {"generation", k}};
      }
      auto r = hard_check("weights.rh_lemma." + tag, worst, 2.0, 1e-9);
      r.witness = wit;
      r.details = {{"delta", delta}, {"b_inf", B}, {"b_inf_own_system", binf.per_system},
                   {"route", closed ? "closed-form" : "grid"}, {"kubes", 50}};
      out.push_back(r);
    }

    // (iii) reverse Hoelder theorem at r = 1 + delta
    double r_exp = 1.0 + delta;
    double rh = characteristic(CharacteristicKind::RH(r_exp), w, wc).value;
    {
      double cfac = std::pow(c_sigma, (r_exp - 1.0) / r_exp);
      auto r = hard_check("weights.rh_theorem." + tag, rh / cfac, 2.0 / (1.0 - rho), 1e-9);
      r.details = {{"r", r_exp}, {"rh", rh}, {"c_sigma", c_sigma}, {"b_inf", B}, {"bound", 2.0 / (1.0 - rho) * cfac}};
      out.push_back(r);
    }

    // (iv) sigma <= c_sigma / (1 - rho) M_K sigma on nodes above the index depth
    {
      double worst = 0.0;
      nlohmann::json wit;
      for (int l = 0; l < F.systems_count(); ++l) {
        MaximalSpec spec;
        spec.kind = MaximalSpec::localized;
        spec.system = l;
        spec.kube = 0;
        auto m = maximal_all(spec, sigma, I);
        const DyadicSystem& S = F.system(l);
        for (std::size_t i = 0; i < ctx.grid().interior_size(); ++i) {
          if (S.generation_of_radius(std::abs(ctx.grid().nodes()[i])) > I.depth()) continue;
          double q = sigma[i] / m[i];
          if (q > worst) worst = q, wit = {{"system", l}, {"node", i}};
        }
      }
      auto r = hard_check("weights.maximal_control." + tag, worst, c_sigma / (1.0 - rho), 1e-9);
      r.witness = wit;
      r.details["c_sigma"] = c_sigma;
      out.push_back(r);
    }

    if (closed) {
      double b1 = characteristic(CharacteristicKind::B1(), w, wc).value;
      trend.push_back({{"b", *w.power_b}, {"b1", b1}, {"c_sigma", c_sigma}, {"b_inf", B}});
    }
  }
  {
    // the B_1 characteristic grows with b while c_sigma stays bounded
    auto r = info_check("weights.b1_trend", trend.empty() ? 0.0 : trend.back()["b1"].get<double>());
    r.details["series"] = trend;
    out.push_back(r);
  }
  return out;
}

}  // namespace bergman
