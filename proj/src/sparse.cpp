#include "bergman/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

std::vector<double> abs_symbol(const Symbol& u, const QuadratureGrid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = std::abs(u(grid.nodes()[i]));
  return v;
}

std::vector<double> averages(const TentIndex& index, int l, const std::vector<double>& v) {
  std::vector<double> s = index.tent_sums(l, v);
  const auto& m = index.tent_mass(l);
  for (std::size_t id = 0; id < s.size(); ++id) s[id] = m[id] > 0.0 ? s[id] / m[id] : 0.0;
  return s;
}

std::vector<double> tent_terms(const MaximalSpec& spec, const std::vector<double>& absf, const TentIndex& index,
                               int l) {
  const std::size_t n = index.kube_count();
  std::vector<double> t;
  switch (spec.kind) {
    case MaximalSpec::global:
    case MaximalSpec::localized:
      return averages(index, l, absf);
    case MaximalSpec::symbol: {
      t = averages(index, l, absf);
      auto us = symbol_tent_sup(*spec.u, index, l);
      for (std::size_t id = 0; id < n; ++id) t[id] *= us[id];
      return t;
    }
    case MaximalSpec::weighted: {
      if (!spec.sigma) throw ParameterError("maximal: weighted kind needs sigma");
      std::vector<double> fs(absf.size());
      for (std::size_t i = 0; i < absf.size(); ++i) fs[i] = absf[i] * (*spec.sigma)[i];
      t = index.tent_sums(l, fs);
      auto den = index.tent_sums(l, *spec.sigma);
      for (std::size_t id = 0; id < n; ++id) t[id] = den[id] > 0.0 ? t[id] / den[id] : 0.0;
      return t;
    }
    case MaximalSpec::symbol_orlicz:
    case MaximalSpec::symbol_power: {
      double r = spec.kind == MaximalSpec::symbol_orlicz ? spec.phi.r : spec.r;
      double kappa = spec.kind == MaximalSpec::symbol_orlicz ? spec.phi.kappa : 1.0;
      std::vector<double> fr(absf.size());
      for (std::size_t i = 0; i < absf.size(); ++i) fr[i] = std::pow(absf[i], r);
      t = averages(index, l, fr);
      auto us = spec.u ? symbol_tent_sup(*spec.u, index, l) : std::vector<double>(n, 1.0);
      for (std::size_t id = 0; id < n; ++id) t[id] = us[id] * std::pow(kappa * t[id], 1.0 / r);
      return t;
    }
  }
  return t;
}

// chain maxima: Q[id] = max over ancestors-or-self of T
std::vector<double> chain_max(const std::vector<double>& T) {
  std::vector<double> Q = T;
  for (std::size_t id = 1; id < Q.size(); ++id) Q[id] = std::max(Q[id], Q[(id - 1) / 2]);
  return Q;
}

}  // namespace

std::vector<double> symbol_tent_sup(const Symbol& u, const TentIndex& index, int l) {
  const DyadicSystem& S = index.forest().system(l);
  const DyadicParams& p = S.params();
  std::vector<double> out(index.kube_count());
  if (u.tent_sup) {
    for (std::size_t id = 0; id < out.size(); ++id) {
      const Kube& K = S.kube(static_cast<int>(id));
      out[id] = u.tent_sup(p.radius(K.generation), K.arc);
    }
    return out;
  }
  out = index.tent_max(l, abs_symbol(u, index.grid()));
  if (u.lipschitz) {
    // node spacing inside a generation-k tent is at most the angular cell width there
    int a = index.grid().spec().angular_density;
    for (std::size_t id = 0; id < out.size(); ++id) {
      int k = S.kube(static_cast<int>(id)).generation;
      out[id] += *u.lipschitz * 2.0 * std::numbers::pi / (12.0 * a * std::ldexp(1.0, k));
    }
  }
  return out;
}

std::vector<double> sparse_apply_all(const Symbol& u, const std::vector<double>& absf, const TentIndex& index) {
  std::vector<double> out(index.grid().size(), 0.0);
  for (int l = 0; l < index.systems(); ++l) {
    auto avg = averages(index, l, absf);
    auto us = symbol_tent_sup(u, index, l);
    std::vector<double> P(avg.size());
    for (std::size_t id = 0; id < P.size(); ++id) P[id] = us[id] * avg[id] + (id ? P[(id - 1) / 2] : 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += P[static_cast<std::size_t>(index.node_kube(l, i))];
  }
  return out;
}

double sparse_apply(const Symbol& u, const std::vector<double>& absf, const TentIndex& index, Point z) {
  double s = 0.0;
  for (int l = 0; l < index.systems(); ++l) {
    auto avg = averages(index, l, absf);
    auto us = symbol_tent_sup(u, index, l);
    for (int id = index.locate(l, z);; id = (id - 1) / 2) {
      s += us[static_cast<std::size_t>(id)] * avg[static_cast<std::size_t>(id)];
      if (id == 0) break;
    }
  }
  return s;
}

std::vector<double> maximal_all(const MaximalSpec& spec, const std::vector<double>& absf, const TentIndex& index) {
  if ((spec.kind == MaximalSpec::symbol || spec.kind == MaximalSpec::symbol_orlicz) && !spec.u)
    throw ParameterError("maximal: symbol kinds need a symbol");
  std::vector<double> out(index.grid().size(), 0.0);
  if (spec.kind == MaximalSpec::localized) {
    auto T = tent_terms(spec, absf, index, spec.system);
    std::vector<double> Q(T.size(), 0.0);
    Q[static_cast<std::size_t>(spec.kube)] = T[static_cast<std::size_t>(spec.kube)];
    std::vector<bool> inside(T.size(), false);
    inside[static_cast<std::size_t>(spec.kube)] = true;
    for (std::size_t id = static_cast<std::size_t>(spec.kube) + 1; id < T.size(); ++id) {
      std::size_t par = (id - 1) / 2;
      if (!inside[par]) continue;
      inside[id] = true;
      Q[id] = std::max(T[id], Q[par]);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Q[static_cast<std::size_t>(index.node_kube(spec.system, i))];
    return out;
  }
  for (int l = 0; l < index.systems(); ++l) {
    auto Q = chain_max(tent_terms(spec, absf, index, l));
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = std::max(out[i], Q[static_cast<std::size_t>(index.node_kube(l, i))]);
  }
  return out;
}

double maximal(const MaximalSpec& spec, const std::vector<double>& absf, const TentIndex& index, Point z) {
  double best = 0.0;
  for (int l = 0; l < index.systems(); ++l) {
    if (spec.kind == MaximalSpec::localized && l != spec.system) continue;
    auto T = tent_terms(spec, absf, index, l);
    int id = index.locate(l, z);
    if (spec.kind == MaximalSpec::localized) {
      if (id < spec.kube) return 0.0;
      int a = id;
      while (a > spec.kube) a = (a - 1) / 2;
      if (a != spec.kube) return 0.0;
    }
    for (;; id = (id - 1) / 2) {
      best = std::max(best, T[static_cast<std::size_t>(id)]);
      if (id == 0 || (spec.kind == MaximalSpec::localized && id == spec.kube)) break;
    }
  }
  return best;
}

}  // namespace bergman
