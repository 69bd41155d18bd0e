#include "bergman/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/norms.hpp"
#include "bergman/sparse.hpp"
#include "spec_parse.hpp"

namespace bergman {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_forest(const WeightContext& ctx) {
  if (!ctx.forest) throw ParameterError("characteristic: no forest in context");
  if (ctx.G < 0 || ctx.G > ctx.forest->depth()) throw ParameterError("characteristic: G beyond forest depth");
}

// <sigma_b^e> over a generation-k tent without the scale factor
double power_average(double b, double e, const DyadicParams& p, int k) {
  double eb = e * b;
  if (eb >= 1.0) throw DivergenceError("tent average: (1-|z|^2)^{-" + detail::fmt_num(eb) + "} is not integrable");
  return std::pow(p.one_minus_radius_sq(k), -eb) / (1.0 - eb);
}

double dual_exponent(double p) { return p / (p - 1.0); }

void check_exponents(const CharacteristicKind& kind) {
  if ((kind.type == CharacteristicKind::bp || kind.type == CharacteristicKind::ubp) && !(kind.p > 1.0))
    throw ParameterError("characteristic: p must exceed 1");
  if (kind.type == CharacteristicKind::rh && !(kind.r > 1.0)) throw ParameterError("characteristic: r must exceed 1");
  if ((kind.type == CharacteristicKind::ubp || kind.type == CharacteristicKind::ub1) && !kind.u)
    throw ParameterError("characteristic: symbol kinds need a symbol");
}

struct Best {
  CharacteristicResult r{-inf, 0, 0, 0, "", 0.0};
  void offer(double v, int l, int id, int k) {
    if (v > r.value) r.value = v, r.system = l, r.kube = id, r.generation = k;
  }
};

// B-infinity for a pure power weight, tent of generation k, truncated at G
double power_binf(double b, const DyadicParams& p, int k, int G) {
  if (b <= 0.0) return 1.0;
  double base = p.one_minus_radius_sq(k);
  double s = 0.0;
  for (int j = k; j < G; ++j) {
    double dj = p.one_minus_radius_sq(j) - p.one_minus_radius_sq(j + 1);
    s += std::pow(p.one_minus_radius_sq(j) / base, -b) * dj / base;
  }
  s += std::pow(p.one_minus_radius_sq(G) / base, 1.0 - b);
  return s;
}

CharacteristicResult closed_form(const CharacteristicKind& kind, const Weight& w, const WeightContext& ctx) {
  const DyadicForest& F = *ctx.forest;
  const DyadicParams& P = F.params();
  double b = *w.power_b;
  Best best;
  best.r.method = "closed-form";
  auto per_generation = [&](auto&& fn) {
    for (int k = 0; k <= ctx.G; ++k) best.offer(fn(k), 0, kube_id(k, 0), k);
  };
  auto bp_value = [&](int k, double p) {
    double pp = dual_exponent(p);
    return power_average(b, 1.0, P, k) * std::pow(power_average(b, 1.0 - pp, P, k), p - 1.0);
  };
  auto b1_value = [&](int k) {
    if (b < 0.0) return inf;  // sigma^{-1} unbounded near the circle
    return power_average(b, 1.0, P, k) * std::pow(P.one_minus_radius_sq(k), b);
  };
  auto with_symbol = [&](auto&& fn) {
    for (int l = 0; l < F.systems_count(); ++l) {
      const DyadicSystem& S = F.system(l);
      for (int k = 0; k <= ctx.G; ++k) {
        double base = fn(k);
        for (std::int64_t j = 0; j < (std::int64_t{1} << k); ++j) {
          int id = kube_id(k, j);
          double us = kind.u->tent_sup ? kind.u->tent_sup(P.radius(k), S.kube(id).arc) : inf;
          best.offer(us * base, l, id, k);
        }
      }
    }
  };
  switch (kind.type) {
    case CharacteristicKind::bp:
      per_generation([&](int k) { return bp_value(k, kind.p); });
      break;
    case CharacteristicKind::b1:
      per_generation(b1_value);
      break;
    case CharacteristicKind::ubp:
      with_symbol([&](int k) { return bp_value(k, kind.p); });
      break;
    case CharacteristicKind::ub1:
      with_symbol(b1_value);
      break;
    case CharacteristicKind::rh:
      per_generation([&](int k) {
        return std::pow(power_average(b, kind.r, P, k), 1.0 / kind.r) / power_average(b, 1.0, P, k);
      });
      break;
    case CharacteristicKind::binf:
      per_generation([&](int k) { return power_binf(b, P, k, ctx.G); });
      best.r.per_system = best.r.value;
      break;
    case CharacteristicKind::regularity:
      per_generation([&](int k) {
        return std::pow(P.one_minus_radius_sq(k) / P.one_minus_radius_sq(k + 1), std::abs(b));
      });
      break;
  }
  return best.r;
}

class GridRoute {
 public:
  GridRoute(const Weight& w, const WeightContext& ctx)
      : ctx_(ctx), idx_(*ctx.index), D_(std::min(ctx.G, ctx.index->depth())), sigma_(sample_weight(w, idx_.grid())) {}

  std::vector<double> averages(int l, double e) const {
    std::vector<double> v(sigma_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(sigma_[i], e);
    auto s = idx_.tent_sums(l, v);
    const auto& m = idx_.tent_mass(l);
    for (std::size_t id = 0; id < s.size(); ++id) s[id] /= m[id];
    return s;
  }

  std::vector<double> inverse_sup(int l) const {
    std::vector<double> v(sigma_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / sigma_[i];
    return idx_.tent_max(l, v);
  }

  CharacteristicResult run(const CharacteristicKind& kind) const {
    Best best;
    best.r.method = "grid";
    std::size_t limit = (std::size_t{2} << D_) - 1;
    for (int l = 0; l < idx_.systems(); ++l) {
      std::vector<double> vals(limit);
      switch (kind.type) {
        case CharacteristicKind::bp:
        case CharacteristicKind::ubp: {
          auto a = averages(l, 1.0), d = averages(l, 1.0 - dual_exponent(kind.p));
          for (std::size_t id = 0; id < limit; ++id) vals[id] = a[id] * std::pow(d[id], kind.p - 1.0);
          break;
        }
        case CharacteristicKind::b1:
        case CharacteristicKind::ub1: {
          auto a = averages(l, 1.0), s = inverse_sup(l);
          for (std::size_t id = 0; id < limit; ++id) vals[id] = a[id] * s[id];
          break;
        }
        case CharacteristicKind::rh: {
          auto a = averages(l, 1.0), ar = averages(l, kind.r);
          for (std::size_t id = 0; id < limit; ++id) vals[id] = std::pow(ar[id], 1.0 / kind.r) / a[id];
          break;
        }
        case CharacteristicKind::regularity: {
          auto hi = idx_.cell_max(l, sigma_), lo = idx_.cell_min(l, sigma_);
          for (std::size_t id = 0; id < limit; ++id) vals[id] = hi[id] / lo[id];
          break;
        }
        case CharacteristicKind::binf:
          binf(l, vals, best);
          break;
      }
      if (kind.type == CharacteristicKind::ubp || kind.type == CharacteristicKind::ub1) {
        auto us = symbol_tent_sup(*kind.u, idx_, l);
        for (std::size_t id = 0; id < limit; ++id) vals[id] *= us[id];
      }
      const DyadicSystem& S = idx_.forest().system(l);
      for (std::size_t id = 0; id < limit; ++id)
        best.offer(vals[id], l, static_cast<int>(id), S.kube(static_cast<int>(id)).generation);
    }
    return best.r;
  }

 private:
  // (1/sigma(K)) int_K M(sigma chi_K) with M the maximal function over all
  // systems, truncated at depth; per-system variant goes to best.r.per_system
  void binf(int l, std::vector<double>& vals, Best& best) const {
    const QuadratureGrid& g = idx_.grid();
    const int M = idx_.systems();
    const std::size_t nk = idx_.kube_count();
    std::vector<std::vector<std::size_t>> cells(nk);
    for (std::size_t i = 0; i < g.size(); ++i) cells[static_cast<std::size_t>(idx_.node_kube(l, i))].push_back(i);
    std::vector<std::vector<double>> acc(static_cast<std::size_t>(M), std::vector<double>(nk, 0.0));
    std::vector<std::vector<double>> cm(static_cast<std::size_t>(M), std::vector<double>(nk, 0.0));
    std::vector<std::size_t> nodes;
    for (std::size_t id = 0; id < vals.size(); ++id) {
      int k = idx_.forest().system(l).kube(static_cast<int>(id)).generation;
      std::int64_t j = static_cast<std::int64_t>(id) - ((std::int64_t{1} << k) - 1);
      nodes.clear();
      for (int gdepth = k; gdepth <= D_; ++gdepth) {
        std::int64_t span = std::int64_t{1} << (gdepth - k);
        for (std::int64_t c = j * span; c < (j + 1) * span; ++c)
          for (std::size_t i : cells[static_cast<std::size_t>(kube_id(gdepth, c))]) nodes.push_back(i);
      }
      double mass = 0.0;
      for (std::size_t i : nodes) mass += sigma_[i] * g.weights()[i];
      for (int lp = 0; lp < M; ++lp) {
        auto& a = acc[static_cast<std::size_t>(lp)];
        std::fill(a.begin(), a.end(), 0.0);
        for (std::size_t i : nodes)
          for (int c = idx_.node_kube(lp, i);; c = (c - 1) / 2) {
            a[static_cast<std::size_t>(c)] += sigma_[i] * g.weights()[i];
            if (c == 0) break;
          }
        const auto& tm = idx_.tent_mass(lp);
        auto& q = cm[static_cast<std::size_t>(lp)];
        for (std::size_t c = 0; c < nk; ++c) {
          double avg = a[c] / tm[c];
          q[c] = c ? std::max(avg, q[(c - 1) / 2]) : avg;
        }
      }
      double all = 0.0, own = 0.0;
      for (std::size_t i : nodes) {
        double m_own = cm[static_cast<std::size_t>(l)][static_cast<std::size_t>(idx_.node_kube(l, i))];
        double m_all = m_own;
        for (int lp = 0; lp < M; ++lp)
          m_all = std::max(m_all, cm[static_cast<std::size_t>(lp)][static_cast<std::size_t>(idx_.node_kube(lp, i))]);
        all += m_all * g.weights()[i];
        own += m_own * g.weights()[i];
      }
      vals[id] = all / mass;
      best.r.per_system = std::max(best.r.per_system, own / mass);
    }
  }

  const WeightContext& ctx_;
  const TentIndex& idx_;
  int D_;
  std::vector<double> sigma_;
};

}  // namespace

std::string CharacteristicKind::label() const {
  switch (type) {
    case bp: return "Bp(p=" + detail::fmt_num(p) + ")";
    case b1: return "B1";
    case ubp: return "uBp(u=" + (u ? u->name : std::string("?")) + ",p=" + detail::fmt_num(p) + ")";
    case ub1: return "uB1(u=" + (u ? u->name : std::string("?")) + ")";
    case rh: return "RH(r=" + detail::fmt_num(r) + ")";
    case binf: return "Binf";
    case regularity: return "regularity";
  }
  return "?";
}

double tent_average(const Weight& w, const DyadicSystem& sys, int kube, double e, const WeightContext& ctx) {
  const Kube& K = sys.kube(kube);
  if (w.is_power() && !ctx.force_grid)
    return std::pow(w.scale, e) * power_average(*w.power_b, e, sys.params(), K.generation);
  if (!ctx.index) throw ParameterError("tent_average: weight has no closed form and no grid was supplied");
  if (K.generation > ctx.index->depth()) throw CoverageError("tent_average: kube deeper than the grid index");
  const QuadratureGrid& g = ctx.index->grid();
  double s = 0.0, m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!ctx.index->tent_contains_node(sys.shift_index(), kube, i)) continue;
    s += std::pow(w(g.nodes()[i]), e) * g.weights()[i];
    m += g.weights()[i];
  }
  return s / m;
}

CharacteristicResult characteristic(const CharacteristicKind& kind, const Weight& w, const WeightContext& ctx) {
  require_forest(ctx);
  check_exponents(kind);
  bool symbol_exact = !kind.u || static_cast<bool>(kind.u->tent_sup);
  if (w.is_power() && !ctx.force_grid && symbol_exact) return closed_form(kind, w, ctx);
  if (!ctx.index) throw ParameterError("characteristic: weight or symbol needs a grid index");
  return GridRoute(w, ctx).run(kind);
}

ContinuousBp continuous_bp(const Weight& w, double p, const std::vector<Point>& apexes, const QuadratureGrid& grid) {
  if (!(p > 1.0)) throw ParameterError("continuous_bp: p must exceed 1");
  auto sigma = sample_weight(w, grid);
  double e = 1.0 - dual_exponent(p);
  ContinuousBp out{0.0, 0.0, std::numeric_limits<int>::max()};
  for (Point z : apexes) {
    if (std::abs(z) > grid.truncation_radius()) throw CoverageError("continuous_bp: apex beyond grid truncation");
    double m = 0.0, a = 0.0, d = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!in_carleson_tent(z, grid.nodes()[i])) continue;
      double wi = grid.weights()[i];
      m += wi;
      a += sigma[i] * wi;
      d += std::pow(sigma[i], e) * wi;
      ++count;
    }
    if (count < 16) throw CoverageError("continuous_bp: tent holds fewer than 16 nodes");
    out.min_nodes = std::min(out.min_nodes, count);
    double v = (a / m) * std::pow(d / m, p - 1.0);
    if (v > out.value) out.value = v, out.witness = z;
  }
  return out;
}

ExtrapolationParams extrapolation_at(double p, double p0, double theta) {
  ExtrapolationParams x;
  x.p = p;
  x.p0 = p0;
  x.theta = theta;
  double pp = dual_exponent(p), p0p = dual_exponent(p0);
  x.p1 = (1.0 - theta) / (1.0 / p - theta / p0);
  double p1p = dual_exponent(x.p1);
  x.r_theta = x.p1 * (p0p + theta * p) / (p * p0p * (1.0 - theta));
  x.t_theta = p1p * (p0 + theta * pp) / (pp * p0 * (1.0 - theta));
  return x;
}

ExtrapolationParams extrapolation_params(double p, double p0, double r) {
  if (!(p > 1.0) || !(p0 > 1.0) || std::isinf(p) || std::isinf(p0)) throw ParameterError("extrapolation: p, p0 must lie in (1, inf)");
  if (!(r > 1.0)) throw ParameterError("extrapolation: r must exceed 1");
  ExtrapolationParams out;
  if (p == p0) {
    double theta = std::min((r - 1.0) / (r + p - 1.0), (r - 1.0) / (r + 1.0 / (p - 1.0)));
    out = extrapolation_at(p, p0, theta);
    out.p1 = p;
  } else {
    double tmax = std::min({1.0, p0 / p, dual_exponent(p0) / dual_exponent(p)});
    auto ok = [&](double t) {
      auto x = extrapolation_at(p, p0, t);
      return x.p1 > 1.0 && std::isfinite(x.p1) && std::max(x.r_theta, x.t_theta) <= r;
    };
    double lo = 0.0, hi = tmax;
    while (hi - lo > 1e-9) {
      double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    if (lo < 1e-9) {
      auto x = extrapolation_at(p, p0, 1e-9);
      throw Infeasible("extrapolation: no admissible theta; max(r, t) at 1e-9 is " +
                       detail::fmt_num(std::max(x.r_theta, x.t_theta)));
    }
    out = extrapolation_at(p, p0, lo);
  }
  out.r = r;
  return out;
}

PredictedConstants predicted_constants(const Weight& w, const Symbol& u, const WeightContext& ctx) {
  require_forest(ctx);
  PredictedConstants pc;
  StructureConstants sc = structure_constants(*ctx.forest, ctx.G);
  pc.rho = sc.rho;
  pc.alpha = sc.alpha;
  pc.b_inf = characteristic(CharacteristicKind::BInf(), w, ctx).value;
  pc.c_sigma = characteristic(CharacteristicKind::Regularity(), w, ctx).value;
  pc.ub1 = characteristic(CharacteristicKind::UB1(u), w, ctx).value;
  pc.r = 1.0 + 1.0 / (2.0 * pc.alpha * pc.b_inf);
  pc.rh_bound = 2.0 / (1.0 - pc.rho) * std::pow(pc.c_sigma, (pc.r - 1.0) / pc.r);
  pc.weak_bound = pc.ub1 * std::pow(pc.c_sigma, 1.0 / (2.0 * pc.alpha * pc.b_inf + 1.0)) * std::log(std::exp(1.0) + pc.b_inf);
  return pc;
}

}  // namespace bergman
