#include "bergman/dyadic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

}  // namespace

DyadicParams DyadicParams::from_theta0(double theta0, int G) {
  DyadicParams p;
  p.base = std::exp(2.0 * theta0);
  p.max_generation = G;
  p.validate();
  return p;
}

double DyadicParams::theta0() const { return 0.5 * std::log(base); }

double DyadicParams::radius(int k) const {
  double bk = std::pow(base, k);
  return (bk - 1.0) / (bk + 1.0);
}

double DyadicParams::one_minus_radius_sq(int k) const {
  double bk = std::pow(base, k);
  return 4.0 * bk / ((bk + 1.0) * (bk + 1.0));
}

double DyadicParams::center_radius(int k) const {
  double b = std::pow(base, k + 0.5);
  return (b - 1.0) / (b + 1.0);
}

void DyadicParams::validate() const {
  if (!(base > 1.0) || !std::isfinite(base)) throw ParameterError("dyadic: theta0 must be positive");
  if (max_generation < 1) throw ParameterError("dyadic: G must be at least 1");
  if (max_generation > 24) throw BudgetError("dyadic: G above 24 is not supported");
  if (dim.n < 1) throw ParameterError("dyadic: n must be positive");
}

bool Arc::contains(double angle) const {
  if (length >= two_pi) return true;
  return wrap(angle - start) < length;
}

bool Arc::covers(double lo, double hi) const {
  if (length >= two_pi) return true;
  if (hi - lo >= length) return false;
  double d = wrap(lo - start);
  return d + (hi - lo) <= length;
}

double tent_measure(const DyadicParams& p, int k) { return p.one_minus_radius_sq(k) / std::ldexp(1.0, k); }

double kube_measure(const DyadicParams& p, int k) { return tent_measure(p, k) - 2.0 * tent_measure(p, k + 1); }

DyadicSystem::DyadicSystem(const DyadicParams& params, int shift_index, double shift)
    : params_(params), shift_index_(shift_index), shift_(wrap(shift)) {
  int G = params_.max_generation;
  std::size_t total = (std::size_t{1} << (G + 1)) - 1;
  kubes_.resize(total);
  for (int k = 0; k <= G; ++k) {
    std::int64_t J = std::int64_t{1} << k;
    double len = two_pi / static_cast<double>(J);
    double cr = params_.center_radius(k);
    for (std::int64_t j = 0; j < J; ++j) {
      Kube& K = kubes_[static_cast<std::size_t>(kube_id(k, j))];
      K.generation = k;
      K.index = j;
      K.arc = {k == 0 ? 0.0 : wrap(shift_ + len * static_cast<double>(j)), len};
      // center sits on the bisector of the arc
      K.center = k == 0 ? Point(cr, 0.0) : std::polar(cr, K.arc.start + 0.5 * len);
      if (k > 0) K.parent = kube_id(k - 1, j / 2);
      if (k < G) K.children = {kube_id(k + 1, 2 * j), kube_id(k + 1, 2 * j + 1)};
    }
  }
}

int DyadicSystem::generation_of_radius(double r) const {
  if (r <= params_.radius(1)) return 0;
  int k = static_cast<int>(std::ceil(std::atanh(r) / params_.theta0())) - 1;
  k = std::max(k, 0);
  while (k > 0 && r <= params_.radius(k)) --k;
  while (r > params_.radius(k + 1)) ++k;
  return k;
}

std::int64_t DyadicSystem::arc_index(int k, double angle) const {
  if (k == 0) return 0;
  std::int64_t J = std::int64_t{1} << k;
  double len = two_pi / static_cast<double>(J);
  auto j = static_cast<std::int64_t>(std::floor(wrap(angle - shift_) / len));
  if (j >= J) j = J - 1;
  return j;
}

int DyadicSystem::locate(Point z) const {
  double r = std::abs(z);
  if (!(r < 1.0)) throw DomainError("locate: point not interior");
  int k = generation_of_radius(r);
  if (k > params_.max_generation) throw OutOfTruncation("locate: point deeper than generation G");
  return kube_id(k, arc_index(k, std::arg(z)));
}

int DyadicSystem::locate_clamped(Point z, int max_gen) const {
  double r = std::abs(z);
  if (!(r < 1.0)) throw DomainError("locate: point not interior");
  int k = std::min({generation_of_radius(r), max_gen, params_.max_generation});
  return kube_id(k, arc_index(k, std::arg(z)));
}

TentGeometry DyadicSystem::tent_geometry(int id) const {
  const Kube& K = kube(id);
  return {tent_measure(params_, K.generation), kube_measure(params_, K.generation), params_.radius(K.generation),
          K.arc};
}

bool DyadicSystem::tent_contains(int id, Point w) const {
  const Kube& K = kube(id);
  if (K.generation == 0) return true;
  return std::abs(w) > params_.radius(K.generation) && K.arc.contains(std::arg(w));
}

DyadicForest DyadicForest::build(const DyadicParams& params, int M) {
  params.validate();
  if (params.dim.n != 1) throw UnsupportedDimension("build_forest: only n = 1 has a dyadic backend");
  if (M < 1) throw ParameterError("build_forest: M must be at least 1");
  DyadicForest f;
  f.params_ = params;
  for (int l = 0; l < M; ++l) f.systems_.emplace_back(params, l, l * std::numbers::pi / 3.0);
  return f;
}

StructureConstants structure_constants(const DyadicForest& forest, int G) {
  const DyadicParams& p = forest.params();
  StructureConstants sc;
  sc.G = G;
  sc.kube_tent_min = sc.comparability_min = std::numeric_limits<double>::infinity();
  sc.kube_tent_max = sc.comparability_max = 0.0;
  for (int k = 0; k <= G; ++k) {
    double T = tent_measure(p, k), Tc = tent_measure(p, k + 1);
    double kt = (T - 2.0 * Tc) / T;
    if (1.0 - kt > sc.rho) sc.rho = 1.0 - kt, sc.rho_generation = k;
    if (T / Tc > sc.alpha) sc.alpha = T / Tc, sc.alpha_generation = k;
    sc.kube_tent_min = std::min(sc.kube_tent_min, kt);
    sc.kube_tent_max = std::max(sc.kube_tent_max, kt);
    double c = p.center_radius(k);
    double comp = T / std::pow(1.0 - c * c, p.dim.kernel_exponent());
    sc.comparability_min = std::min(sc.comparability_min, comp);
    sc.comparability_max = std::max(sc.comparability_max, comp);
  }
  return sc;
}

TentApproximation approx_tent(Point z, const DyadicForest& forest) {
  double r = std::abs(z);
  if (!(r < 1.0)) throw NotFound("approx_tent: apex must be interior");
  if (r == 0.0) return {0, 0, 0, 1.0};
  double theta = std::arg(z);
  double hw = carleson_tent_halfwidth(z);
  double tz = carleson_tent_measure(z);
  const DyadicParams& p = forest.params();
  TentApproximation best{-1, -1, -1, std::numeric_limits<double>::infinity()};
  for (int l = 0; l < forest.systems_count(); ++l) {
    const DyadicSystem& S = forest.system(l);
    int kmax = std::min(S.generation_of_radius(r), p.max_generation);
    if (r == p.radius(kmax + 1)) kmax = std::min(kmax + 1, p.max_generation);
    for (int k = kmax; k >= 0; --k) {
      int id = kube_id(k, S.arc_index(k, theta));
      if (!S.kube(id).arc.covers(theta - hw, theta + hw)) continue;
      double ratio = tent_measure(p, k) / tz;
      if (ratio < best.ratio) best = {l, id, k, ratio};
      break;
    }
  }
  if (best.system < 0) throw NotFound("approx_tent: no covering tent up to generation G");
  return best;
}

nlohmann::json to_json(const DyadicForest& forest) {
  const DyadicParams& p = forest.params();
  nlohmann::json j;
  j["params"] = {{"n", p.dim.n},
                 {"theta0", p.theta0()},
                 {"base", p.base},
                 {"caliber", p.caliber()},
                 {"G", p.max_generation}};
  nlohmann::json systems = nlohmann::json::array();
  for (int l = 0; l < forest.systems_count(); ++l) {
    const DyadicSystem& S = forest.system(l);
    nlohmann::json kubes = nlohmann::json::array();
    for (std::size_t id = 0; id < S.size(); ++id) {
      const Kube& K = S.kube(static_cast<int>(id));
      kubes.push_back({{"id", id},
                       {"k", K.generation},
                       {"j", K.index},
                       {"arc", {K.arc.start, K.arc.end()}},
                       {"parent", K.parent},
                       {"children", K.children}});
    }
    systems.push_back({{"shift_index", S.shift_index()}, {"shift", S.shift()}, {"kubes", std::move(kubes)}});
  }
  j["systems"] = std::move(systems);
  return j;
}

nlohmann::json to_json(const StructureConstants& sc) {
  return {{"G", sc.G},
          {"rho", sc.rho},
          {"rho_generation", sc.rho_generation},
          {"alpha", sc.alpha},
          {"alpha_generation", sc.alpha_generation},
          {"kube_tent_ratio", {{"min", sc.kube_tent_min}, {"max", sc.kube_tent_max}}},
          {"tent_vs_center", {{"min", sc.comparability_min}, {"max", sc.comparability_max}}}};
}

DyadicForest forest_from_json(const nlohmann::json& j) {
  try {
    DyadicParams p;
    p.base = j.at("params").at("base").get<double>();
    p.max_generation = j.at("params").at("G").get<int>();
    p.dim.n = j.at("params").at("n").get<int>();
    int M = static_cast<int>(j.at("systems").size());
    DyadicForest f = DyadicForest::build(p, M);
    for (int l = 0; l < M; ++l) {
      double s = j.at("systems")[static_cast<std::size_t>(l)].at("shift").get<double>();
      if (std::abs(s - f.system(l).shift()) > 1e-12) throw ConfigError("forest json: unexpected system shift");
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("forest json: ") + e.what());
  }
}

}  // namespace bergman
