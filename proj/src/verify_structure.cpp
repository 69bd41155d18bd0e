#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/verify.hpp"

namespace bergman {

namespace {

double wrap(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

// uniform point of the Carleson tent at z by rejection from its bounding box
Point tent_sample(Point z, std::mt19937_64& rng) {
  double h = 1.0 - std::abs(z);
  Point zeta = z / std::abs(z);
  std::uniform_real_distribution<double> U(-h, h);
  for (;;) {
    Point w = zeta + Point(U(rng), U(rng));
    if (std::abs(w) < 1.0 && in_carleson_tent(z, w)) return w;
  }
}

}  // namespace

std::vector<CheckReport> check_structure(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const DyadicForest& F = ctx.forest();
  const DyadicParams& P = F.params();
  const int G = ctx.G();
  const double t0 = P.theta0();

  // radii and tent measures against the hyperbolic closed forms
  {
    double err_r = 0.0, err_t = 0.0;
    int wr = 0, wt = 0;
    for (int k = 0; k <= G + 1; ++k) {
      double r = std::tanh(k * t0);
      double one = 1.0 - r * r;
      if (P.base == 2.0) {
        double q = std::ldexp(1.0, k);
        r = (q - 1.0) / (q + 1.0);
        one = 4.0 * q / ((q + 1.0) * (q + 1.0));
      }
      double tm = one / std::ldexp(1.0, k);
      double er = std::abs(P.radius(k) - r);
      double et = std::abs(tent_measure(P, k) - tm) / tm;
      if (er > err_r) err_r = er, wr = k;
      if (et > err_t) err_t = et, wt = k;
    }
    auto a = hard_check("structure.radii", err_r, 1e-12);
    a.witness["generation"] = wr;
    out.push_back(a);
    auto b = hard_check("structure.tent_measure", err_t, 1e-12);
    b.witness["generation"] = wt;
    b.details["relative"] = true;
    out.push_back(b);
  }

  StructureConstants sc = structure_constants(F, G);
  {
    double rho = 1.0 / std::pow(std::cosh(t0), 2.0);
    auto r = exact_check("structure.rho", sc.rho, rho, 1e-12);
    r.witness["kube"] = kube_id(sc.rho_generation, 0);
    r.witness["generation"] = sc.rho_generation;
    out.push_back(r);
  }
  {
    // parent/child tent ratio peaks at the deepest parent
    int k = sc.alpha_generation;
    double closed = tent_measure(P, k) / tent_measure(P, k + 1);
    if (P.base == 2.0) {
      double q = std::ldexp(1.0, G);
      closed = std::pow((2.0 * q + 1.0) / (q + 1.0), 2.0);
    }
    auto a = exact_check("structure.alpha", sc.alpha, closed, 1e-12);
    a.witness["parent_generation"] = k;
    out.push_back(a);
    auto b = hard_check("structure.alpha_bound", sc.alpha, P.base * P.base);
    b.witness["parent_generation"] = k;
    out.push_back(b);
  }
  {
    // |K| >= (1 - rho)|K-hat| over all generations
    auto r = hard_check("structure.sparse_condition", (1.0 - sc.rho) / sc.kube_tent_min, 1.0, 1e-12);
    r.details["kube_tent_min"] = sc.kube_tent_min;
    r.details["kube_tent_max"] = sc.kube_tent_max;
    out.push_back(r);
    auto c = hard_check("structure.comparability", sc.comparability_max / sc.comparability_min, 4.0);
    c.details["min"] = sc.comparability_min;
    c.details["max"] = sc.comparability_max;
    out.push_back(c);
  }

  // grid tent masses are the closed forms
  {
    const TentIndex& I = ctx.index();
    double err = 0.0;
    int wid = 0, wl = 0;
    for (int l = 0; l < I.systems(); ++l) {
      const auto& m = I.tent_mass(l);
      for (std::size_t id = 0; id < m.size(); ++id) {
        double e = tent_measure(P, kube_generation(static_cast<int>(id)));
        double d = std::abs(m[id] - e) / e;
        if (d > err) err = d, wid = static_cast<int>(id), wl = l;
      }
    }
    auto r = hard_check("structure.grid_tent_mass", err, 1e-10);
    r.witness = {{"system", wl}, {"kube", wid}};
    out.push_back(r);
  }

  // tent approximation on random apexes, plus apexes sitting on arc cuts
  {
    auto rng = ctx.rng("structure.tent_approx");
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double rmax = P.radius(std::min(10, G));
    std::vector<Point> apexes;
    for (int i = 0; i < 200; ++i) {
      double r = rmax * std::sqrt(U(rng));
      apexes.push_back(std::polar(std::max(r, 1e-3), 2.0 * std::numbers::pi * U(rng)));
    }
    for (int k = 1; k <= 6; ++k) {
      double cut = F.system(0).kube(kube_id(k, 0)).arc.start;
      apexes.push_back(std::polar(P.radius(k) + 0.5 * (P.radius(k + 1) - P.radius(k)), cut));
    }
    double worst = 0.0;
    int failures = 0, escapes = 0;
    Point wz;
    for (Point z : apexes) {
      try {
        TentApproximation t = approx_tent(z, F);
        if (t.ratio > worst) worst = t.ratio, wz = z;
        const DyadicSystem& S = F.system(t.system);
        for (int s = 0; s < 50; ++s)
          if (!S.tent_contains(t.kube, tent_sample(z, rng))) ++escapes;
      } catch (const NotFound&) {
        ++failures;
      }
    }
    auto r = hard_check("structure.tent_approx", worst, 64.0);
    r.pass = r.pass && failures == 0 && escapes == 0;
    r.witness = {{"apex", {wz.real(), wz.imag()}}};
    r.details = {{"apexes", apexes.size()}, {"failures", failures}, {"escaped_samples", escapes}};
    out.push_back(r);
  }

  // every point lies in exactly one kube per system
  {
    auto rng = ctx.rng("structure.partition");
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double rmax = P.radius(G + 1);
    int bad = 0;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
      Point z = std::polar(rmax * std::sqrt(U(rng)), 2.0 * std::numbers::pi * U(rng));
      double r = std::abs(z), th = wrap(std::arg(z));
      for (int l = 0; l < F.systems_count(); ++l) {
        const DyadicSystem& S = F.system(l);
        int id = S.locate(z);
        const Kube& K = S.kube(id);
        bool radial = r >= P.radius(K.generation) && r < P.radius(K.generation + 1);
        int hits = 0;
        for (std::int64_t j = 0; j < (std::int64_t{1} << K.generation); ++j)
          if (S.kube(kube_id(K.generation, j)).arc.contains(th)) ++hits;
        if (!radial || hits != 1 || !K.arc.contains(th)) ++bad;
      }
    }
    auto r = hard_check("structure.partition", bad, 0.0);
    r.details["points"] = N;
    out.push_back(r);
  }
  return out;
}

}  // namespace bergman
