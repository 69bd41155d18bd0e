#include <cmath>
#include <numbers>

#include "bergman/functions.hpp"
#include "bergman/verify.hpp"
#include "spec_parse.hpp"

namespace bergman {

namespace {

// Berezin transform of (1 - |w|^2)^a at |z|^2 = x, summed from the power series of the kernel
double vanishing_series(double a, double x) {
  double sum = 0.0;
  for (int j = 0; j < 1000000; ++j) {
    double lt = 2.0 * (std::lgamma(a + j) - std::lgamma(a) - std::lgamma(j + 1.0)) + std::lgamma(j + 1.0) +
                std::lgamma(a + 1.0) - std::lgamma(j + a + 2.0);
    double t = std::exp(lt + (j > 0 ? j * std::log(x) : 0.0));
    sum += t;
    if (j > 10 && t < 1e-17 * sum) break;
  }
  return std::pow(1.0 - x, a) * sum;
}

std::vector<Point> probe_points(const std::vector<double>& radii, int angles, double phase) {
  std::vector<Point> pts;
  for (double r : radii)
    for (int i = 0; i < angles; ++i) pts.push_back(std::polar(r, phase + 2.0 * std::numbers::pi * i / angles));
  return pts;
}

nlohmann::json pt(Point z) { return {z.real(), z.imag()}; }

}  // namespace

std::vector<CheckReport> check_quadrature(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const QuadratureGrid& g = ctx.grid();
  const Projector& P = ctx.projector();
  auto pts = probe_points({0.2, 0.4, 0.6, 0.8}, 16, 0.1);

  {
    double worst = 0.0;
    int wm = 0;
    Point wz;
    for (int m = 0; m <= 6; ++m) {
      GridFunction f = fn_monomial(g, m);
      for (Point z : pts) {
        double e = std::abs(P.at(f, z) - std::pow(z, m)) / std::pow(std::abs(z), m);
        if (e > worst) worst = e, wm = m, wz = z;
      }
      // fast route at the nodes
      GridFunction Pf = P.apply(f);
      for (std::size_t i = 0; i < g.interior_size(); ++i) {
        double r = std::abs(g.nodes()[i]);
        if (r < 0.1 || r > 0.8) continue;
        double e = std::abs(Pf[i] - f[i]) / std::pow(r, m);
        if (e > worst) worst = e, wm = m, wz = g.nodes()[i];
      }
    }
    auto r = hard_check("quadrature.monomials", worst, 1e-3);
    r.witness = {{"m", wm}, {"z", pt(wz)}};
    out.push_back(r);
  }
  {
    GridFunction f = fn_conj_monomial(g, 1);
    double worst = 0.0;
    Point wz;
    for (Point z : pts) {
      double e = std::abs(P.at(f, z));
      if (e > worst) worst = e, wz = z;
    }
    auto r = hard_check("quadrature.conjugate", worst, 1e-3);
    r.witness = {{"z", pt(wz)}};
    out.push_back(r);
  }
  {
    Symbol u = symbol_abs2();
    GridFunction one = fn_one(g);
    double worst = 0.0;
    Point wz;
    for (Point z : pts) {
      double e = std::abs(toeplitz(u, one, g, z) - 0.5);
      if (e > worst) worst = e, wz = z;
    }
    auto r = hard_check("quadrature.toeplitz_abs2", worst, 1e-3);
    r.witness = {{"z", pt(wz)}};
    out.push_back(r);
  }
  {
    double worst = 0.0;
    Point wz;
    auto kp = probe_points({0.0, 0.3, 0.5, 0.7, 0.8}, 8, 0.05);
    for (Point z : kp) {
      GridFunction k = fn_kernel(g, z, 2.0);
      double s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) s += std::norm(k[i]) * g.weights()[i];
      if (std::abs(s - 1.0) > worst) worst = std::abs(s - 1.0), wz = z;
    }
    auto r = hard_check("quadrature.kernel_norm", worst, 1e-3);
    r.witness = {{"z", pt(wz)}};
    out.push_back(r);
  }
  {
    // fast DFT route against the direct node sum
    auto rng = ctx.rng("quadrature.fast_route");
    std::normal_distribution<double> N(0.0, 1.0);
    GridFunction f;
    f.values.resize(g.size());
    for (auto& v : f.values) v = cplx(N(rng), N(rng));
    GridFunction Pf = P.apply(f);
    std::uniform_int_distribution<std::size_t> pick(0, g.interior_size() - 1);
    double worst = 0.0, scale = 0.0;
    for (int s = 0; s < 40; ++s) {
      std::size_t i = pick(rng);
      cplx d = P.at(f, g.nodes()[i]);
      worst = std::max(worst, std::abs(Pf[i] - d));
      scale = std::max(scale, std::abs(d));
    }
    auto r = hard_check("quadrature.fast_route", worst / scale, 1e-10);
    r.details["samples"] = 40;
    out.push_back(r);
  }
  {
    // <T_u f, g> = <f, T_u^* g> in the discrete inner product
    auto rng = ctx.rng("quadrature.adjoint");
    std::normal_distribution<double> N(0.0, 1.0);
    GridFunction f, h;
    f.values.resize(g.size());
    h.values.resize(g.size());
    for (auto& v : f.values) v = cplx(N(rng), N(rng));
    for (auto& v : h.values) v = cplx(N(rng), N(rng));
    double worst = 0.0;
    std::string wname;
    for (const Symbol& u : {symbol_abs2(), symbol_halfplane(), symbol_monomial(2)}) {
      GridFunction Tf = toeplitz_all(u, f, P), Tsh = toeplitz_all(u, h, P, true);
      cplx a = 0.0, b = 0.0;
      double na = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        a += Tf[i] * std::conj(h[i]) * g.weights()[i];
        b += f[i] * std::conj(Tsh[i]) * g.weights()[i];
        na += std::abs(Tf[i] * h[i]) * g.weights()[i];
      }
      double e = std::abs(a - b) / na;
      if (e > worst) worst = e, wname = u.name;
    }
    auto r = hard_check("quadrature.adjoint", worst, 1e-9);
    r.witness["symbol"] = wname;
    out.push_back(r);
  }
  {
    // P(Pf) - Pf against the single-pass error P f - f, both as sups over every grid node
    double d1 = 0.0, d2 = 0.0, d1_inner = 0.0;
    for (int m = 0; m <= 4; ++m) {
      GridFunction f = fn_monomial(g, m);
      GridFunction Pf = P.apply(f);
      GridFunction PPf = P.apply(Pf);
      for (std::size_t i = 0; i < g.size(); ++i) {
        double e = std::abs(Pf[i] - f[i]);
        d1 = std::max(d1, e);
        if (std::abs(g.nodes()[i]) <= 0.8) d1_inner = std::max(d1_inner, e);
        d2 = std::max(d2, std::abs(PPf[i] - Pf[i]));
      }
    }
    auto r = hard_check("quadrature.idempotence", d2, 2.0 * d1);
    r.details["single_pass"] = d1;
    r.details["single_pass_inner"] = d1_inner;
    out.push_back(r);
  }
  return out;
}

std::vector<CheckReport> check_berezin(VerifyContext& ctx) {
  std::vector<CheckReport> out;
  const QuadratureGrid& g = ctx.grid();
  std::vector<Symbol> dict{symbol_one(), symbol_abs2(), symbol_vanishing(1.0), symbol_vanishing(0.5),
                           symbol_halfplane()};
  {
    auto pts = probe_points({0.2, 0.4, 0.6, 0.8}, 8, 0.3);
    pts.insert(pts.begin(), Point(0.0, 0.0));
    double worst = 0.0;
    std::string wu;
    Point wz;
    nlohmann::json per = nlohmann::json::object();
    for (const Symbol& u : dict) {
      double m = 0.0;
      for (Point z : pts) {
        double e = std::abs(berezin(u, z, BerezinRoute::kernel, g) - berezin(u, z, BerezinRoute::invariance, g));
        if (e > m) m = e;
        if (e > worst) worst = e, wu = u.name, wz = z;
      }
      per[u.name] = m;
    }
    auto r = hard_check("berezin.routes", worst, 5e-3);
    r.witness = {{"symbol", wu}, {"z", pt(wz)}};
    r.details["per_symbol"] = per;
    out.push_back(r);
  }
  {
    // x + (1-x)^2 (-log(1-x) - x) / x^2 at x = |z|^2 = 1/2
    const double x = 0.5;
    const double closed = x + (1.0 - x) * (1.0 - x) * (-std::log1p(-x) - x) / (x * x);
    Point z(std::sqrt(x) * std::cos(0.7), std::sqrt(x) * std::sin(0.7));
    Symbol u = symbol_abs2();
    double a = berezin(u, z, BerezinRoute::kernel, g).real();
    double b = berezin(u, z, BerezinRoute::invariance, g).real();
    auto r = hard_check("berezin.abs2_log2", std::max(std::abs(a - closed), std::abs(b - closed)), 1e-3);
    r.details = {{"kernel", a}, {"invariance", b}, {"closed_form", closed}};
    out.push_back(r);
  }
  {
    // boundary values at |z| = 0.995; the half-plane indicator only away from its jumps
    const double R = 0.995;
    double worst = 0.0;
    std::string wu;
    Point wz;
    nlohmann::json per = nlohmann::json::object();
    std::vector<Symbol> bdict{symbol_one(), symbol_abs2(), symbol_vanishing(1.0), symbol_vanishing(2.0),
                              symbol_monomial(2)};
    for (const Symbol& u : bdict) {
      double m = 0.0;
      for (int i = 0; i < 8; ++i) {
        Point z = std::polar(R, 2.0 * std::numbers::pi * (i + 0.25) / 8);
        double e = std::abs(berezin(u, z, BerezinRoute::invariance, g) - u.boundary(z / std::abs(z)));
        m = std::max(m, e);
        if (e > worst) worst = e, wu = u.name, wz = z;
      }
      per[u.name] = m;
    }
    {
      Symbol u = symbol_halfplane();
      double m = 0.0;
      for (double a : {0.0, 0.25, 0.75, 1.0, 1.25, 1.75}) {
        Point z = std::polar(R, a * std::numbers::pi);
        double expect = std::cos(a * std::numbers::pi) > 0.0 ? 1.0 : 0.0;
        double e = std::abs(berezin(u, z, BerezinRoute::invariance, g) - expect);
        m = std::max(m, e);
        if (e > worst) worst = e, wu = u.name, wz = z;
      }
      per[u.name] = m;
    }
    auto r = hard_check("berezin.boundary", worst, 0.05);
    r.witness = {{"symbol", wu}, {"z", pt(wz)}};
    r.details["per_symbol"] = per;
    out.push_back(r);
  }
  {
    // (1 - |w|^2)^a against its series near the boundary; a = 1/2 decays like (1 - |z|)^{1/2} only
    double worst = 0.0;
    nlohmann::json per = nlohmann::json::object();
    for (double a : {0.5, 1.0, 2.0}) {
      Symbol u = symbol_vanishing(a);
      double m = 0.0;
      nlohmann::json vals = nlohmann::json::object();
      for (double R : {0.5, 0.9, 0.995}) {
        Point z = std::polar(R, 0.4);
        double exact = vanishing_series(a, R * R);
        double got = berezin(u, z, BerezinRoute::invariance, g).real();
        m = std::max(m, std::abs(got - exact));
        vals["r=" + detail::fmt_num(R)] = {{"grid", got}, {"series", exact}};
      }
      worst = std::max(worst, m);
      per[u.name] = {{"error", m}, {"values", vals}};
    }
    auto r = hard_check("berezin.vanishing_series", worst, 1e-3);
    r.details["per_symbol"] = per;
    out.push_back(r);
    out.push_back(info_check("berezin.boundary_distance.u=vanishing:0.5", vanishing_series(0.5, 0.995 * 0.995)));
  }
  return out;
}

}  // namespace bergman
