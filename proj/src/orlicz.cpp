#include "bergman/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

YoungFunction YoungFunction::power(double r, double kappa) {
  if (!(r > 1.0) || std::isinf(r)) throw ParameterError("Young function: exponent must exceed 1");
  if (!(kappa > 0.0)) throw ParameterError("Young function: coefficient must be positive");
  return {r, kappa};
}

double YoungFunction::phi(double t) const { return kappa * std::pow(t, r); }

double YoungFunction::psi_coefficient() const { return (1.0 - 1.0 / r) * std::pow(kappa * r, -1.0 / (r - 1.0)); }

double YoungFunction::psi(double s) const { return psi_coefficient() * std::pow(s, conjugate_exponent()); }

double YoungFunction::psi_inverse(double y) const {
  return std::pow(y / psi_coefficient(), 1.0 / conjugate_exponent());
}

double luxemburg_norm(std::span<const double> absf, std::span<const double> weights, const YoungFunction& phi,
                      bool closed_form) {
  if (absf.size() != weights.size()) throw DomainError("luxemburg_norm: size mismatch");
  double mass = 0.0, fmax = 0.0;
  for (std::size_t i = 0; i < absf.size(); ++i) {
    mass += weights[i];
    fmax = std::max(fmax, absf[i]);
  }
  if (fmax == 0.0 || mass == 0.0) return 0.0;
  if (closed_form) {
    double s = 0.0;
    for (std::size_t i = 0; i < absf.size(); ++i) s += std::pow(absf[i] / fmax, phi.r) * weights[i];
    return fmax * std::pow(phi.kappa * s / mass, 1.0 / phi.r);
  }
  auto avg = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < absf.size(); ++i) s += phi.phi(absf[i] / lambda) * weights[i];
    return s / mass;
  };
  double lo = fmax, hi = fmax;
  while (avg(lo) < 1.0) lo *= 0.5;
  while (avg(hi) > 1.0) hi *= 2.0;
  while (hi - lo > 1e-8 * hi) {
    double mid = 0.5 * (lo + hi);
    (avg(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double orlicz_norm(std::span<const double> absf, const YoungFunction& phi, const TentIndex& index, int system,
                   int kube) {
  std::vector<double> v, w;
  const auto& gw = index.grid().weights();
  for (std::size_t i = 0; i < absf.size(); ++i) {
    if (!index.tent_contains_node(system, kube, i)) continue;
    v.push_back(absf[i]);
    w.push_back(gw[i]);
  }
  if (v.size() < 16) throw CoverageError("orlicz_norm: tent holds fewer than 16 nodes");
  return luxemburg_norm(v, w, phi);
}

CphiResult cphi(double r, double rho, double C) {
  if (!(r > 1.0)) throw ParameterError("cphi: r must exceed 1");
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("cphi: rho must lie in (0, 1)");
  if (!(C > 1.0)) throw ParameterError("cphi: C must exceed 1");
  if (C * rho >= 1.0) throw ParameterError("cphi: C rho must be below 1");
  double rp = r / (r - 1.0);
  double lr = std::log(rho);
  auto term = [&](int k) { return std::exp(std::pow(C, k) * lr / rp); };
  CphiResult out;
  double sum = 1.0;
  for (int k = 1;; ++k) {
    sum += term(k);
    ++out.terms;
    // terms shrink super-geometrically; bound the tail by a geometric series
    double next = term(k + 1);
    double q = std::exp(std::pow(C, k + 1) * (C - 1.0) * lr / rp);
    if (q < 1.0 && next / (1.0 - q) < 1e-12) break;
    if (k > 100000) throw ParameterError("cphi: series did not converge");
  }
  out.c_phi = sum;
  out.ratio_to_log = sum / (1.0 + std::log(rp));
  return out;
}

}  // namespace bergman
