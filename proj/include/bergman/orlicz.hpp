#pragma once

#include <span>

#include "bergman/tent_index.hpp"

namespace bergman {

// Phi(t) = kappa t^r
struct YoungFunction {
  double r = 2.0;
  double kappa = 1.0;

  static YoungFunction power(double r, double kappa = 1.0);
  double conjugate_exponent() const { return r / (r - 1.0); }
  double phi(double t) const;
  // complement Psi(s) = sup_t (s t - Phi(t))
  double psi_coefficient() const;
  double psi(double s) const;
  double psi_inverse(double y) const;
};

// Luxemburg norm of |f| against the probability measure weights / sum(weights).
// Bisection to 1e-8 relative; closed_form uses the power structure instead.
double luxemburg_norm(std::span<const double> absf, std::span<const double> weights, const YoungFunction& phi,
                      bool closed_form = false);
double orlicz_norm(std::span<const double> absf, const YoungFunction& phi, const TentIndex& index, int system,
                   int kube);

struct CphiResult {
  double c_phi = 0.0;
  double ratio_to_log = 0.0;
  int terms = 0;
};

CphiResult cphi(double r, double rho, double C);

}  // namespace bergman
