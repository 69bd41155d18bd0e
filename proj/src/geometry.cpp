#include "bergman/geometry.hpp"

#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

void require_closed_disk(Point z, const char* what) {
  if (!(std::abs(z) <= 1.0)) throw DomainError(std::string(what) + ": point outside the closed unit disk");
}

cplx kernel_from_pairing(cplx zw, Dimension d) {
  cplx den = 1.0 - zw;
  if (std::abs(den) == 0.0) throw DomainError("kernel: pole at z conj(w) = 1");
  return std::pow(den, -d.kernel_exponent());
}

}  // namespace

cplx kernel(Point z, Point w, Dimension d) {
  require_closed_disk(z, "kernel");
  require_closed_disk(w, "kernel");
  return kernel_from_pairing(z * std::conj(w), d);
}

cplx pairing(std::span<const cplx> z, std::span<const cplx> w) {
  if (z.size() != w.size()) throw DomainError("pairing: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

cplx kernel(std::span<const cplx> z, std::span<const cplx> w, Dimension d) {
  if (static_cast<int>(z.size()) != d.n) throw DomainError("kernel: point has wrong dimension");
  double nz = std::real(pairing(z, z)), nw = std::real(pairing(w, w));
  if (!(nz <= 1.0) || !(nw <= 1.0)) throw DomainError("kernel: point outside the closed unit ball");
  return kernel_from_pairing(pairing(z, w), d);
}

cplx norm_kernel(Point z, Point w, double p, Dimension d) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("norm_kernel: p must lie in (1, inf)");
  require_closed_disk(z, "norm_kernel");
  require_closed_disk(w, "norm_kernel");
  double pp = p / (p - 1.0);
  double scale = std::pow(1.0 - std::norm(z), d.kernel_exponent() / pp);
  return scale * kernel_from_pairing(std::conj(z) * w, d);
}

Point mobius(Point z, Point w) {
  cplx den = 1.0 - std::conj(z) * w;
  if (std::abs(den) == 0.0) throw DomainError("mobius: singular denominator");
  return (z - w) / den;
}

double beta(Point z, Point w) {
  double a = std::abs(mobius(z, w));
  if (a >= 1.0) throw DomainError("beta: points must be interior");
  return std::atanh(a);
}

bool in_carleson_tent(Point apex, Point w) {
  double r = std::abs(apex);
  if (r == 0.0) return true;
  Point zeta = apex / r;
  return std::abs(1.0 - std::conj(w) * zeta) < 1.0 - r;
}

double carleson_tent_measure(Point apex) {
  double r = std::abs(apex);
  if (r == 0.0) return 1.0;
  double h = 1.0 - r;
  double area = h * h * std::acos(h / 2.0) + std::acos(1.0 - h * h / 2.0) - 0.5 * h * std::sqrt(4.0 - h * h);
  return area / std::numbers::pi;
}

double carleson_tent_halfwidth(Point apex) {
  double r = std::abs(apex);
  if (r == 0.0) return std::numbers::pi;
  return std::asin(1.0 - r);
}

double boundary_rho(Point zeta, Point eta) { return std::abs(1.0 - zeta * std::conj(eta)); }

}  // namespace bergman
