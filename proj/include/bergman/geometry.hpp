#pragma once

#include <complex>
#include <span>

namespace bergman {

using Point = std::complex<double>;
using cplx = std::complex<double>;

struct Dimension {
  int n = 1;
  int kernel_exponent() const { return n + 1; }
};

cplx kernel(Point z, Point w, Dimension d = {});
// n >= 2 path, pairing sum_j z_j conj(w_j)
cplx pairing(std::span<const cplx> z, std::span<const cplx> w);
cplx kernel(std::span<const cplx> z, std::span<const cplx> w, Dimension d);

// (1-|z|^2)^{(n+1)/p'} / (1 - conj(z) w)^{n+1}, holomorphic in w
cplx norm_kernel(Point z, Point w, double p, Dimension d = {});

// phi_z(w) = (z - w) / (1 - conj(z) w)
Point mobius(Point z, Point w);
double beta(Point z, Point w);

bool in_carleson_tent(Point apex, Point w);
// normalized area of T_z, and the angular half-width of its shadow
double carleson_tent_measure(Point apex);
double carleson_tent_halfwidth(Point apex);

double boundary_rho(Point zeta, Point eta);

}  // namespace bergman
