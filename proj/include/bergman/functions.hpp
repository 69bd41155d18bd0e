#pragma once

#include <string>

#include "bergman/dyadic.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

GridFunction fn_one(const QuadratureGrid& grid);
GridFunction fn_monomial(const QuadratureGrid& grid, int m);
GridFunction fn_conj_monomial(const QuadratureGrid& grid, int m);
GridFunction fn_abs2(const QuadratureGrid& grid);
// k_w^{(p)} as a function of z
GridFunction fn_kernel(const QuadratureGrid& grid, Point w, double p = 2.0);
GridFunction fn_annulus(const QuadratureGrid& grid, double r1, double r2);
GridFunction fn_tent_indicator(const QuadratureGrid& grid, const DyadicSystem& sys, int kube);
GridFunction fn_kube_indicator(const QuadratureGrid& grid, const DyadicSystem& sys, int kube);

// one | abs2 | monomial:m | conjmonomial:m | kernel:w=<re>,<im>[,p=<p>] |
// indicator:annulus(r1,r2) | indicator:kube(l,k,j) | tent(l,k,j) | csv:<path>
GridFunction parse_function(const std::string& spec, const QuadratureGrid& grid, const DyadicForest& forest);

}  // namespace bergman
