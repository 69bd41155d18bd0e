#pragma once

#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/weight.hpp"

namespace bergman {

struct NormMode {
  enum Kind { strong, weak, weak_tail, strong_tail } kind = strong;
  double p = 2.0;
  double R = 0.0;

  static NormMode Strong(double p) { return {strong, p, 0.0}; }
  static NormMode Weak() { return {weak, 1.0, 0.0}; }
  static NormMode WeakTail(double R) { return {weak_tail, 1.0, R}; }
  static NormMode StrongTail(double p, double R) { return {strong_tail, p, R}; }
};

std::vector<double> sample_weight(const Weight& w, const QuadratureGrid& grid);

// All modes integrate over the interior nodes |z| <= r_{G_q}.
double norm(const std::vector<double>& absf, const std::vector<double>& sigma, const QuadratureGrid& grid,
            NormMode mode);
double norm(const GridFunction& f, const std::vector<double>& sigma, const QuadratureGrid& grid, NormMode mode);
double norm(const GridFunction& f, const Weight& w, const QuadratureGrid& grid, NormMode mode);

}  // namespace bergman
