#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bergman/dyadic.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

enum class TentSupStrategy { exact, sampled, lipschitz };

struct Symbol {
  std::string name;
  std::function<cplx(Point)> eval;
  // sup of |u| over the tent {|w| > r, arg w in arc}; empty when no closed form exists
  std::function<double(double r, const Arc& arc)> tent_sup;
  // modulus-of-continuity constant used by the lipschitz strategy
  std::optional<double> lipschitz;
  // continuous extension to the circle, when one exists
  std::function<cplx(Point)> boundary;
  double sup_norm = 1.0;

  cplx operator()(Point z) const { return eval(z); }
  TentSupStrategy strategy() const {
    if (tent_sup) return TentSupStrategy::exact;
    return lipschitz ? TentSupStrategy::lipschitz : TentSupStrategy::sampled;
  }
};

Symbol symbol_constant(double c);
Symbol symbol_one();
Symbol symbol_abs2();                   // |w|^2
Symbol symbol_vanishing(double a);      // (1 - |w|^2)^a
Symbol symbol_monomial(int m);          // w^m
Symbol symbol_halfplane();              // indicator of Re w > 0
Symbol symbol_annulus(double r1, double r2);

// Mini-language: one | constant:c | abs2 | power:b=<b<=0> | monomial:m |
// indicator:annulus(r1,r2) | halfplane | vanishing:a
Symbol parse_symbol(const std::string& spec);

}  // namespace bergman
