#pragma once

#include <vector>

#include "bergman/orlicz.hpp"
#include "bergman/symbol.hpp"
#include "bergman/tent_index.hpp"

namespace bergman {

// ||u||_{L^inf(K-hat)} for every kube of one system, using the symbol's
// tent-sup strategy.
std::vector<double> symbol_tent_sup(const Symbol& u, const TentIndex& index, int system);

// S_u f at every grid node and at an arbitrary point
std::vector<double> sparse_apply_all(const Symbol& u, const std::vector<double>& absf, const TentIndex& index);
double sparse_apply(const Symbol& u, const std::vector<double>& absf, const TentIndex& index, Point z);

struct MaximalSpec {
  enum Kind { global, localized, symbol, weighted, symbol_orlicz, symbol_power } kind = global;
  const Symbol* u = nullptr;
  const std::vector<double>* sigma = nullptr;  // node values, weighted kind
  YoungFunction phi{};
  double r = 2.0;
  int system = 0;  // localized kind
  int kube = 0;
};

std::vector<double> maximal_all(const MaximalSpec& spec, const std::vector<double>& absf, const TentIndex& index);
double maximal(const MaximalSpec& spec, const std::vector<double>& absf, const TentIndex& index, Point z);

}  // namespace bergman
