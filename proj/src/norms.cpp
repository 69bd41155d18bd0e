#include "bergman/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bergman/errors.hpp"

namespace bergman {

std::vector<double> sample_weight(const Weight& w, const QuadratureGrid& grid) {
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = w(grid.nodes()[i]);
  return s;
}

double norm(const std::vector<double>& absf, const std::vector<double>& sigma, const QuadratureGrid& grid,
            NormMode mode) {
  if (absf.size() != grid.size() || sigma.size() != grid.size()) throw DomainError("norm: size mismatch");
  const std::size_t n = grid.interior_size();
  const auto& w = grid.weights();
  const auto& nodes = grid.nodes();
  bool tail = mode.kind == NormMode::weak_tail || mode.kind == NormMode::strong_tail;
  auto keep = [&](std::size_t i) { return !tail || std::abs(nodes[i]) > mode.R; };

  if (mode.kind == NormMode::strong || mode.kind == NormMode::strong_tail) {
    if (!(mode.p >= 1.0)) throw ParameterError("norm: p must be at least 1");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (keep(i)) s += std::pow(absf[i], mode.p) * sigma[i] * w[i];
    return std::pow(s, 1.0 / mode.p);
  }
  // weak: sup over lambda of lambda sigma(|f| > lambda); on a discrete measure the
  // sup is attained as lambda rises to a sampled value v, giving v sigma(|f| >= v)
  std::vector<std::size_t> idx;
  idx.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (keep(i) && absf[i] > 0.0) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return absf[a] > absf[b]; });
  double best = 0.0, cum = 0.0;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    cum += sigma[idx[t]] * w[idx[t]];
    if (t + 1 < idx.size() && absf[idx[t + 1]] == absf[idx[t]]) continue;
    best = std::max(best, absf[idx[t]] * cum);
  }
  return best;
}

double norm(const GridFunction& f, const std::vector<double>& sigma, const QuadratureGrid& grid, NormMode mode) {
  return norm(abs_values(f), sigma, grid, mode);
}

double norm(const GridFunction& f, const Weight& w, const QuadratureGrid& grid, NormMode mode) {
  return norm(abs_values(f), sample_weight(w, grid), grid, mode);
}

}  // namespace bergman
