#include "bergman/tent_index.hpp"

#include <algorithm>
#include <limits>

#include "bergman/errors.hpp"

namespace bergman {

TentIndex::TentIndex(const DyadicForest& forest, const QuadratureGrid& grid, int depth)
    : forest_(&forest), grid_(&grid), depth_(std::min(depth, forest.depth())) {
  if (depth_ < 0) throw ParameterError("tent index: negative depth");
  int M = forest.systems_count();
  node_kube_.resize(static_cast<std::size_t>(M));
  tent_mass_.resize(static_cast<std::size_t>(M));
  cell_mass_.resize(static_cast<std::size_t>(M));
  for (int l = 0; l < M; ++l) {
    auto& nk = node_kube_[static_cast<std::size_t>(l)];
    nk.resize(grid.size());
    const DyadicSystem& S = forest.system(l);
    for (std::size_t i = 0; i < grid.size(); ++i) nk[i] = S.locate_clamped(grid.nodes()[i], depth_);
    std::vector<double> ones(grid.size(), 1.0);
    tent_mass_[static_cast<std::size_t>(l)] = tent_sums(l, ones);
    auto& cm = cell_mass_[static_cast<std::size_t>(l)];
    cm.assign(kube_count(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) cm[static_cast<std::size_t>(nk[i])] += grid.weights()[i];
  }
}

int TentIndex::locate(int l, Point z) const { return forest_->system(l).locate_clamped(z, depth_); }

std::vector<double> TentIndex::tent_sums(int l, std::span<const double> v) const {
  if (v.size() != grid_->size()) throw DomainError("tent_sums: size mismatch");
  const auto& nk = node_kube_[static_cast<std::size_t>(l)];
  std::vector<double> s(kube_count(), 0.0);
  const auto& w = grid_->weights();
  for (std::size_t i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(nk[i])] += v[i] * w[i];
  for (std::size_t id = s.size() - 1; id > 0; --id) s[(id - 1) / 2] += s[id];
  return s;
}

std::vector<double> TentIndex::tent_max(int l, std::span<const double> v) const {
  std::vector<double> s = cell_max(l, v);
  for (std::size_t id = s.size() - 1; id > 0; --id) s[(id - 1) / 2] = std::max(s[(id - 1) / 2], s[id]);
  return s;
}

std::vector<double> TentIndex::cell_max(int l, std::span<const double> v) const {
  const auto& nk = node_kube_[static_cast<std::size_t>(l)];
  std::vector<double> s(kube_count(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto& t = s[static_cast<std::size_t>(nk[i])];
    t = std::max(t, v[i]);
  }
  return s;
}

std::vector<double> TentIndex::cell_min(int l, std::span<const double> v) const {
  const auto& nk = node_kube_[static_cast<std::size_t>(l)];
  std::vector<double> s(kube_count(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto& t = s[static_cast<std::size_t>(nk[i])];
    t = std::min(t, v[i]);
  }
  return s;
}

bool TentIndex::tent_contains_node(int l, int kube, std::size_t node) const {
  int id = node_kube(l, node);
  while (id > kube) id = (id - 1) / 2;
  return id == kube;
}

std::vector<int> TentIndex::tent_counts(int l) const {
  const auto& nk = node_kube_[static_cast<std::size_t>(l)];
  std::vector<int> c(kube_count(), 0);
  for (int id : nk) ++c[static_cast<std::size_t>(id)];
  for (std::size_t id = c.size() - 1; id > 0; --id) c[(id - 1) / 2] += c[id];
  return c;
}

}  // namespace bergman
