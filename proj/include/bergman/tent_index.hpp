#pragma once

#include <span>
#include <vector>

#include "bergman/dyadic.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Assigns every grid node to its kube of generation <= depth in each system.
// Nodes deeper than depth fall into the depth-level tent, which then acts as
// a leaf cell.
class TentIndex {
 public:
  TentIndex(const DyadicForest& forest, const QuadratureGrid& grid, int depth);

  const DyadicForest& forest() const { return *forest_; }
  const QuadratureGrid& grid() const { return *grid_; }
  int depth() const { return depth_; }
  int systems() const { return forest_->systems_count(); }
  std::size_t kube_count() const { return (std::size_t{2} << depth_) - 1; }

  int node_kube(int l, std::size_t node) const { return node_kube_[static_cast<std::size_t>(l)][node]; }
  int locate(int l, Point z) const;
  // quadrature mass of each tent; equals the closed form since cells are aligned
  const std::vector<double>& tent_mass(int l) const { return tent_mass_[static_cast<std::size_t>(l)]; }
  // cell = the kube itself, or the whole tent for leaves at depth
  const std::vector<double>& cell_mass(int l) const { return cell_mass_[static_cast<std::size_t>(l)]; }

  // sum over K-hat of v * weight, for every kube id
  std::vector<double> tent_sums(int l, std::span<const double> v) const;
  std::vector<double> tent_max(int l, std::span<const double> v) const;
  std::vector<double> cell_max(int l, std::span<const double> v) const;
  std::vector<double> cell_min(int l, std::span<const double> v) const;
  bool tent_contains_node(int l, int kube, std::size_t node) const;
  // for each kube, how many nodes its tent holds
  std::vector<int> tent_counts(int l) const;

 private:
  const DyadicForest* forest_;
  const QuadratureGrid* grid_;
  int depth_;
  std::vector<std::vector<int>> node_kube_;
  std::vector<std::vector<double>> tent_mass_, cell_mass_;
};

}  // namespace bergman
