#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bergman/dyadic.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

struct GridSpec {
  int G_q = 10;
  // beta-uniform cells per dyadic generation; each cell carries 2 Gauss rings
  int radial_per_generation = 2;
  // angular count in generation k is 12 * angular_density * 2^k
  int angular_density = 1;
  double safety_radius = 0.9;
  bool collar = true;
  int collar_cells = 1;

  GridSpec refined() const;
};

struct Ring {
  double radius = 0.0;
  double node_weight = 0.0;
  std::size_t offset = 0;
  int count = 0;
  int generation = 0;  // dyadic generation of the ring radius; G_q for the collar
  bool collar = false;
};

class QuadratureGrid {
 public:
  static QuadratureGrid build(const DyadicParams& params, const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const DyadicParams& params() const { return params_; }
  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Ring>& rings() const { return rings_; }
  std::size_t size() const { return nodes_.size(); }
  // nodes [0, interior_size) cover |z| <= r_{G_q}; the collar follows
  std::size_t interior_size() const { return interior_size_; }
  double truncation_radius() const { return truncation_radius_; }
  double covered_mass() const { return covered_mass_; }
  int ring_of(std::size_t node) const { return node_ring_[node]; }

 private:
  GridSpec spec_;
  DyadicParams params_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  std::vector<Ring> rings_;
  std::vector<int> node_ring_;
  std::size_t interior_size_ = 0;
  double truncation_radius_ = 0.0;
  double covered_mass_ = 0.0;
};

struct GridFunction {
  std::vector<cplx> values;
  std::string provenance;

  std::size_t size() const { return values.size(); }
  cplx operator[](std::size_t i) const { return values[i]; }
};

GridFunction sample(const std::function<cplx(Point)>& fn, const QuadratureGrid& grid, std::string provenance = "custom");
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);
GridFunction scaled(const GridFunction& a, double c);
std::vector<double> abs_values(const GridFunction& f);

void write_csv(std::ostream& os, const GridFunction& f);
GridFunction read_csv(std::istream& is, const QuadratureGrid& grid);

// integral of f over the grid region; interior_only drops the collar
cplx integrate(const GridFunction& f, const QuadratureGrid& grid, bool interior_only = false);

}  // namespace bergman
