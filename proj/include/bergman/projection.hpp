#pragma once

#include <memory>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

// Discrete Bergman projection on a polar grid. apply() evaluates the
// quadrature sum at every node through per-ring DFTs of the angular data;
// it agrees with the direct node sum to rounding.
class Projector {
 public:
  explicit Projector(const QuadratureGrid& grid);
  ~Projector();
  Projector(const Projector&) = delete;
  Projector& operator=(const Projector&) = delete;

  const QuadratureGrid& grid() const { return *grid_; }
  GridFunction apply(const GridFunction& g) const;
  // direct node sum at an arbitrary point
  cplx at(const GridFunction& g, Point z) const;

 private:
  struct Plans;
  const QuadratureGrid* grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<int> terms_;  // number of Taylor terms needed on each ring
  int max_terms_ = 0;
};

cplx project(const GridFunction& f, const QuadratureGrid& grid, Point z);
GridFunction project_all(const GridFunction& f, const Projector& P);

GridFunction multiply(const Symbol& u, const GridFunction& f, const QuadratureGrid& grid, bool conjugate = false);
cplx toeplitz(const Symbol& u, const GridFunction& f, const QuadratureGrid& grid, Point z, bool adjoint = false);
GridFunction toeplitz_all(const Symbol& u, const GridFunction& f, const Projector& P, bool adjoint = false);

enum class BerezinRoute { kernel, invariance };
cplx berezin(const Symbol& u, Point z, BerezinRoute route, const QuadratureGrid& grid);

}  // namespace bergman
