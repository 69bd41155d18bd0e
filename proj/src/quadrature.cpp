#include "bergman/quadrature.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

GridSpec GridSpec::refined() const {
  GridSpec s = *this;
  s.radial_per_generation *= 2;
  s.angular_density *= 2;
  return s;
}

namespace {

// 1 - tanh^2(x theta0) written through base^x
double one_minus_s(double base, double x) {
  double b = std::pow(base, x);
  return 4.0 * b / ((b + 1.0) * (b + 1.0));
}

}  // namespace

QuadratureGrid QuadratureGrid::build(const DyadicParams& params, const GridSpec& spec) {
  if (spec.G_q < 1 || spec.G_q > 14) throw ParameterError("build_grid: G_q must lie in [1, 14]");
  if (spec.radial_per_generation < 1 || spec.angular_density < 1 || spec.collar_cells < 1)
    throw ParameterError("build_grid: densities must be positive");
  if (!(spec.safety_radius > 0.0 && spec.safety_radius < 1.0))
    throw ParameterError("build_grid: safety radius must lie in (0, 1)");

  QuadratureGrid g;
  g.spec_ = spec;
  g.params_ = params;

  const int nr = spec.radial_per_generation;
  const double gauss = 0.5 / std::sqrt(3.0);
  std::size_t total = 0;
  for (int k = 0; k < spec.G_q; ++k) total += static_cast<std::size_t>(2 * nr) * 12 * spec.angular_density * (std::size_t{1} << k);
  if (spec.collar)
    total += static_cast<std::size_t>(2 * spec.collar_cells) * 12 * spec.angular_density * (std::size_t{1} << spec.G_q);
  if (total > 2'000'000) throw BudgetError("build_grid: node count above 2e6");
  // each kube of generation < G_q holds 2 nr rings of 12 a nodes
  if (2 * nr * 12 * spec.angular_density < 16) throw CoverageError("build_grid: fewer than 16 nodes per kube");

  g.nodes_.reserve(total);
  g.weights_.reserve(total);
  g.node_ring_.reserve(total);

  auto add_cell = [&](double oms_lo, double oms_hi, int count, int gen, bool collar) {
    // s-cell [1 - oms_lo, 1 - oms_hi] with oms_lo > oms_hi
    double ds = oms_lo - oms_hi;
    double mid = 1.0 - 0.5 * (oms_lo + oms_hi);
    for (double sgn : {-1.0, 1.0}) {
      double s = mid + sgn * gauss * ds;
      Ring ring;
      ring.radius = std::sqrt(s);
      ring.count = count;
      ring.node_weight = 0.5 * ds / count;
      ring.offset = g.nodes_.size();
      ring.generation = gen;
      ring.collar = collar;
      int id = static_cast<int>(g.rings_.size());
      g.rings_.push_back(ring);
      for (int i = 0; i < count; ++i) {
        double phi = 2.0 * std::numbers::pi * (i + 0.5) / count;
        g.nodes_.push_back(std::polar(ring.radius, phi));
        g.weights_.push_back(ring.node_weight);
        g.node_ring_.push_back(id);
      }
    }
  };

  for (int k = 0; k < spec.G_q; ++k) {
    int count = 12 * spec.angular_density * (1 << k);
    for (int i = 0; i < nr; ++i) {
      double x0 = k + static_cast<double>(i) / nr, x1 = k + static_cast<double>(i + 1) / nr;
      add_cell(x0 == 0.0 ? 1.0 : one_minus_s(params.base, x0), one_minus_s(params.base, x1), count, k, false);
    }
  }
  g.interior_size_ = g.nodes_.size();
  g.truncation_radius_ = params.radius(spec.G_q);
  g.covered_mass_ = 1.0 - params.one_minus_radius_sq(spec.G_q);
  if (spec.collar) {
    int count = 12 * spec.angular_density * (1 << spec.G_q);
    double top = params.one_minus_radius_sq(spec.G_q);
    for (int c = 0; c < spec.collar_cells; ++c)
      add_cell(top * (1.0 - static_cast<double>(c) / spec.collar_cells),
               top * (1.0 - static_cast<double>(c + 1) / spec.collar_cells), count, spec.G_q, true);
  }
  return g;
}

GridFunction sample(const std::function<cplx(Point)>& fn, const QuadratureGrid& grid, std::string provenance) {
  GridFunction f;
  f.provenance = std::move(provenance);
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f.values[i] = fn(grid.nodes()[i]);
  return f;
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw DomainError("pointwise_product: size mismatch");
  GridFunction r;
  r.provenance = a.provenance + "*" + b.provenance;
  r.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.values[i] = a.values[i] * b.values[i];
  return r;
}

GridFunction scaled(const GridFunction& a, double c) {
  GridFunction r = a;
  for (auto& v : r.values) v *= c;
  return r;
}

std::vector<double> abs_values(const GridFunction& f) {
  std::vector<double> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = std::abs(f.values[i]);
  return r;
}

void write_csv(std::ostream& os, const GridFunction& f) {
  os << "node,re,im\n";
  os.precision(17);
  for (std::size_t i = 0; i < f.size(); ++i) os << i << ',' << f.values[i].real() << ',' << f.values[i].imag() << '\n';
}

GridFunction read_csv(std::istream& is, const QuadratureGrid& grid) {
  GridFunction f;
  f.provenance = "csv";
  f.values.assign(grid.size(), 0.0);
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw ConfigError("grid function csv: malformed row '" + line + "'");
    std::size_t i = std::stoul(a);
    if (i >= grid.size()) throw ConfigError("grid function csv: node index out of range");
    f.values[i] = {std::stod(b), std::stod(c)};
    seen[i] = true;
  }
  for (bool s : seen)
    if (!s) throw ConfigError("grid function csv: missing nodes");
  return f;
}

cplx integrate(const GridFunction& f, const QuadratureGrid& grid, bool interior_only) {
  std::size_t n = interior_only ? grid.interior_size() : grid.size();
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f.values[i] * grid.weights()[i];
  return s;
}

}  // namespace bergman
