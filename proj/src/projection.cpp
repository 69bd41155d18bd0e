#include "bergman/projection.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// smallest J with (J + 1) x^J below tol once the sequence decreases
int taylor_terms(double x, double tol = 1e-16) {
  if (x <= 0.0) return 1;
  double lx = std::log(x), lt = std::log(tol);
  int j = 1;
  while (!(j > -1.0 / lx && std::log(j + 1.0) + j * lx < lt)) ++j;
  return j;
}

void check_radius(Point z, const QuadratureGrid& grid, const char* what) {
  if (std::abs(z) > grid.spec().safety_radius)
    warn(std::string(what) + ": evaluation point beyond the safety radius; quadrature accuracy not guaranteed");
}

}  // namespace

struct Projector::Plans {
  struct Entry {
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<cplx> phase;  // exp(-i pi t / N), t in [0, 2N)
  };
  std::map<int, Entry> by_size;
};

Projector::Projector(const QuadratureGrid& grid) : grid_(&grid), plans_(std::make_unique<Plans>()) {
  double rmax = 0.0;
  for (const Ring& r : grid.rings()) rmax = std::max(rmax, r.radius);
  std::lock_guard lk(planner_mutex());
  for (const Ring& r : grid.rings()) {
    terms_.push_back(taylor_terms(rmax * r.radius));
    max_terms_ = std::max(max_terms_, terms_.back());
    if (plans_->by_size.count(r.count)) continue;
    Plans::Entry e;
    std::vector<cplx> buf(static_cast<std::size_t>(r.count));
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    e.fwd = fftw_plan_dft_1d(r.count, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    e.bwd = fftw_plan_dft_1d(r.count, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    e.phase.resize(2 * static_cast<std::size_t>(r.count));
    for (int t = 0; t < 2 * r.count; ++t) e.phase[static_cast<std::size_t>(t)] = std::polar(1.0, -std::numbers::pi * t / r.count);
    plans_->by_size.emplace(r.count, std::move(e));
  }
}

Projector::~Projector() {
  std::lock_guard lk(planner_mutex());
  for (auto& [n, e] : plans_->by_size) {
    fftw_destroy_plan(e.fwd);
    fftw_destroy_plan(e.bwd);
  }
}

GridFunction Projector::apply(const GridFunction& g) const {
  const QuadratureGrid& grid = *grid_;
  if (g.size() != grid.size()) throw DomainError("project: grid function does not match grid");
  const auto& rings = grid.rings();
  // Taylor coefficients c_j = sum_w conj(w)^j g(w) weight(w)
  std::vector<cplx> c(static_cast<std::size_t>(max_terms_), 0.0);
  std::vector<cplx> buf;
  for (std::size_t q = 0; q < rings.size(); ++q) {
    const Ring& R = rings[q];
    const auto& e = plans_->by_size.at(R.count);
    buf.assign(g.values.begin() + static_cast<std::ptrdiff_t>(R.offset),
               g.values.begin() + static_cast<std::ptrdiff_t>(R.offset) + R.count);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(e.fwd, p, p);
    std::size_t N = static_cast<std::size_t>(R.count);
    double pw = R.node_weight;
    for (std::size_t j = 0; j < static_cast<std::size_t>(terms_[q]); ++j) {
      c[j] += pw * e.phase[j % (2 * N)] * buf[j % N];
      pw *= R.radius;
    }
  }
  GridFunction out;
  out.provenance = "P(" + g.provenance + ")";
  out.values.resize(grid.size());
  for (std::size_t q = 0; q < rings.size(); ++q) {
    const Ring& R = rings[q];
    const auto& e = plans_->by_size.at(R.count);
    std::size_t N = static_cast<std::size_t>(R.count);
    buf.assign(N, 0.0);
    double pw = 1.0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(terms_[q]); ++j) {
      buf[j % N] += static_cast<double>(j + 1) * pw * std::conj(e.phase[j % (2 * N)]) * c[j];
      pw *= R.radius;
    }
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(e.bwd, p, p);
    std::copy(buf.begin(), buf.end(), out.values.begin() + static_cast<std::ptrdiff_t>(R.offset));
  }
  return out;
}

cplx Projector::at(const GridFunction& g, Point z) const { return project(g, *grid_, z); }

cplx project(const GridFunction& f, const QuadratureGrid& grid, Point z) {
  if (f.size() != grid.size()) throw DomainError("project: grid function does not match grid");
  if (!(std::abs(z) < 1.0)) throw DomainError("project: evaluation point must be interior");
  check_radius(z, grid, "project");
  const auto& nodes = grid.nodes();
  const auto& w = grid.weights();
  cplx s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cplx d = 1.0 - z * std::conj(nodes[i]);
    s += f.values[i] * w[i] / (d * d);
  }
  return s;
}

GridFunction project_all(const GridFunction& f, const Projector& P) { return P.apply(f); }

GridFunction multiply(const Symbol& u, const GridFunction& f, const QuadratureGrid& grid, bool conjugate) {
  if (f.size() != grid.size()) throw DomainError("multiply: grid function does not match grid");
  GridFunction r;
  r.provenance = u.name + "*" + f.provenance;
  r.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx uv = u(grid.nodes()[i]);
    r.values[i] = (conjugate ? std::conj(uv) : uv) * f.values[i];
  }
  return r;
}

cplx toeplitz(const Symbol& u, const GridFunction& f, const QuadratureGrid& grid, Point z, bool adjoint) {
  if (adjoint) return std::conj(u(z)) * project(f, grid, z);
  return project(multiply(u, f, grid), grid, z);
}

GridFunction toeplitz_all(const Symbol& u, const GridFunction& f, const Projector& P, bool adjoint) {
  if (adjoint) {
    GridFunction pf = P.apply(f);
    GridFunction r = multiply(u, pf, P.grid(), true);
    r.provenance = "T*_" + u.name + "(" + f.provenance + ")";
    return r;
  }
  GridFunction r = P.apply(multiply(u, f, P.grid()));
  r.provenance = "T_" + u.name + "(" + f.provenance + ")";
  return r;
}

cplx berezin(const Symbol& u, Point z, BerezinRoute route, const QuadratureGrid& grid) {
  if (!(std::abs(z) < 1.0)) throw DomainError("berezin: evaluation point must be interior");
  const auto& nodes = grid.nodes();
  const auto& w = grid.weights();
  cplx s = 0.0;
  if (route == BerezinRoute::kernel) {
    check_radius(z, grid, "berezin");
    double a = 1.0 - std::norm(z);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double d = std::norm(1.0 - std::conj(z) * nodes[i]);
      s += u(nodes[i]) * (w[i] * a * a / (d * d));
    }
  } else {
    if (std::abs(z) > 0.999) warn("berezin: invariance route beyond |z| = 0.999");
    for (std::size_t i = 0; i < nodes.size(); ++i) s += u(mobius(z, nodes[i])) * w[i];
  }
  return s;
}

}  // namespace bergman
