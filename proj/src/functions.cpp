#include "bergman/functions.hpp"

#include <cmath>
#include <fstream>

#include "bergman/errors.hpp"
#include "spec_parse.hpp"

namespace bergman {

GridFunction fn_one(const QuadratureGrid& grid) {
  return sample([](Point) { return cplx(1.0); }, grid, "one");
}

GridFunction fn_monomial(const QuadratureGrid& grid, int m) {
  return sample([m](Point z) { return std::pow(z, m); }, grid, "monomial:" + std::to_string(m));
}

GridFunction fn_conj_monomial(const QuadratureGrid& grid, int m) {
  return sample([m](Point z) { return std::pow(std::conj(z), m); }, grid, "conjmonomial:" + std::to_string(m));
}

GridFunction fn_abs2(const QuadratureGrid& grid) {
  return sample([](Point z) { return cplx(std::norm(z)); }, grid, "abs2");
}

GridFunction fn_kernel(const QuadratureGrid& grid, Point w, double p) {
  return sample([w, p](Point z) { return norm_kernel(w, z, p); }, grid,
                "kernel:w=" + detail::fmt_num(w.real()) + "," + detail::fmt_num(w.imag()) + ",p=" + detail::fmt_num(p));
}

GridFunction fn_annulus(const QuadratureGrid& grid, double r1, double r2) {
  return sample(
      [r1, r2](Point z) {
        double r = std::abs(z);
        return cplx(r > r1 && r < r2 ? 1.0 : 0.0);
      },
      grid, "indicator:annulus(" + detail::fmt_num(r1) + "," + detail::fmt_num(r2) + ")");
}

GridFunction fn_tent_indicator(const QuadratureGrid& grid, const DyadicSystem& sys, int kube) {
  const Kube& K = sys.kube(kube);
  return sample([&sys, kube](Point z) { return cplx(sys.tent_contains(kube, z) ? 1.0 : 0.0); }, grid,
                "tent(" + std::to_string(sys.shift_index()) + "," + std::to_string(K.generation) + "," +
                    std::to_string(K.index) + ")");
}

GridFunction fn_kube_indicator(const QuadratureGrid& grid, const DyadicSystem& sys, int kube) {
  const Kube& K = sys.kube(kube);
  const DyadicParams& p = sys.params();
  double r_in = p.radius(K.generation), r_out = p.radius(K.generation + 1);
  return sample(
      [&K, r_in, r_out](Point z) {
        double r = std::abs(z);
        bool in = (K.generation == 0 ? true : r > r_in) && r <= r_out && K.arc.contains(std::arg(z));
        return cplx(in ? 1.0 : 0.0);
      },
      grid,
      "indicator:kube(" + std::to_string(sys.shift_index()) + "," + std::to_string(K.generation) + "," +
          std::to_string(K.index) + ")");
}

GridFunction parse_function(const std::string& raw, const QuadratureGrid& grid, const DyadicForest& forest) {
  using namespace detail;
  std::string s = trim(raw);
  const std::string ctx = "function '" + s + "'";
  auto colon = s.find(':');
  std::string head = trim(s.substr(0, colon));
  std::string rest = colon == std::string::npos ? "" : trim(s.substr(colon + 1));
  auto kube_args = [&](const std::string& body) {
    auto a = split_top(body);
    if (a.size() != 3) throw ConfigError(ctx + ": expected (system,k,j)");
    int l = static_cast<int>(parse_number(a[0], ctx)), k = static_cast<int>(parse_number(a[1], ctx));
    auto j = static_cast<std::int64_t>(parse_number(a[2], ctx));
    if (l < 0 || l >= forest.systems_count() || k < 0 || k > forest.depth() || j < 0 || j >= (std::int64_t{1} << k))
      throw ConfigError(ctx + ": kube out of range");
    return std::pair{l, kube_id(k, j)};
  };
  if (head == "one" && rest.empty()) return fn_one(grid);
  if (head == "abs2" && rest.empty()) return fn_abs2(grid);
  if (head == "monomial") return fn_monomial(grid, static_cast<int>(parse_number(rest, ctx)));
  if (head == "conjmonomial") return fn_conj_monomial(grid, static_cast<int>(parse_number(rest, ctx)));
  if (head == "kernel") {
    auto parts = split_top(rest);
    if (parts.size() < 2 || parts[0].rfind("w=", 0) != 0) throw ConfigError(ctx + ": expected kernel:w=<re>,<im>");
    Point w{parse_number(parts[0].substr(2), ctx), parse_number(parts[1], ctx)};
    double p = keyed(parts, "p", 2.0, ctx);
    if (!(std::abs(w) < 1.0)) throw ConfigError(ctx + ": kernel point must be interior");
    return fn_kernel(grid, w, p);
  }
  if (head == "indicator") {
    if (rest.rfind("annulus(", 0) == 0 && rest.back() == ')') {
      auto a = split_top(rest.substr(8, rest.size() - 9));
      if (a.size() != 2) throw ConfigError(ctx + ": annulus takes two radii");
      return fn_annulus(grid, parse_number(a[0], ctx), parse_number(a[1], ctx));
    }
    if (rest.rfind("kube(", 0) == 0 && rest.back() == ')') {
      auto [l, id] = kube_args(rest.substr(5, rest.size() - 6));
      return fn_kube_indicator(grid, forest.system(l), id);
    }
  }
  if (head.rfind("tent(", 0) == 0 && head.back() == ')' && rest.empty()) {
    auto [l, id] = kube_args(head.substr(5, head.size() - 6));
    return fn_tent_indicator(grid, forest.system(l), id);
  }
  if (head == "csv") {
    std::ifstream in(rest);
    if (!in) throw ConfigError(ctx + ": cannot open file");
    return read_csv(in, grid);
  }
  throw ConfigError(ctx + ": unknown function family");
}

}  // namespace bergman
