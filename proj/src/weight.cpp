#include "bergman/weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "spec_parse.hpp"

namespace bergman {

Weight weight_one() { return weight_power(0.0); }

Weight weight_power(double b, double scale) {
  if (!(scale > 0.0)) throw ParameterError("weight scale must be positive");
  Weight w;
  w.name = b == 0.0 && scale == 1.0 ? "one" : "power:b=" + detail::fmt_num(b);
  w.power_b = b;
  w.scale = scale;
  w.eval = [b, scale](Point z) { return scale * std::pow(1.0 - std::norm(z), -b); };
  return w;
}

Weight weight_scaled(const Weight& w, double c) {
  if (!(c > 0.0)) throw ParameterError("weight scale must be positive");
  if (w.is_power()) {
    Weight r = weight_power(*w.power_b, w.scale * c);
    r.name = w.name;
    return r;
  }
  Weight r = w;
  auto f = w.eval;
  r.eval = [f, c](Point z) { return c * f(z); };
  return r;
}

Weight weight_product(const std::vector<Weight>& factors) {
  if (factors.empty()) return weight_one();
  bool all_power = true;
  double b = 0.0, scale = 1.0;
  std::string name = "product:[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    name += (i ? "," : "") + factors[i].name;
    if (factors[i].is_power()) {
      b += *factors[i].power_b;
      scale *= factors[i].scale;
    } else {
      all_power = false;
    }
  }
  name += "]";
  if (all_power) {
    Weight w = weight_power(b, scale);
    w.name = name;
    return w;
  }
  Weight w;
  w.name = name;
  std::vector<std::function<double(Point)>> fs;
  for (const auto& f : factors) fs.push_back(f.eval);
  w.eval = [fs](Point z) {
    double v = 1.0;
    for (const auto& f : fs) v *= f(z);
    return v;
  };
  return w;
}

Weight weight_custom(std::string name, std::function<double(Point)> fn) {
  Weight w;
  w.name = std::move(name);
  w.eval = std::move(fn);
  return w;
}

namespace {

// uniform buckets over [-1, 1]^2 for nearest-sample lookup
struct NearestTable {
  static constexpr int B = 96;
  std::vector<double> x, y, v;
  std::vector<std::vector<int>> bucket = std::vector<std::vector<int>>(B * B);
  static int cell(double c) { return std::clamp(static_cast<int>((c + 1.0) * 0.5 * B), 0, B - 1); }
  double lookup(Point z) const {
    int cx = cell(z.real()), cy = cell(z.imag());
    double best = std::numeric_limits<double>::infinity(), val = 0.0;
    for (int ring = 0; ring < B; ++ring) {
      // cells at Chebyshev distance ring are at least (ring - 1) cell widths away
      double gap = (ring - 1) * 2.0 / B;
      if (ring > 1 && gap * gap > best) break;
      for (int ix = cx - ring; ix <= cx + ring; ++ix)
        for (int iy = cy - ring; iy <= cy + ring; ++iy) {
          if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
          if (ix < 0 || iy < 0 || ix >= B || iy >= B) continue;
          for (int i : bucket[static_cast<std::size_t>(ix * B + iy)]) {
            double dx = z.real() - x[static_cast<std::size_t>(i)], dy = z.imag() - y[static_cast<std::size_t>(i)];
            double d = dx * dx + dy * dy;
            if (d < best) best = d, val = v[static_cast<std::size_t>(i)];
          }
        }
    }
    return val;
  }
};

}  // namespace

Weight weight_table(std::vector<TableSample> samples, std::string name) {
  if (samples.empty()) throw ConfigError("table weight: no samples");
  auto t = std::make_shared<NearestTable>();
  for (const auto& s : samples) {
    if (!(s.value > 0.0)) throw ConfigError("table weight: values must be positive");
    if (!(s.r >= 0.0 && s.r < 1.0)) throw ConfigError("table weight: radius outside [0, 1)");
    double x = s.r * std::cos(s.theta), y = s.r * std::sin(s.theta);
    t->bucket[static_cast<std::size_t>(NearestTable::cell(x) * NearestTable::B + NearestTable::cell(y))].push_back(static_cast<int>(t->v.size()));
    t->x.push_back(x);
    t->y.push_back(y);
    t->v.push_back(s.value);
  }
  Weight w;
  w.name = std::move(name);
  w.eval = [t](Point z) { return t->lookup(z); };
  return w;
}

Weight weight_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("table weight: cannot open " + path);
  std::vector<TableSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto parts = detail::split_top(line);
    if (parts.size() != 3) throw ConfigError("table weight: expected r,theta,value rows");
    try {
      samples.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
    } catch (const std::invalid_argument&) {
      if (samples.empty()) continue;  // header
      throw ConfigError("table weight: bad row '" + line + "'");
    }
  }
  return weight_table(std::move(samples), "table:" + path);
}

Weight weight_synthetic_table() {
  std::vector<TableSample> s;
  const int nr = 24, nt = 64;
  for (int i = 0; i < nr; ++i) {
    double r = std::tanh(0.25 * std::log(2.0) * i);
    for (int j = 0; j < nt; ++j) {
      double th = 2.0 * std::numbers::pi * (j + 0.5) / nt;
      s.push_back({r, th, std::pow(1.0 - r * r, -0.3) * (1.5 + std::cos(th))});
    }
  }
  return weight_table(std::move(s), "table:synthetic");
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw ParameterError("dual_weight: p must lie in (1, inf)");
  double e = 1.0 - p / (p - 1.0);
  if (w.is_power()) {
    // (c (1-|z|^2)^{-b})^e = c^e (1-|z|^2)^{-be}
    return weight_power(*w.power_b * e, std::pow(w.scale, e));
  }
  Weight r;
  r.name = "dual(" + w.name + ")";
  auto f = w.eval;
  r.eval = [f, e](Point z) { return std::pow(f(z), e); };
  return r;
}

Weight parse_weight(const std::string& raw) {
  using namespace detail;
  std::string s = trim(raw);
  const std::string ctx = "weight '" + s + "'";
  auto colon = s.find(':');
  std::string head = trim(s.substr(0, colon));
  std::string rest = colon == std::string::npos ? "" : trim(s.substr(colon + 1));
  if (head == "one" && rest.empty()) return weight_one();
  if (head == "power") {
    auto parts = split_top(rest);
    double b = keyed(parts, "b", std::nan(""), ctx);
    if (std::isnan(b)) throw ConfigError(ctx + ": expected power:b=<value>");
    Weight w = weight_power(b, keyed(parts, "c", 1.0, ctx));
    w.name = s;
    return w;
  }
  if (head == "product") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') throw ConfigError(ctx + ": expected product:[...]");
    std::string inner = rest.substr(1, rest.size() - 2);
    // top-level commas split factors unless the next token is a key=value of the previous factor
    std::vector<std::string> factors;
    for (const auto& tok : split_top(inner)) {
      bool continuation = !factors.empty() && tok.find('=') != std::string::npos &&
                          (tok.find(':') == std::string::npos || tok.find('=') < tok.find(':'));
      if (continuation)
        factors.back() += "," + tok;
      else
        factors.push_back(tok);
    }
    std::vector<Weight> ws;
    for (const auto& f : factors) ws.push_back(parse_weight(f));
    Weight w = weight_product(ws);
    w.name = s;
    return w;
  }
  if (head == "table") {
    if (rest == "synthetic") return weight_synthetic_table();
    return weight_table_file(rest);
  }
  throw ConfigError(ctx + ": unknown weight family");
}

}  // namespace bergman
