#include "bergman/symbol.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bergman/errors.hpp"
#include "spec_parse.hpp"

namespace bergman {

namespace detail {

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, const std::string& ctx) {
  std::string t = trim(s);
  try {
    std::size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": cannot parse number '" + t + "'");
  }
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

double keyed(const std::vector<std::string>& parts, const std::string& key, double fallback, const std::string& ctx) {
  for (const auto& p : parts) {
    auto eq = p.find('=');
    if (eq == std::string::npos) continue;
    if (trim(p.substr(0, eq)) == key) return parse_number(p.substr(eq + 1), ctx);
  }
  return fallback;
}

}  // namespace detail

namespace {

constexpr double pi = std::numbers::pi;

double one_minus(double r) { return 1.0 - r * r; }

// does the open arc (a, a + len) meet the open right half-plane?
bool arc_meets_right_half(const Arc& arc) {
  if (arc.length >= 2.0 * pi) return true;
  for (int m = -1; m <= 2; ++m) {
    double lo = -pi / 2 + 2 * pi * m, hi = pi / 2 + 2 * pi * m;
    if (arc.start < hi && arc.start + arc.length > lo) return true;
  }
  return false;
}

}  // namespace

Symbol symbol_constant(double c) {
  Symbol u;
  u.name = "constant:" + detail::fmt_num(c);
  u.eval = [c](Point) { return cplx(c); };
  u.tent_sup = [c](double, const Arc&) { return std::abs(c); };
  u.boundary = u.eval;
  u.sup_norm = std::abs(c);
  return u;
}

Symbol symbol_one() {
  Symbol u = symbol_constant(1.0);
  u.name = "one";
  return u;
}

Symbol symbol_abs2() {
  Symbol u;
  u.name = "abs2";
  u.eval = [](Point z) { return cplx(std::norm(z)); };
  u.tent_sup = [](double, const Arc&) { return 1.0; };
  u.boundary = [](Point) { return cplx(1.0); };
  return u;
}

Symbol symbol_vanishing(double a) {
  if (!(a > 0.0)) throw ParameterError("vanishing symbol needs a > 0");
  Symbol u;
  u.name = "vanishing:" + detail::fmt_num(a);
  u.eval = [a](Point z) { return cplx(std::pow(std::max(0.0, 1.0 - std::norm(z)), a)); };
  u.tent_sup = [a](double r, const Arc&) { return std::pow(one_minus(r), a); };
  u.boundary = [](Point) { return cplx(0.0); };
  return u;
}

Symbol symbol_monomial(int m) {
  if (m < 0) throw ParameterError("monomial symbol needs m >= 0");
  Symbol u;
  u.name = "monomial:" + std::to_string(m);
  u.eval = [m](Point z) { return std::pow(z, m); };
  u.tent_sup = [](double, const Arc&) { return 1.0; };
  u.boundary = u.eval;
  return u;
}

Symbol symbol_halfplane() {
  Symbol u;
  u.name = "halfplane";
  u.eval = [](Point z) { return cplx(z.real() > 0.0 ? 1.0 : 0.0); };
  u.tent_sup = [](double, const Arc& arc) { return arc_meets_right_half(arc) ? 1.0 : 0.0; };
  // continuous on the circle away from +-i only; no global extension
  return u;
}

Symbol symbol_annulus(double r1, double r2) {
  if (!(0.0 <= r1 && r1 < r2 && r2 <= 1.0)) throw ParameterError("annulus symbol needs 0 <= r1 < r2 <= 1");
  Symbol u;
  u.name = "indicator:annulus(" + detail::fmt_num(r1) + "," + detail::fmt_num(r2) + ")";
  u.eval = [r1, r2](Point z) {
    double r = std::abs(z);
    return cplx(r > r1 && r < r2 ? 1.0 : 0.0);
  };
  u.tent_sup = [r2](double r, const Arc&) { return r2 > r ? 1.0 : 0.0; };
  if (r2 < 1.0) u.boundary = [](Point) { return cplx(0.0); };
  return u;
}

Symbol parse_symbol(const std::string& raw) {
  using namespace detail;
  std::string s = trim(raw);
  const std::string ctx = "symbol '" + s + "'";
  auto colon = s.find(':');
  std::string head = trim(s.substr(0, colon));
  std::string rest = colon == std::string::npos ? "" : trim(s.substr(colon + 1));
  if (head == "one" && rest.empty()) return symbol_one();
  if (head == "abs2" && rest.empty()) return symbol_abs2();
  if (head == "halfplane" && rest.empty()) return symbol_halfplane();
  if (head == "constant") return symbol_constant(parse_number(rest, ctx));
  if (head == "vanishing") return symbol_vanishing(parse_number(rest, ctx));
  if (head == "monomial") return symbol_monomial(static_cast<int>(parse_number(rest, ctx)));
  if (head == "power") {
    double b = keyed(split_top(rest), "b", std::nan(""), ctx);
    if (std::isnan(b)) throw ConfigError(ctx + ": expected power:b=<value>");
    if (b > 0.0) throw ConfigError(ctx + ": power symbols must be bounded (b <= 0)");
    if (b == 0.0) return symbol_one();
    Symbol u = symbol_vanishing(-b);
    u.name = "power:b=" + detail::fmt_num(b);
    return u;
  }
  if (head == "indicator") {
    if (rest.rfind("annulus(", 0) == 0 && rest.back() == ')') {
      auto args = split_top(rest.substr(8, rest.size() - 9));
      if (args.size() != 2) throw ConfigError(ctx + ": annulus takes two radii");
      return symbol_annulus(parse_number(args[0], ctx), parse_number(args[1], ctx));
    }
    if (rest == "halfplane") return symbol_halfplane();
  }
  throw ConfigError(ctx + ": unknown symbol family");
}

}  // namespace bergman
