#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>

#include "bergman/errors.hpp"
#include "bergman/verify.hpp"

namespace bergman {

CheckReport hard_check(std::string name, double measured, double bound, double tolerance) {
  CheckReport r;
  r.kind = CheckReport::hard;
  r.name = std::move(name);
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.pass = std::isfinite(measured) && measured <= bound * (1.0 + tolerance);
  return r;
}

CheckReport exact_check(std::string name, double value, double expected, double tol) {
  CheckReport r = hard_check(std::move(name), std::abs(value - expected), tol);
  r.details["value"] = value;
  r.details["expected"] = expected;
  return r;
}

CheckReport stability_check(std::string name, const std::vector<std::pair<std::string, double>>& values,
                            double factor) {
  CheckReport r;
  r.kind = CheckReport::stability;
  r.name = std::move(name);
  r.bound = factor;
  if (values.empty()) {
    r.measured = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    return r;
  }
  std::vector<double> v;
  nlohmann::json series = nlohmann::json::object();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    v.push_back(values[i].second);
    series[values[i].first] = values[i].second;
    if (values[i].second > values[arg].second) arg = i;
  }
  std::vector<double> s = v;
  std::sort(s.begin(), s.end());
  std::size_t n = s.size();
  double median = n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  r.measured = s.back() / median;
  r.pass = std::isfinite(r.measured) && r.measured <= factor;
  r.witness["argmax"] = values[arg].first;
  r.details["series"] = series;
  r.details["median"] = median;
  r.details["max"] = s.back();
  r.details["min"] = s.front();
  return r;
}

CheckReport info_check(std::string name, double measured) {
  CheckReport r;
  r.kind = CheckReport::info;
  r.name = std::move(name);
  r.measured = measured;
  r.pass = true;
  return r;
}

std::string kind_name(CheckReport::Kind k) {
  switch (k) {
    case CheckReport::hard: return "hard";
    case CheckReport::stability: return "stability";
    case CheckReport::info: return "info";
  }
  return "?";
}

VerifyContext::VerifyContext(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  forest_ = DyadicForest::build(cfg_.dyadic_params(), cfg_.M);
  grid_ = QuadratureGrid::build(forest_.params(), cfg_.grid);
  index_ = std::make_unique<TentIndex>(forest_, grid_, std::min(cfg_.G, cfg_.grid.G_q));
  projector_ = std::make_unique<Projector>(grid_);
}

VerifyContext::~VerifyContext() = default;

const QuadratureGrid& VerifyContext::refined_grid() {
  if (!fine_grid_) fine_grid_ = std::make_unique<QuadratureGrid>(QuadratureGrid::build(forest_.params(), cfg_.grid.refined()));
  return *fine_grid_;
}

const TentIndex& VerifyContext::refined_index() {
  if (!fine_index_) fine_index_ = std::make_unique<TentIndex>(forest_, refined_grid(), index_->depth());
  return *fine_index_;
}

const Projector& VerifyContext::refined_projector() {
  if (!fine_projector_) fine_projector_ = std::make_unique<Projector>(refined_grid());
  return *fine_projector_;
}

WeightContext VerifyContext::weight_context(bool force_grid) const {
  WeightContext w;
  w.forest = &forest_;
  w.G = cfg_.G;
  w.index = index_.get();
  w.force_grid = force_grid;
  return w;
}

std::mt19937_64 VerifyContext::rng(std::string_view salt) const {
  // FNV-1a of the salt, mixed with the seed
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : salt) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Weight> VerifyContext::power_weights() const {
  std::vector<Weight> out;
  for (double b : cfg_.b_values) out.push_back(weight_power(b));
  return out;
}

std::vector<Weight> VerifyContext::extra_weights() const {
  std::vector<Weight> out;
  for (const auto& s : cfg_.weights) out.push_back(parse_weight(s));
  return out;
}

std::vector<Symbol> VerifyContext::symbols() const {
  std::vector<Symbol> out;
  for (const auto& s : cfg_.symbols) out.push_back(parse_symbol(s));
  return out;
}

std::vector<std::string> check_groups() {
  return {"structure", "quadrature", "berezin", "weights", "lp", "weak", "compact", "stopping"};
}

std::vector<CheckReport> run_checks(VerifyContext& ctx, const std::string& group) {
  using Fn = std::function<std::vector<CheckReport>(VerifyContext&)>;
  const std::map<std::string, Fn> table{
      {"structure", check_structure}, {"quadrature", check_quadrature}, {"berezin", check_berezin},
      {"weights", check_weight_theory}, {"lp", check_sparse_and_lp}, {"weak", check_weak_type},
      {"compact", check_compactness}, {"stopping", check_stopping}};
  std::vector<std::string> names;
  if (group == "all") {
    names = check_groups();
  } else {
    if (!table.count(group)) throw NotFound("unknown check group '" + group + "'");
    names = {group};
  }
  std::vector<CheckReport> out;
  for (const auto& g : names) {
    auto t0 = std::chrono::steady_clock::now();
    auto reps = table.at(g)(ctx);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : reps) {
      r.runtime = dt / static_cast<double>(reps.size());
      out.push_back(std::move(r));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return out;
}

bool hard_checks_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.kind != CheckReport::hard || r.pass; });
}

nlohmann::json provenance(const RunConfig& cfg) {
  return {{"config_hash", cfg.hash()}, {"G", cfg.G}, {"G_q", cfg.grid.G_q}, {"version", module_version}};
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json to_json(const CheckReport& r, bool with_runtime) {
  nlohmann::json j;
  j["name"] = r.name;
  j["kind"] = kind_name(r.kind);
  j["measured"] = number(r.measured);
  if (r.kind == CheckReport::stability) {
    j["bound"] = "stability";
    j["stability_factor"] = r.bound;
  } else if (r.kind == CheckReport::info) {
    j["bound"] = nullptr;
  } else {
    j["bound"] = number(r.bound);
  }
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["witness"] = r.witness;
  j["details"] = r.details;
  if (with_runtime) j["runtime"] = r.runtime;
  return j;
}

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports, const RunConfig& cfg, bool with_runtime) {
  nlohmann::json arr = nlohmann::json::array();
  auto prov = provenance(cfg);
  for (const auto& r : reports) {
    auto j = to_json(r, with_runtime);
    j["provenance"] = prov;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports, const RunConfig& cfg) {
  auto prov = provenance(cfg);
  os << "name,kind,measured,bound,tolerance,pass,config_hash,G,G_q,version\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& r : reports) {
    os << r.name << ',' << kind_name(r.kind) << ',' << num(r.measured) << ',';
    if (r.kind == CheckReport::stability)
      os << "stability";
    else if (r.kind == CheckReport::hard)
      os << num(r.bound);
    os << ',' << num(r.tolerance) << ',' << (r.pass ? "true" : "false") << ',' << prov["config_hash"].get<std::string>()
       << ',' << cfg.G << ',' << cfg.grid.G_q << ',' << module_version << '\n';
  }
}

}  // namespace bergman
