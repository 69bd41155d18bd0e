#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bergman/characteristics.hpp"
#include "bergman/config.hpp"
#include "bergman/dyadic.hpp"
#include "bergman/projection.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"
#include "bergman/tent_index.hpp"
#include "bergman/weight.hpp"

namespace bergman {

struct CheckReport {
  // hard: exact constant, pass = measured <= bound * (1 + tolerance)
  // stability: measured = max / median over a sweep, bound = allowed factor
  // info: recorded only, always passes
  enum Kind { hard, stability, info } kind = hard;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  double runtime = 0.0;  // seconds
};

CheckReport hard_check(std::string name, double measured, double bound, double tolerance = 0.0);
// |value - expected| <= tol
CheckReport exact_check(std::string name, double value, double expected, double tol);
// max / median of the labelled values <= factor
CheckReport stability_check(std::string name, const std::vector<std::pair<std::string, double>>& values,
                            double factor = 3.0);
CheckReport info_check(std::string name, double measured);

std::string kind_name(CheckReport::Kind k);

class VerifyContext {
 public:
  explicit VerifyContext(RunConfig cfg);
  ~VerifyContext();

  const RunConfig& config() const { return cfg_; }
  const DyadicForest& forest() const { return forest_; }
  int G() const { return cfg_.G; }
  const QuadratureGrid& grid() const { return grid_; }
  const TentIndex& index() const { return *index_; }
  const Projector& projector() const { return *projector_; }

  // one refinement step of the grid, built on first use
  const QuadratureGrid& refined_grid();
  const TentIndex& refined_index();
  const Projector& refined_projector();

  WeightContext weight_context(bool force_grid = false) const;
  // independent deterministic stream per check
  std::mt19937_64 rng(std::string_view salt) const;

  std::vector<Weight> power_weights() const;  // sigma_b over the b sweep
  std::vector<Weight> extra_weights() const;  // the configured weight specs
  std::vector<Symbol> symbols() const;

 private:
  RunConfig cfg_;
  DyadicForest forest_;
  QuadratureGrid grid_;
  std::unique_ptr<TentIndex> index_;
  std::unique_ptr<Projector> projector_;
  std::unique_ptr<QuadratureGrid> fine_grid_;
  std::unique_ptr<TentIndex> fine_index_;
  std::unique_ptr<Projector> fine_projector_;
};

std::vector<CheckReport> check_structure(VerifyContext& ctx);
std::vector<CheckReport> check_quadrature(VerifyContext& ctx);
std::vector<CheckReport> check_berezin(VerifyContext& ctx);
std::vector<CheckReport> check_weight_theory(VerifyContext& ctx);
std::vector<CheckReport> check_sparse_and_lp(VerifyContext& ctx);
std::vector<CheckReport> check_weak_type(VerifyContext& ctx);
std::vector<CheckReport> check_compactness(VerifyContext& ctx);
std::vector<CheckReport> check_stopping(VerifyContext& ctx);

// group names accepted by run_checks besides "all"
std::vector<std::string> check_groups();
// runs one group (or "all"), stamps runtimes, sorts by name
std::vector<CheckReport> run_checks(VerifyContext& ctx, const std::string& group);
bool hard_checks_pass(const std::vector<CheckReport>& reports);

nlohmann::json provenance(const RunConfig& cfg);
nlohmann::json to_json(const CheckReport& r, bool with_runtime = false);
nlohmann::json reports_to_json(const std::vector<CheckReport>& reports, const RunConfig& cfg, bool with_runtime);
void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports, const RunConfig& cfg);

// Stopping-time families S^k of one system: kubes with
// C^{-k-1} < ||u||_{L^inf(K-hat)} <f>_{K-hat} <= C^{-k}, stratified into layers of
// maximal tents, with E_K = K-hat minus the tents of the next layer.
struct StoppingFamily {
  int level = 0;
  int system = 0;
  double C = 0.0;
  std::vector<std::vector<int>> layers;
  std::vector<int> kubes;                        // all members, by id
  std::vector<std::vector<std::size_t>> e_sets;  // node sets, parallel to kubes
};

// all nonempty levels of one system at once
std::vector<StoppingFamily> stopping_families(const Symbol& u, const std::vector<double>& f, double C, int system,
                                              const TentIndex& index);
StoppingFamily stopping_family(const Symbol& u, const std::vector<double>& f, double C, int k, int system,
                               const TentIndex& index);

struct StoppingStats {
  std::size_t overlaps = 0;  // nodes lying in more than one E_K of a level
  double max_ratio = 0.0;    // max over members of int_{K-hat} f / int_{E_K} f
  int witness_level = 0;
  int witness_kube = 0;
  std::size_t members = 0;
};
StoppingStats stopping_stats(const std::vector<StoppingFamily>& families, const std::vector<double>& f,
                             const TentIndex& index);

}  // namespace bergman
