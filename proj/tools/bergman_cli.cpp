// bergman: batch front-end for the dyadic / weight / operator / verification modules.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bergman/characteristics.hpp"
#include "bergman/config.hpp"
#include "bergman/errors.hpp"
#include "bergman/functions.hpp"
#include "bergman/norms.hpp"
#include "bergman/parallel.hpp"
#include "bergman/projection.hpp"
#include "bergman/sparse.hpp"
#include "bergman/verify.hpp"

using namespace bergman;
using json = nlohmann::json;

namespace {

struct Globals {
  std::string config_path;
  std::string out;
  std::string csv;
  int workers = 0;
  long long seed = -1;
  int G = -1;
  int grid_G = -1;
  std::string theta0;
  bool timing = false;
};

RunConfig load_config(const Globals& g) {
  RunConfig c = g.config_path.empty() ? RunConfig{} : RunConfig::load(g.config_path);
  if (g.seed >= 0) c.seed = static_cast<std::uint64_t>(g.seed);
  if (g.G > 0) c.G = g.G;
  if (g.grid_G > 0) c.grid.G_q = g.grid_G;
  if (g.workers > 0) c.workers = g.workers;
  if (!g.theta0.empty()) {
    if (g.theta0 == "default")
      c.theta0 = 0.0;
    else
      try {
        c.theta0 = std::stod(g.theta0);
      } catch (const std::exception&) {
        throw ConfigError("--theta0 must be a number or 'default'");
      }
  }
  if (!g.out.empty()) c.report_path = g.out;
  if (!g.csv.empty()) c.csv_path = g.csv;
  c.validate();
  set_workers(c.workers);
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << text;
}

Point parse_point(const std::string& s) {
  auto c = s.find(',');
  try {
    if (c == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw ConfigError("point '" + s + "' must be <re>[,<im>]");
  }
}

CharacteristicKind parse_kind(const std::string& k, double p, double r, const Symbol* u) {
  if (k == "bp") return CharacteristicKind::Bp(p);
  if (k == "b1") return CharacteristicKind::B1();
  if (k == "ubp") return CharacteristicKind::UBp(*u, p);
  if (k == "ub1") return CharacteristicKind::UB1(*u);
  if (k == "rh") return CharacteristicKind::RH(r);
  if (k == "binf") return CharacteristicKind::BInf();
  if (k == "regularity") return CharacteristicKind::Regularity();
  throw ConfigError("unknown characteristic kind '" + k + "'");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic sparse bounds for Bergman-space Toeplitz operators"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_option("--csv", g.csv, "also write a flat CSV table here");
  app.add_option("--workers", g.workers, "worker threads");
  app.add_option("--seed", g.seed, "seed for randomized dictionaries");
  app.add_option("--G", g.G, "truncation generation");
  app.add_option("--grid-G", g.grid_G, "quadrature truncation generation");
  app.add_option("--theta0", g.theta0, "caliber parameter, or 'default'");
  app.add_flag("--timing", g.timing, "include runtimes in reports");

  // dyadic stats
  auto* dyadic = app.add_subcommand("dyadic", "dyadic structure");
  dyadic->require_subcommand(1);
  dyadic->fallthrough();
  auto* stats = dyadic->add_subcommand("stats", "structure constants");
  std::string dump;
  stats->add_option("--dump-forest", dump, "write the kube forest as JSON");

  // weights char
  auto* weights = app.add_subcommand("weights", "weight characteristics");
  weights->require_subcommand(1);
  weights->fallthrough();
  auto* wchar = weights->add_subcommand("char", "compute one characteristic");
  std::string kind = "bp", wspec = "one", uspec = "one";
  double p = 2.0, r = 2.0;
  bool force_grid = false;
  wchar->add_option("--kind", kind, "bp|b1|ubp|ub1|rh|binf|regularity");
  wchar->add_option("--p", p, "exponent for B_p kinds");
  wchar->add_option("--r", r, "exponent for RH_r");
  wchar->add_option("--weight", wspec, "weight spec");
  wchar->add_option("--symbol", uspec, "symbol spec for u-kinds");
  wchar->add_flag("--grid", force_grid, "use grid statistics even with a closed form");

  // op apply / op berezin
  auto* op = app.add_subcommand("op", "operators");
  op->require_subcommand(1);
  op->fallthrough();
  auto* apply = op->add_subcommand("apply", "apply an operator to a grid function");
  std::string opname = "toeplitz", fspec = "one", at;
  apply->add_option("--op", opname, "projection|toeplitz|adjoint|sparse|maximal");
  apply->add_option("--symbol", uspec, "symbol spec");
  apply->add_option("--function", fspec, "function spec");
  apply->add_option("--at", at, "evaluate at <re>,<im> instead of on the grid");
  auto* ber = op->add_subcommand("berezin", "Berezin transform at a point");
  std::string zspec = "0", route = "both";
  ber->add_option("--symbol", uspec, "symbol spec");
  ber->add_option("--z", zspec, "<re>,<im>");
  ber->add_option("--route", route, "kernel|invariance|both");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification checks");
  std::string group = "all";
  verify->add_option("group", group, "all or a check group")->check(CLI::IsMember([] {
    auto v = check_groups();
    v.push_back("all");
    return v;
  }()));

  // report sweep
  auto* report = app.add_subcommand("report", "data series");
  report->require_subcommand(1);
  report->fallthrough();
  auto* sweep = report->add_subcommand("sweep", "characteristics and bounds against b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(g);

    if (stats->parsed()) {
      DyadicForest F = DyadicForest::build(cfg.dyadic_params(), cfg.M);
      StructureConstants sc = structure_constants(F, cfg.G);
      json j = to_json(sc);
      j["theta0"] = F.params().theta0();
      j["base"] = F.params().base;
      j["M"] = cfg.M;
      j["provenance"] = provenance(cfg);
      emit(cfg.report_path, j.dump(2) + "\n");
      if (!dump.empty()) emit(dump, to_json(F).dump() + "\n");
      return 0;
    }

    if (wchar->parsed()) {
      DyadicForest F = DyadicForest::build(cfg.dyadic_params(), cfg.M);
      Weight w = parse_weight(wspec);
      Symbol u = parse_symbol(uspec);
      std::unique_ptr<QuadratureGrid> grid;
      std::unique_ptr<TentIndex> index;
      WeightContext wc{&F, cfg.G, nullptr, force_grid};
      if (force_grid || !w.is_power()) {
        grid = std::make_unique<QuadratureGrid>(QuadratureGrid::build(F.params(), cfg.grid));
        index = std::make_unique<TentIndex>(F, *grid, std::min(cfg.G, cfg.grid.G_q));
        wc.index = index.get();
      }
      CharacteristicKind k = parse_kind(kind, p, r, &u);
      CharacteristicResult res = characteristic(k, w, wc);
      json j = {{"kind", k.label()},   {"weight", w.name},   {"value", res.value},
                {"system", res.system}, {"kube", res.kube}, {"generation", res.generation},
                {"method", res.method}, {"provenance", provenance(cfg)}};
      if (k.type == CharacteristicKind::binf) j["own_system"] = res.per_system;
      emit(cfg.report_path, j.dump(2) + "\n");
      return 0;
    }

    if (apply->parsed() || ber->parsed()) {
      DyadicForest F = DyadicForest::build(cfg.dyadic_params(), cfg.M);
      QuadratureGrid grid = QuadratureGrid::build(F.params(), cfg.grid);
      Symbol u = parse_symbol(uspec);
      if (ber->parsed()) {
        Point z = parse_point(zspec);
        json j = {{"symbol", u.name}, {"z", {z.real(), z.imag()}}, {"provenance", provenance(cfg)}};
        if (route == "kernel" || route == "both") j["kernel"] = berezin(u, z, BerezinRoute::kernel, grid).real();
        if (route == "invariance" || route == "both")
          j["invariance"] = berezin(u, z, BerezinRoute::invariance, grid).real();
        if (!j.contains("kernel") && !j.contains("invariance")) throw ConfigError("--route must be kernel|invariance|both");
        emit(cfg.report_path, j.dump(2) + "\n");
        return 0;
      }
      GridFunction f = parse_function(fspec, grid, F);
      TentIndex index(F, grid, std::min(cfg.G, cfg.grid.G_q));
      if (!at.empty()) {
        Point z = parse_point(at);
        json j = {{"op", opname}, {"symbol", u.name}, {"function", f.provenance}, {"z", {z.real(), z.imag()}},
                  {"provenance", provenance(cfg)}};
        if (opname == "projection") {
          cplx v = project(f, grid, z);
          j["value"] = {v.real(), v.imag()};
        } else if (opname == "toeplitz" || opname == "adjoint") {
          cplx v = toeplitz(u, f, grid, z, opname == "adjoint");
          j["value"] = {v.real(), v.imag()};
        } else if (opname == "sparse") {
          j["value"] = sparse_apply(u, abs_values(f), index, z);
        } else if (opname == "maximal") {
          MaximalSpec spec;
          spec.kind = MaximalSpec::symbol;
          spec.u = &u;
          j["value"] = maximal(spec, abs_values(f), index, z);
        } else {
          throw ConfigError("unknown --op '" + opname + "'");
        }
        emit(cfg.report_path, j.dump(2) + "\n");
        return 0;
      }
      GridFunction res;
      if (opname == "projection" || opname == "toeplitz" || opname == "adjoint") {
        Projector P(grid);
        res = opname == "projection" ? project_all(f, P) : toeplitz_all(u, f, P, opname == "adjoint");
      } else if (opname == "sparse" || opname == "maximal") {
        std::vector<double> v;
        if (opname == "sparse") {
          v = sparse_apply_all(u, abs_values(f), index);
        } else {
          MaximalSpec spec;
          spec.kind = MaximalSpec::symbol;
          spec.u = &u;
          v = maximal_all(spec, abs_values(f), index);
        }
        res.values.assign(v.begin(), v.end());
      } else {
        throw ConfigError("unknown --op '" + opname + "'");
      }
      std::ostringstream os;
      os << "# config_hash=" << cfg.hash() << " G=" << cfg.G << " G_q=" << cfg.grid.G_q << " version=" << module_version
         << "\n";
      write_csv(os, res);
      emit(cfg.report_path, os.str());
      return 0;
    }

    if (verify->parsed()) {
      VerifyContext ctx(cfg);
      std::vector<CheckReport> reports;
      std::vector<std::string> groups = group == "all" ? check_groups() : std::vector<std::string>{group};
      for (const auto& name : groups) {
        std::cerr << "[verify] " << name << "\n";
        auto part = run_checks(ctx, name);
        reports.insert(reports.end(), part.begin(), part.end());
      }
      std::stable_sort(reports.begin(), reports.end(),
                       [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
      emit(cfg.report_path, reports_to_json(reports, cfg, g.timing).dump(2) + "\n");
      if (!cfg.csv_path.empty()) {
        std::ostringstream os;
        write_reports_csv(os, reports, cfg);
        emit(cfg.csv_path, os.str());
      }
      int failed = 0;
      for (const auto& r : reports)
        if (r.kind == CheckReport::hard && !r.pass) {
          std::cerr << "[verify] FAIL " << r.name << " measured=" << r.measured << " bound=" << r.bound << "\n";
          ++failed;
        }
      return failed ? 1 : 0;
    }

    if (sweep->parsed()) {
      DyadicForest F = DyadicForest::build(cfg.dyadic_params(), cfg.M);
      QuadratureGrid grid = QuadratureGrid::build(F.params(), cfg.grid);
      TentIndex index(F, grid, std::min(cfg.G, cfg.grid.G_q));
      Projector P(grid);
      WeightContext wc{&F, cfg.G, &index, false};
      Symbol one = symbol_one();
      std::vector<GridFunction> dict;
      for (int m = 0; m <= 4; ++m) dict.push_back(fn_monomial(grid, m));
      for (double rr : {0.3, 0.5, 0.8}) dict.push_back(fn_kernel(grid, Point(rr, 0.0), 2.0));
      std::vector<GridFunction> Pf;
      for (const auto& f : dict) Pf.push_back(project_all(f, P));
      json rows = json::array();
      std::ostringstream csv;
      csv << "b,b2,b1,binf,c_sigma,rh_r,rh,rh_bound,weak_bound,l2_measured,config_hash,G,G_q,version\n";
      const std::string hash = cfg.hash();
      for (double b : cfg.b_values) {
        std::cerr << "[sweep] b=" << b << "\n";
        Weight w = weight_power(b);
        PredictedConstants pc = predicted_constants(w, one, wc);
        double b2 = characteristic(CharacteristicKind::Bp(2.0), w, wc).value;
        double b1 = characteristic(CharacteristicKind::B1(), w, wc).value;
        double rh = characteristic(CharacteristicKind::RH(pc.r), w, wc).value;
        auto sigma = sample_weight(w, grid);
        double l2 = 0.0;
        for (std::size_t i = 0; i < dict.size(); ++i)
          l2 = std::max(l2, norm(Pf[i], sigma, grid, NormMode::Strong(2.0)) / norm(dict[i], sigma, grid, NormMode::Strong(2.0)));
        json row = {{"b", b},          {"b2", b2},   {"b1", b1},           {"binf", pc.b_inf},
                    {"c_sigma", pc.c_sigma}, {"rh_r", pc.r}, {"rh", rh},  {"rh_bound", pc.rh_bound},
                    {"weak_bound", pc.weak_bound}, {"l2_measured", l2}, {"provenance", provenance(cfg)}};
        rows.push_back(row);
        csv << num(b) << ',' << num(b2) << ',' << num(b1) << ',' << num(pc.b_inf) << ',' << num(pc.c_sigma) << ','
            << num(pc.r) << ',' << num(rh) << ',' << num(pc.rh_bound) << ',' << num(pc.weak_bound) << ',' << num(l2)
            << ',' << hash << ',' << cfg.G << ',' << cfg.grid.G_q << ',' << module_version << '\n';
      }
      emit(cfg.report_path, rows.dump(2) + "\n");
      if (!cfg.csv_path.empty()) emit(cfg.csv_path, csv.str());
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
