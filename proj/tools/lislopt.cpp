// Command-line driver: snapshot, solve, export-dataset, subgrad, coherence, sweep.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lislopt/error.hpp"
#include "lislopt/experiment.hpp"
#include "lislopt/json_io.hpp"

using namespace lislopt;
using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ValidationError("not a number: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct SnapshotArgs {
  std::string config, out;
  double t = 0.0;
  std::uint64_t seed = 1;
};

struct SolveArgs {
  std::string snapshot, method = "ladu", config, lambda, out, solution_out;
  int K = -1;
  double alpha0 = -1.0, beta = -1.0;
  std::string matching, recovery;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool evolve = false;
  double elapsed = -1.0;
};

struct DatasetArgs {
  std::string config, out_dir;
  int count = 0;
  std::uint64_t seed = 1;
  double window = 6000.0;
};

struct SubgradArgs {
  std::string snapshot, lambda, out, matching;
};

struct CoherenceArgs {
  std::string config, name = "starlink", out;
  std::vector<double> tr{0.999, 0.99};
  int samples = 10;
  std::uint64_t seed = 1;
  double horizon = 100.0, resolution = 0.01, window = 6000.0;
};

struct SweepArgs {
  std::string config, axis, values, methods = "mrate,grid,ladu", seeds = "1", out;
  double t = 0.0;
};

int cmd_snapshot(const SnapshotArgs& a) {
  ScenarioConfig cfg = load_config(a.config);
  Scenario sc = load_scenario(cfg);
  ConstellationSnapshot snap = sample_snapshot(sc, a.t, a.seed);
  emit(a.out, snapshot_to_json(snap, snapshot_meta(cfg, a.seed)).dump(2) + "\n");
  return 0;
}

int cmd_solve(const SolveArgs& a) {
  const auto t_begin = std::chrono::steady_clock::now();
  const json doc = read_json_file(a.snapshot);
  ConstellationSnapshot snap = snapshot_from_json(doc);
  ScenarioConfig cfg = a.config.empty() ? config_from_snapshot_meta(doc) : load_config(a.config);
  MethodOptions opt = method_options(cfg.solver);
  if (a.K > 0) opt.ladu.iterations_K = a.K;
  if (a.alpha0 > 0.0) opt.ladu.alpha0 = a.alpha0;
  if (a.beta > 0.0) opt.ladu.beta = a.beta;
  if (!a.matching.empty()) opt.ladu.matching_mode = parse_matching_mode(a.matching);
  if (!a.recovery.empty()) opt.recovery_mode = parse_matching_mode(a.recovery);
  if (a.seed_set) opt.seed = a.seed;
  const Method method = parse_method(a.method);
  if (!a.lambda.empty()) opt.lambda = multipliers_from_json(snap, read_json_file(a.lambda));

  MethodRun run = run_method(snap, method, opt);
  std::optional<EvolvedRun> evolved;
  if (a.evolve) {
    const double elapsed = a.elapsed >= 0.0 ? a.elapsed : run.solve_seconds;
    OpticalParams optics = cfg.optics;
    optics.max_range_zhat = cfg.geometry.max_range_zhat;
    evolved = evaluate_evolved(snap, run.solution, elapsed, cfg.geometry, optics);
  }
  if (!a.solution_out.empty()) emit(a.solution_out, solution_to_json(snap, run.solution).dump(2) + "\n");
  const double e2e =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  json m = metrics_json(snap, run, e2e, evolved);
  m["solution_file"] = a.solution_out.empty() ? json(nullptr) : json(a.solution_out);
  emit(a.out, m.dump(2) + "\n");
  return 0;
}

int cmd_export(const DatasetArgs& a) {
  Scenario sc = load_scenario(load_config(a.config));
  auto entries = export_dataset(sc, a.out_dir, a.count, a.seed, a.window);
  std::cerr << "wrote " << entries.size() << " snapshots to " << a.out_dir << "\n";
  return 0;
}

int cmd_subgrad(const SubgradArgs& a) {
  const json doc = read_json_file(a.snapshot);
  ConstellationSnapshot snap = snapshot_from_json(doc);
  ScenarioConfig cfg = config_from_snapshot_meta(doc);
  Multipliers lambda = multipliers_from_json(snap, read_json_file(a.lambda));
  const MatchingMode mode = a.matching.empty() ? cfg.solver.matching_mode : parse_matching_mode(a.matching);
  DualEval ev = dual_function(snap, lambda, mode);
  PrimalSolution sol = recover(snap, lambda, mode);
  emit(a.out, dual_eval_to_json(make_dual_eval_doc(snap, ev, sol.throughput)).dump(2) + "\n");
  return 0;
}

int cmd_coherence(const CoherenceArgs& a) {
  ScenarioConfig cfg = load_config(a.config);
  const double t0 = parse_iso8601_utc(cfg.orbital.t0);
  auto records = load_tle_file(cfg.resolve(cfg.paths.tle), t0);
  std::vector<OrbitalElements> els;
  for (size_t k = 0; k < records.size(); ++k) {
    els.push_back(records[k].elements);
    els.back().sat_id = static_cast<int>(k);
  }
  std::vector<CoherenceRow> rows;
  for (double tr : a.tr) {
    CoherenceOptions o;
    o.threshold_ratio = tr;
    o.sample_count = a.samples;
    o.seed = a.seed;
    o.horizon = a.horizon;
    o.resolution = a.resolution;
    o.start_window = a.window;
    rows.push_back({a.name, tr, estimate_coherent_time(els, cfg.geometry, o)});
  }
  std::ostringstream os;
  write_coherence_csv(os, rows);
  emit(a.out, os.str());
  return 0;
}

int cmd_sweep(const SweepArgs& a) {
  Scenario sc = load_scenario(load_config(a.config));
  const SweepAxis axis = parse_sweep_axis(a.axis);
  std::vector<Method> methods;
  for (const auto& m : split_list(a.methods)) methods.push_back(parse_method(m));
  std::vector<std::uint64_t> seeds;
  for (const auto& s : split_list(a.seeds)) seeds.push_back(std::stoull(s));
  auto rows = run_sweep(sc, axis, parse_doubles(a.values), methods, seeds, a.t);
  std::ostringstream os;
  write_sweep_csv(os, axis, rows);
  emit(a.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LISL matching, routing and rate allocation toolkit"};
  app.require_subcommand(1);

  SnapshotArgs sa;
  auto* snap = app.add_subcommand("snapshot", "sample satellites and write a snapshot JSON");
  snap->add_option("-c,--config", sa.config, "scenario config JSON")->required()->check(CLI::ExistingFile);
  snap->add_option("-t,--time", sa.t, "seconds after T0");
  snap->add_option("-s,--seed", sa.seed, "sampling seed");
  snap->add_option("-o,--out", sa.out, "output file (default stdout)");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "run a method on a snapshot and print metrics JSON");
  solve->add_option("snapshot", so.snapshot, "snapshot JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("-m,--method", so.method, "mrate|grid|rand|sate|ladu|deepladu|brute");
  solve->add_option("-c,--config", so.config, "config overriding the one stored in the snapshot");
  solve->add_option("--lambda", so.lambda, "multipliers JSON (deepladu)");
  solve->add_option("-K,--iterations", so.K, "LaDu iterations");
  solve->add_option("--alpha0", so.alpha0, "LaDu initial step");
  solve->add_option("--beta", so.beta, "LaDu step decay exponent");
  solve->add_option("--matching", so.matching, "dual matching mode: greedy|exact|blossom");
  solve->add_option("--recovery", so.recovery, "recovery matching mode");
  solve->add_option("--seed", so.seed, "seed for randomized methods")->each([&](const std::string&) { so.seed_set = true; });
  solve->add_flag("--evolve", so.evolve, "re-evaluate on the constellation advanced by the solve time");
  solve->add_option("--elapsed", so.elapsed, "override the evolution time (s)");
  solve->add_option("-o,--out", so.out, "metrics output (default stdout)");
  solve->add_option("--solution-out", so.solution_out, "write the solution JSON here");

  DatasetArgs da;
  auto* ds = app.add_subcommand("export-dataset", "write seeded snapshots plus a manifest");
  ds->add_option("-c,--config", da.config)->required()->check(CLI::ExistingFile);
  ds->add_option("-n,--count", da.count)->required();
  ds->add_option("-s,--seed", da.seed);
  ds->add_option("--window", da.window, "epochs drawn from [0, window) s");
  ds->add_option("-o,--out-dir", da.out_dir)->required();

  SubgradArgs ga;
  auto* sg = app.add_subcommand("subgrad", "evaluate g, its parts and the subgradient");
  sg->add_option("snapshot", ga.snapshot)->required()->check(CLI::ExistingFile);
  sg->add_option("--lambda", ga.lambda, "multipliers JSON")->required()->check(CLI::ExistingFile);
  sg->add_option("--matching", ga.matching, "greedy|exact|blossom");
  sg->add_option("-o,--out", ga.out);

  CoherenceArgs ca;
  auto* coh = app.add_subcommand("coherence", "estimate coherent time per threshold ratio");
  coh->add_option("-c,--config", ca.config)->required()->check(CLI::ExistingFile);
  coh->add_option("--tr", ca.tr, "threshold ratios")->delimiter(',');
  coh->add_option("--samples", ca.samples);
  coh->add_option("--seed", ca.seed);
  coh->add_option("--horizon", ca.horizon);
  coh->add_option("--resolution", ca.resolution);
  coh->add_option("--window", ca.window);
  coh->add_option("--name", ca.name, "constellation label");
  coh->add_option("-o,--out", ca.out);

  SweepArgs wa;
  auto* sw = app.add_subcommand("sweep", "parameter sweep to long-format CSV");
  sw->add_option("-c,--config", wa.config)->required()->check(CLI::ExistingFile);
  sw->add_option("--axis", wa.axis, "lcts_per_sat|theta_deg|jitter_sigma|divergence|num_sats")->required();
  sw->add_option("--values", wa.values, "comma-separated values (may be empty)")->required();
  sw->add_option("--methods", wa.methods);
  sw->add_option("--seeds", wa.seeds);
  sw->add_option("-t,--time", wa.t);
  sw->add_option("-o,--out", wa.out);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*snap) return cmd_snapshot(sa);
    if (*solve) return cmd_solve(so);
    if (*ds) return cmd_export(da);
    if (*sg) return cmd_subgrad(ga);
    if (*coh) return cmd_coherence(ca);
    if (*sw) return cmd_sweep(wa);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
