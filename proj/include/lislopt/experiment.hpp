#pragma once

// Method dispatch, time-varying re-evaluation and the sweep/coherence drivers
// behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lislopt/baselines.hpp"
#include "lislopt/scenario.hpp"

namespace lislopt {

enum class Method { mrate, grid, rand, sate, ladu, deepladu, brute };
Method parse_method(const std::string& name);
const char* to_string(Method m);

struct MethodOptions {
  LaduConfig ladu;
  MatchingMode recovery_mode = MatchingMode::greedy;
  HeuristicMatcher sate_matcher = HeuristicMatcher::grid;
  std::uint64_t seed = 0;
  std::optional<Multipliers> lambda;  // required by deepladu
  BruteForceLimits brute_limits;
};

MethodOptions method_options(const SolverConfig& cfg);

struct MethodRun {
  Method method = Method::mrate;
  PrimalSolution solution;
  double solve_seconds = 0.0;          // solve phase only
  std::optional<double> dual_value;    // g at the reported multipliers
  std::optional<LaduResult> descent;   // ladu only
  std::optional<Multipliers> lambda;   // ladu / deepladu
};

MethodRun run_method(const ConstellationSnapshot& snap, Method method, const MethodOptions& opt);

struct EvolvedRun {
  double elapsed = 0.0;
  std::string status;  // "ok", "links_lost", "all_links_lost"
  int matched_edges_before = 0;
  int matched_edges_kept = 0;
  int flows_dropped = 0;
  double throughput = 0.0;
  PrimalSolution solution;  // indexed against `snapshot`
  ConstellationSnapshot snapshot;
};

// Propagates the snapshot by `elapsed` seconds keeping traffic, matching and
// routes fixed. Matched edges that stop being connectable are dropped along
// with the flows routed across them; surviving edges take their new capacity
// and rates are re-solved. Needs orbital elements in the snapshot.
EvolvedRun evaluate_evolved(const ConstellationSnapshot& snap, const PrimalSolution& sol,
                            double elapsed, const GeometryParams& geo, const OpticalParams& opt);

nlohmann::json metrics_json(const ConstellationSnapshot& snap, const MethodRun& run,
                            double end_to_end_seconds, const std::optional<EvolvedRun>& evolved);

// --- sweeps -----------------------------------------------------------------

enum class SweepAxis { lcts_per_sat, theta_deg, jitter_sigma, divergence, num_sats };
SweepAxis parse_sweep_axis(const std::string& name);
const char* to_string(SweepAxis a);

// Copy of `base` with one axis set to `value`.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double axis_value = 0.0;
  std::string method;
  std::uint64_t seed = 0;
  double throughput = 0.0;
  int lct_edges = 0;
};

// Every (value, seed, method) combination on snapshots at time `t`.
std::vector<SweepRow> run_sweep(const Scenario& scenario, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds, double t);

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows);

// --- coherence --------------------------------------------------------------

struct CoherenceRow {
  std::string constellation;
  double threshold_ratio = 0.0;
  CoherenceResult result;
};

void write_coherence_csv(std::ostream& out, const std::vector<CoherenceRow>& rows);

// --- dataset ----------------------------------------------------------------

// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Snapshot meta block recording the generating config and sample seed.
nlohmann::json snapshot_meta(const ScenarioConfig& cfg, std::uint64_t seed);
// Config stored in a snapshot document's meta, or defaults when absent.
ScenarioConfig config_from_snapshot_meta(const nlohmann::json& snapshot_doc);

struct DatasetEntry {
  std::string file;
  std::uint64_t seed = 0;
  double t = 0.0;
  std::string hash;
};

// Writes `count` snapshots into `dir` (created if needed) with a manifest.json.
// Epochs are drawn from [0, epoch_window) and satellite samples are seeded.
std::vector<DatasetEntry> export_dataset(const Scenario& scenario, const std::string& dir,
                                         int count, std::uint64_t seed, double epoch_window);

}  // namespace lislopt
