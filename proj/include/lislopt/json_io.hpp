#pragma once

// JSON interchange: snapshots, multipliers, dual evaluations and solutions.
// Field layouts are documented under docs/.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lislopt/recovery.hpp"

namespace lislopt {

inline constexpr int kSnapshotVersion = 1;
inline constexpr int kMultipliersVersion = 1;
inline constexpr int kDualEvalVersion = 1;
inline constexpr int kSolutionVersion = 1;

nlohmann::json snapshot_to_json(const ConstellationSnapshot& snap,
                                const nlohmann::json& meta_extra = nlohmann::json::object());
// Rebuilds the snapshot and re-runs its invariant checks. The stored
// sat_links must agree with the links implied by lct_edges.
ConstellationSnapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json multipliers_to_json(const ConstellationSnapshot& snap, const Multipliers& lambda);
// Accepts the versioned document or a bare list of {i, j, lambda}. Every
// directed link must appear exactly once; errors name the offending key.
// With `check_range`, values outside [0,1] are rejected.
Multipliers multipliers_from_json(const ConstellationSnapshot& snap, const nlohmann::json& j,
                                  bool check_range = true);

// Link-keyed view of a dual evaluation, independent of snapshot indexing.
struct DualEvalDoc {
  struct LinkValue {
    int i = 0, j = 0;
    double value = 0.0;
  };
  struct FlowCost {
    int s = 0, d = 0;
    std::optional<double> cost;  // empty when unreachable
  };
  double g = 0.0;
  double part_a = 0.0, part_b = 0.0, part_c = 0.0;
  std::vector<LinkValue> subgradient;
  std::vector<FlowCost> routing_costs;
  std::vector<std::pair<int, int>> arg_matching;  // LCT pairs
  std::vector<std::vector<int>> arg_routes;       // node sequences, empty when unreachable
  std::vector<double> arg_rates;
  double recovered_throughput = 0.0;
};

DualEvalDoc make_dual_eval_doc(const ConstellationSnapshot& snap, const DualEval& ev,
                               double recovered_throughput);
nlohmann::json dual_eval_to_json(const DualEvalDoc& doc);
DualEvalDoc dual_eval_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const ConstellationSnapshot& snap, const PrimalSolution& sol);
// Re-derives link masks and route link indices from the snapshot.
PrimalSolution solution_from_json(const ConstellationSnapshot& snap, const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
// Pretty-printed with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace lislopt
