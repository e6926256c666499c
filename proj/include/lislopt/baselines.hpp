#pragma once

// Heuristic matchings, OSPF-style routing, the non-joint pipeline and an
// exhaustive optimum for tiny instances.

#include <cstdint>
#include <string>
#include <vector>

#include "lislopt/recovery.hpp"

namespace lislopt {

std::vector<int> match_mrate(const ConstellationSnapshot& snap);
std::vector<int> match_grid(const ConstellationSnapshot& snap);
std::vector<int> match_random(const ConstellationSnapshot& snap, std::uint64_t seed);

// Alignment score d_{i_n,i_m}.u_n + d_{i_m,i_n}.u_m of an LCT edge.
double grid_weight(const ConstellationSnapshot& snap, const LctEdge& e);

// Shortest routes over matched links with weight 1 / (matched capacity).
std::vector<Route> ospf_route(const ConstellationSnapshot& snap, const std::vector<int>& matching,
                              std::vector<char>& served);

enum class HeuristicMatcher { mrate, grid, random };

HeuristicMatcher parse_heuristic(const std::string& name);

// Heuristic matching -> OSPF routes -> flow-rate LP.
PrimalSolution sate_pipeline(const ConstellationSnapshot& snap,
                             HeuristicMatcher matcher = HeuristicMatcher::grid,
                             std::uint64_t seed = 0);

struct BruteForceLimits {
  int max_edges = 12;
  int max_flows = 4;
  int max_sats = 8;
  int max_paths_per_flow = 64;
};

struct BruteForceResult {
  double throughput = 0.0;
  PrimalSolution solution;
  long matchings_examined = 0;
  long route_combinations = 0;
};

// Exact optimum by enumerating maximal matchings, simple paths per flow and
// solving the rate LP for every route combination. Throws CapacityError
// when the instance exceeds the limits.
BruteForceResult brute_force_p1(const ConstellationSnapshot& snap,
                                const BruteForceLimits& limits = {});

}  // namespace lislopt
