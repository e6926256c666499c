#pragma once

// Lagrangian dual of the joint matching/routing/rate problem: subproblems,
// g(lambda), its subgradient and projected subgradient ascent.

#include <vector>

#include "lislopt/graph.hpp"
#include "lislopt/matching.hpp"
#include "lislopt/routing.hpp"

namespace lislopt {

// Congestion prices, one per directed satellite link (see ConstellationSnapshot
// for the numbering). Values live in [0,1] unless produced by a caller that
// explicitly wants raw prices (clipping experiments).
using Multipliers = std::vector<double>;

Multipliers uniform_multipliers(const ConstellationSnapshot& snap, double value);

// Throws ValidationError naming the first link outside [0,1] or a size mismatch.
void validate_multipliers(const ConstellationSnapshot& snap, const Multipliers& lambda);

// min(1, lambda) per link; throws DomainError on negative input.
Multipliers clip_multipliers(const Multipliers& lambda);

struct MatchingResult {
  std::vector<int> edges;  // indices into snap.lct_edges, ascending
  double value = 0.0;      // sum of accepted weights
};

// Weight of LCT edge {n,m}: (lambda_ij + lambda_ji) * r_nm.
std::vector<WeightedEdge> dual_edge_weights(const ConstellationSnapshot& snap,
                                            const Multipliers& lambda);

MatchingResult matching_subproblem(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                   MatchingMode mode);

// Minimum-price route per flow; `usable` masks links (empty = every link).
std::vector<Route> routing_subproblem(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                      const std::vector<char>& usable = {});

struct RateResult {
  std::vector<double> rates;  // per flow
  double value = 0.0;         // sum q (1 - cost)
};

// maximize sum q (1 - cost) under serving and demand rows. Flows with cost
// >= 1 or no route are held at zero.
RateResult rate_subproblem(const ConstellationSnapshot& snap, const std::vector<double>& costs);

struct DualEval {
  double g_value = 0.0;
  double matching_part_a = 0.0;
  double routing_part_b = 0.0;  // sum of finite route costs, informational
  double rate_part_c = 0.0;
  std::vector<double> routing_costs;  // per flow, +inf when unreachable
  std::vector<double> subgradient;    // per directed link
  std::vector<int> arg_matching;
  std::vector<Route> arg_routes;
  std::vector<double> arg_rates;
};

DualEval dual_function(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       MatchingMode mode);

struct LaduConfig {
  int iterations_K = 100;
  double alpha0 = 0.5;
  double beta = 0.7;
  double initial_lambda = 1.0;
  MatchingMode matching_mode = MatchingMode::greedy;

  void validate() const;
};

struct LaduResult {
  std::vector<double> g_trace;  // g at every evaluated iterate
  Multipliers best_lambda;      // best dual value seen
  double best_g = 0.0;
  int best_iteration = 0;       // 1-based
  Multipliers final_lambda;     // last evaluated iterate
};

LaduResult ladu_descent(const ConstellationSnapshot& snap, const LaduConfig& cfg);

}  // namespace lislopt
