#pragma once

// Multipliers -> feasible joint solution, and the feasibility verifier.

#include <string>
#include <vector>

#include "lislopt/dual.hpp"

namespace lislopt {

struct PrimalSolution {
  std::vector<int> matching;              // indices into snap.lct_edges
  std::vector<char> connected_links;      // per directed link (L')
  std::vector<Route> routes;              // per flow; empty route when unserved
  std::vector<char> served;               // per flow (F')
  std::vector<double> rates;              // per flow, Gbit/s
  double throughput = 0.0;
};

// Directed-link mask of satellite pairs with at least one matched LCT edge.
std::vector<char> links_of_matching(const ConstellationSnapshot& snap,
                                    const std::vector<int>& matching);

// Matched capacity per unordered pair index.
std::vector<double> matched_capacity(const ConstellationSnapshot& snap,
                                     const std::vector<int>& matching);

struct RecoveredMatching {
  std::vector<int> matching;
  std::vector<char> connected_links;
};

RecoveredMatching recover_matching(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                   MatchingMode mode);

// Routes restricted to L'; `served` marks reachable flows.
std::vector<Route> recover_routes(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                  const std::vector<char>& connected_links,
                                  std::vector<char>& served);

// Flow-rate maximization over the served flows. Each directed link used by a
// route gets its own row bounded by the full matched capacity of its pair.
std::vector<double> allocate_rates(const ConstellationSnapshot& snap,
                                   const std::vector<int>& matching,
                                   const std::vector<Route>& routes,
                                   const std::vector<char>& served);

// Assembles the solution from a matching and routes, solving the rate LP.
PrimalSolution complete_solution(const ConstellationSnapshot& snap, std::vector<int> matching,
                                 std::vector<Route> routes, std::vector<char> served);

PrimalSolution recover(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       MatchingMode mode = MatchingMode::greedy);

struct Violation {
  std::string constraint;  // e.g. "serving s=3", "link 2->5", "degree lct 7"
  double slack = 0.0;      // negative amount by which it is violated
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

FeasibilityReport verify_feasibility(const ConstellationSnapshot& snap, const PrimalSolution& sol,
                                     double tol = 1e-8);

struct DualityGap {
  double g_value = 0.0;
  double neg_throughput = 0.0;
  double gap = 0.0;  // neg_throughput - g_value, >= -1e-8 when the matching is exact
};

DualityGap duality_gap(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       const PrimalSolution& sol, MatchingMode mode);

struct LaduSolution {
  PrimalSolution solution;
  LaduResult descent;
  Multipliers lambda;  // the multipliers whose recovery is reported
  bool used_best = true;
};

// Descent, then recovery at both the best-dual and the final multipliers;
// keeps whichever recovers more throughput (ties prefer best-dual).
LaduSolution solve_ladu(const ConstellationSnapshot& snap, const LaduConfig& cfg,
                        MatchingMode recovery_mode = MatchingMode::greedy);

}  // namespace lislopt
