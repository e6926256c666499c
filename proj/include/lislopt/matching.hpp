#pragma once

// Maximum-weight matching on a general graph.

#include <string>
#include <vector>

namespace lislopt {

enum class MatchingMode { greedy, exact, blossom };

MatchingMode parse_matching_mode(const std::string& name);
const char* to_string(MatchingMode m);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;  // >= 0
};

// Sort by weight descending, ties by (u, v) lexicographic, then accept every
// edge whose endpoints are still free. Result is maximal.
std::vector<int> greedy_matching(const std::vector<WeightedEdge>& edges);

// Exhaustive search; throws CapacityError above `cap` edges.
std::vector<int> enumerate_matching(const std::vector<WeightedEdge>& edges, int cap = 20);

// Edmonds' blossom algorithm with primal-dual updates, O(V^3). Weights are
// rounded to a fixed-point grid of at most 1e-12 relative to unity.
std::vector<int> blossom_matching(const std::vector<WeightedEdge>& edges);

// Dispatch on mode. Exact results are completed to a maximal matching; any
// edge still addable after an optimum has zero weight.
std::vector<int> max_weight_matching(const std::vector<WeightedEdge>& edges, MatchingMode mode);

// Adds edges in greedy order while both endpoints are free.
void extend_to_maximal(const std::vector<WeightedEdge>& edges, std::vector<int>& selected);

double matching_weight(const std::vector<WeightedEdge>& edges, const std::vector<int>& selected);

// True when no vertex is used twice.
bool is_matching(const std::vector<WeightedEdge>& edges, const std::vector<int>& selected);

}  // namespace lislopt
