#pragma once

// Single-path shortest routing over directed satellite links.

#include <vector>

#include "lislopt/graph.hpp"

namespace lislopt {

struct Route {
  bool reachable = false;
  double cost = 0.0;        // sum of link weights; +inf when unreachable
  std::vector<int> nodes;   // s ... d
  std::vector<int> links;   // directed link indices along the path
};

// One route per snapshot flow. Labels are ordered by (cost, hop count,
// lexicographic node sequence), which makes every result deterministic.
// `usable` masks directed links (empty = all links); weights must be >= 0.
std::vector<Route> shortest_routes(const ConstellationSnapshot& snap,
                                   const std::vector<double>& link_weight,
                                   const std::vector<char>& usable = {});

}  // namespace lislopt
