#include "lislopt/baselines.hpp"

#include <functional>
#include <random>

#include "lislopt/error.hpp"

namespace lislopt {

namespace {

std::vector<int> greedy_with(const ConstellationSnapshot& snap,
                             const std::function<double(const LctEdge&)>& weight) {
  std::vector<WeightedEdge> w;
  w.reserve(snap.lct_edges.size());
  for (const auto& e : snap.lct_edges) w.push_back({e.n, e.m, weight(e)});
  return greedy_matching(w);
}

}  // namespace

std::vector<int> match_mrate(const ConstellationSnapshot& snap) {
  return greedy_with(snap, [](const LctEdge& e) { return e.capacity; });
}

double grid_weight(const ConstellationSnapshot& snap, const LctEdge& e) {
  const LctTerminal& tn = snap.lcts[static_cast<size_t>(e.n)];
  const LctTerminal& tm = snap.lcts[static_cast<size_t>(e.m)];
  const SatelliteState& a = snap.satellites[static_cast<size_t>(tn.sat_id)];
  const SatelliteState& b = snap.satellites[static_cast<size_t>(tm.sat_id)];
  const Vec3 diff = b.position - a.position;
  const double z = diff.norm();
  if (!(z > 0.0)) return 0.0;
  const Vec3 d = diff / z;
  return dot(d, tn.mount_direction) + dot(-d, tm.mount_direction);
}

std::vector<int> match_grid(const ConstellationSnapshot& snap) {
  return greedy_with(snap, [&](const LctEdge& e) { return grid_weight(snap, e); });
}

std::vector<int> match_random(const ConstellationSnapshot& snap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(snap.lct_edges.size());
  for (double& x : w) x = u(rng);
  size_t k = 0;
  return greedy_with(snap, [&](const LctEdge&) { return w[k++]; });
}

std::vector<Route> ospf_route(const ConstellationSnapshot& snap, const std::vector<int>& matching,
                              std::vector<char>& served) {
  const auto cap = matched_capacity(snap, matching);
  const auto mask = links_of_matching(snap, matching);
  std::vector<double> weight(static_cast<size_t>(snap.num_links()), 0.0);
  for (int l = 0; l < snap.num_links(); ++l) {
    const double c = cap[static_cast<size_t>(l / 2)];
    weight[static_cast<size_t>(l)] = c > 0.0 ? 1.0 / c : 0.0;
  }
  auto routes = shortest_routes(snap, weight, mask);
  served.assign(routes.size(), 0);
  for (size_t f = 0; f < routes.size(); ++f) served[f] = routes[f].reachable ? 1 : 0;
  return routes;
}

HeuristicMatcher parse_heuristic(const std::string& name) {
  if (name == "mrate") return HeuristicMatcher::mrate;
  if (name == "grid") return HeuristicMatcher::grid;
  if (name == "rand" || name == "random") return HeuristicMatcher::random;
  throw ValidationError("unknown heuristic matcher '" + name + "'");
}

PrimalSolution sate_pipeline(const ConstellationSnapshot& snap, HeuristicMatcher matcher,
                             std::uint64_t seed) {
  std::vector<int> m;
  switch (matcher) {
    case HeuristicMatcher::mrate: m = match_mrate(snap); break;
    case HeuristicMatcher::grid: m = match_grid(snap); break;
    case HeuristicMatcher::random: m = match_random(snap, seed); break;
  }
  std::vector<char> served;
  auto routes = ospf_route(snap, m, served);
  return complete_solution(snap, std::move(m), std::move(routes), std::move(served));
}

namespace {

void simple_paths(int u, int target, const std::vector<std::vector<std::pair<int, int>>>& adj,
                  std::vector<char>& on_path, Route& cur, std::vector<Route>& out, int cap) {
  if (u == target) {
    if (static_cast<int>(out.size()) >= cap) {
      throw CapacityError("more than " + std::to_string(cap) + " simple paths for one flow");
    }
    out.push_back(cur);
    return;
  }
  for (auto [v, l] : adj[static_cast<size_t>(u)]) {
    if (on_path[static_cast<size_t>(v)]) continue;
    on_path[static_cast<size_t>(v)] = 1;
    cur.nodes.push_back(v);
    cur.links.push_back(l);
    simple_paths(v, target, adj, on_path, cur, out, cap);
    cur.nodes.pop_back();
    cur.links.pop_back();
    on_path[static_cast<size_t>(v)] = 0;
  }
}

}  // namespace

BruteForceResult brute_force_p1(const ConstellationSnapshot& snap, const BruteForceLimits& limits) {
  if (static_cast<int>(snap.lct_edges.size()) > limits.max_edges ||
      static_cast<int>(snap.flows.size()) > limits.max_flows || snap.num_sats() > limits.max_sats) {
    throw CapacityError("instance exceeds brute-force limits (|E|<=" +
                        std::to_string(limits.max_edges) + ", |F|<=" +
                        std::to_string(limits.max_flows) + ", |I|<=" +
                        std::to_string(limits.max_sats) + ")");
  }
  BruteForceResult best;
  best.throughput = -1.0;
  const size_t E = snap.lct_edges.size();
  const size_t F = snap.flows.size();

  // maximal matchings only: adding an edge never shrinks the feasible set
  std::vector<int> cur;
  std::vector<char> used(snap.lcts.size(), 0);
  std::vector<std::vector<int>> matchings;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == E) {
      for (size_t e = 0; e < E; ++e) {
        const auto& le = snap.lct_edges[e];
        if (!used[static_cast<size_t>(le.n)] && !used[static_cast<size_t>(le.m)]) return;
      }
      matchings.push_back(cur);
      return;
    }
    const auto& le = snap.lct_edges[k];
    if (!used[static_cast<size_t>(le.n)] && !used[static_cast<size_t>(le.m)]) {
      used[static_cast<size_t>(le.n)] = used[static_cast<size_t>(le.m)] = 1;
      cur.push_back(static_cast<int>(k));
      rec(k + 1);
      cur.pop_back();
      used[static_cast<size_t>(le.n)] = used[static_cast<size_t>(le.m)] = 0;
    }
    rec(k + 1);
  };
  rec(0);

  for (const auto& m : matchings) {
    ++best.matchings_examined;
    const auto mask = links_of_matching(snap, m);
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(snap.num_sats()));
    for (int l = 0; l < snap.num_links(); ++l) {
      if (mask[static_cast<size_t>(l)]) adj[static_cast<size_t>(snap.link_from(l))].emplace_back(snap.link_to(l), l);
    }
    std::vector<std::vector<Route>> options(F);
    for (size_t f = 0; f < F; ++f) {
      const Flow& fl = snap.flows[f];
      std::vector<char> on_path(static_cast<size_t>(snap.num_sats()), 0);
      on_path[static_cast<size_t>(fl.s)] = 1;
      Route r;
      r.reachable = true;
      r.nodes = {fl.s};
      simple_paths(fl.s, fl.d, adj, on_path, r, options[f], limits.max_paths_per_flow);
      if (options[f].empty()) options[f].push_back(Route{});  // unserved
    }
    std::vector<size_t> pick(F, 0);
    for (;;) {
      ++best.route_combinations;
      std::vector<Route> routes(F);
      std::vector<char> served(F, 0);
      for (size_t f = 0; f < F; ++f) {
        routes[f] = options[f][pick[f]];
        served[f] = routes[f].reachable ? 1 : 0;
      }
      PrimalSolution sol = complete_solution(snap, m, routes, served);
      if (sol.throughput > best.throughput + 1e-12) {
        best.throughput = sol.throughput;
        best.solution = std::move(sol);
      }
      size_t f = 0;
      while (f < F && ++pick[f] == options[f].size()) pick[f++] = 0;
      if (f == F) break;
    }
  }
  if (best.throughput < 0.0) best.throughput = 0.0;
  return best;
}

}  // namespace lislopt
