#include "lislopt/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lislopt/error.hpp"
#include "lislopt/parallel.hpp"

namespace lislopt {

namespace {

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  int hops = 0;
  std::vector<int> path;
  std::vector<int> links;
};

bool better(double cost, int hops, const std::vector<int>& path, const Label& cur) {
  if (cost != cur.cost) return cost < cur.cost;
  if (hops != cur.hops) return hops < cur.hops;
  return std::lexicographical_compare(path.begin(), path.end(), cur.path.begin(), cur.path.end());
}

std::vector<Label> dijkstra(int source, int n, const std::vector<std::vector<std::pair<int, int>>>& adj,
                            const std::vector<double>& weight) {
  std::vector<Label> lab(static_cast<size_t>(n));
  std::vector<char> done(static_cast<size_t>(n), 0);
  // Ordered frontier; a node is erased before its label changes so the
  // comparator never sees a stale key.
  auto less = [&lab](int a, int b) {
    const Label& la = lab[static_cast<size_t>(a)];
    const Label& lb = lab[static_cast<size_t>(b)];
    if (better(la.cost, la.hops, la.path, lb)) return true;
    if (better(lb.cost, lb.hops, lb.path, la)) return false;
    return a < b;
  };
  std::set<int, decltype(less)> frontier(less);
  lab[static_cast<size_t>(source)].cost = 0.0;
  lab[static_cast<size_t>(source)].path = {source};
  frontier.insert(source);
  std::vector<int> path;
  while (!frontier.empty()) {
    const int u = *frontier.begin();
    frontier.erase(frontier.begin());
    done[static_cast<size_t>(u)] = 1;
    const Label& lu = lab[static_cast<size_t>(u)];
    for (auto [v, link] : adj[static_cast<size_t>(u)]) {
      if (done[static_cast<size_t>(v)]) continue;
      const double c = lu.cost + weight[static_cast<size_t>(link)];
      Label& lv = lab[static_cast<size_t>(v)];
      if (c > lv.cost) continue;
      path = lu.path;
      path.push_back(v);
      if (!better(c, lu.hops + 1, path, lv)) continue;
      if (!std::isinf(lv.cost)) frontier.erase(v);
      lv.cost = c;
      lv.hops = lu.hops + 1;
      lv.path.swap(path);
      lv.links = lu.links;
      lv.links.push_back(link);
      frontier.insert(v);
    }
  }
  return lab;
}

}  // namespace

std::vector<Route> shortest_routes(const ConstellationSnapshot& snap,
                                   const std::vector<double>& link_weight,
                                   const std::vector<char>& usable) {
  const int L = snap.num_links();
  if (static_cast<int>(link_weight.size()) != L) {
    throw ValidationError("link weight vector length differs from link count");
  }
  if (!usable.empty() && static_cast<int>(usable.size()) != L) {
    throw ValidationError("usable-link mask length differs from link count");
  }
  const int n = snap.num_sats();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));
  for (int l = 0; l < L; ++l) {
    if (!usable.empty() && !usable[static_cast<size_t>(l)]) continue;
    if (!(link_weight[static_cast<size_t>(l)] >= 0.0)) {
      throw DomainError("routing weights must be non-negative");
    }
    adj[static_cast<size_t>(snap.link_from(l))].emplace_back(snap.link_to(l), l);
  }

  std::vector<int> sources;
  for (const Flow& f : snap.flows) sources.push_back(f.s);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  std::vector<std::vector<Label>> tables(sources.size());
  parallel_for(static_cast<int>(sources.size()), [&](int k) {
    tables[static_cast<size_t>(k)] = dijkstra(sources[static_cast<size_t>(k)], n, adj, link_weight);
  });

  std::vector<Route> routes(snap.flows.size());
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    const Flow& fl = snap.flows[f];
    const size_t k = static_cast<size_t>(
        std::lower_bound(sources.begin(), sources.end(), fl.s) - sources.begin());
    const Label& lab = tables[k][static_cast<size_t>(fl.d)];
    Route& r = routes[f];
    if (std::isinf(lab.cost)) {
      r.reachable = false;
      r.cost = std::numeric_limits<double>::infinity();
      continue;
    }
    r.reachable = true;
    r.cost = lab.cost;
    r.nodes = lab.path;
    r.links = lab.links;
  }
  return routes;
}

}  // namespace lislopt
