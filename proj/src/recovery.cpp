#include "lislopt/recovery.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "lislopt/error.hpp"
#include "lislopt/lp.hpp"

namespace lislopt {

std::vector<char> links_of_matching(const ConstellationSnapshot& snap,
                                    const std::vector<int>& matching) {
  std::vector<char> mask(static_cast<size_t>(snap.num_links()), 0);
  for (int k : matching) {
    const int p = snap.lct_edges.at(static_cast<size_t>(k)).pair;
    mask[static_cast<size_t>(2 * p)] = mask[static_cast<size_t>(2 * p + 1)] = 1;
  }
  return mask;
}

std::vector<double> matched_capacity(const ConstellationSnapshot& snap,
                                     const std::vector<int>& matching) {
  std::vector<double> cap(snap.pairs.size(), 0.0);
  for (int k : matching) {
    const LctEdge& e = snap.lct_edges.at(static_cast<size_t>(k));
    cap[static_cast<size_t>(e.pair)] += e.capacity;
  }
  return cap;
}

RecoveredMatching recover_matching(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                   MatchingMode mode) {
  RecoveredMatching r;
  r.matching = matching_subproblem(snap, lambda, mode).edges;
  r.connected_links = links_of_matching(snap, r.matching);
  return r;
}

std::vector<Route> recover_routes(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                  const std::vector<char>& connected_links,
                                  std::vector<char>& served) {
  auto routes = routing_subproblem(snap, lambda, connected_links);
  served.assign(routes.size(), 0);
  for (size_t f = 0; f < routes.size(); ++f) served[f] = routes[f].reachable ? 1 : 0;
  return routes;
}

std::vector<double> allocate_rates(const ConstellationSnapshot& snap,
                                   const std::vector<int>& matching,
                                   const std::vector<Route>& routes,
                                   const std::vector<char>& served) {
  if (routes.size() != snap.flows.size() || served.size() != snap.flows.size()) {
    throw ValidationError("one route and served flag per flow required");
  }
  std::vector<double> rates(snap.flows.size(), 0.0);
  std::vector<int> var_flow;
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    if (served[f]) var_flow.push_back(static_cast<int>(f));
  }
  if (var_flow.empty()) return rates;

  const auto cap = matched_capacity(snap, matching);
  LinearProgram lp(static_cast<int>(var_flow.size()));
  std::map<int, std::vector<std::pair<int, double>>> serve_rows, demand_rows, link_rows;
  for (size_t k = 0; k < var_flow.size(); ++k) {
    const int f = var_flow[k];
    const Flow& fl = snap.flows[static_cast<size_t>(f)];
    lp.objective[k] = 1.0;
    serve_rows[fl.s].emplace_back(static_cast<int>(k), 1.0);
    demand_rows[fl.d].emplace_back(static_cast<int>(k), 1.0);
    for (int l : routes[static_cast<size_t>(f)].links) link_rows[l].emplace_back(static_cast<int>(k), 1.0);
  }
  for (auto& [s, t] : serve_rows) lp.add_constraint(t, snap.serving_Q[static_cast<size_t>(s)]);
  for (auto& [d, t] : demand_rows) lp.add_constraint(t, snap.demand_D[static_cast<size_t>(d)]);
  for (auto& [l, t] : link_rows) lp.add_constraint(t, cap[static_cast<size_t>(l / 2)]);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal) {
    throw NumericError(std::string("flow-rate LP ") + to_string(sol.status));
  }
  for (size_t k = 0; k < var_flow.size(); ++k) rates[static_cast<size_t>(var_flow[k])] = sol.values[k];
  return rates;
}

PrimalSolution complete_solution(const ConstellationSnapshot& snap, std::vector<int> matching,
                                 std::vector<Route> routes, std::vector<char> served) {
  PrimalSolution s;
  s.connected_links = links_of_matching(snap, matching);
  s.rates = allocate_rates(snap, matching, routes, served);
  s.matching = std::move(matching);
  s.routes = std::move(routes);
  s.served = std::move(served);
  for (size_t f = 0; f < s.routes.size(); ++f) {
    if (!s.served[f]) s.routes[f] = Route{};
  }
  for (double q : s.rates) s.throughput += q;
  return s;
}

PrimalSolution recover(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       MatchingMode mode) {
  auto m = recover_matching(snap, lambda, mode);
  std::vector<char> served;
  auto routes = recover_routes(snap, lambda, m.connected_links, served);
  return complete_solution(snap, std::move(m.matching), std::move(routes), std::move(served));
}

namespace {

std::string str(const char* prefix, int a) {
  std::ostringstream os;
  os << prefix << a;
  return os.str();
}

}  // namespace

FeasibilityReport verify_feasibility(const ConstellationSnapshot& snap, const PrimalSolution& sol,
                                     double tol) {
  FeasibilityReport rep;
  auto flag = [&](std::string what, double slack) { rep.violations.push_back({std::move(what), slack}); };
  const size_t F = snap.flows.size();
  if (sol.rates.size() != F || sol.routes.size() != F || sol.served.size() != F) {
    flag("shape: one rate, route and served flag per flow", -1.0);
    return rep;
  }

  // matching degree and reciprocity
  std::vector<int> degree(snap.lcts.size(), 0);
  for (int k : sol.matching) {
    if (k < 0 || k >= static_cast<int>(snap.lct_edges.size())) {
      flag(str("matching: unknown lct edge ", k), -1.0);
      continue;
    }
    ++degree[static_cast<size_t>(snap.lct_edges[static_cast<size_t>(k)].n)];
    ++degree[static_cast<size_t>(snap.lct_edges[static_cast<size_t>(k)].m)];
  }
  for (size_t n = 0; n < degree.size(); ++n) {
    if (degree[n] > 1) flag(str("degree lct ", static_cast<int>(n)), 1.0 - degree[n]);
  }
  std::vector<int> known;
  for (int k : sol.matching) {
    if (k >= 0 && k < static_cast<int>(snap.lct_edges.size())) known.push_back(k);
  }
  const auto active = links_of_matching(snap, known);
  const auto cap = matched_capacity(snap, known);

  std::vector<double> load(static_cast<size_t>(snap.num_links()), 0.0);
  std::vector<double> out_rate(snap.satellites.size(), 0.0), in_rate(snap.satellites.size(), 0.0);
  double total = 0.0;
  for (size_t f = 0; f < F; ++f) {
    const double q = sol.rates[f];
    const Flow& fl = snap.flows[f];
    const std::string tag = "flow " + std::to_string(fl.s) + "->" + std::to_string(fl.d);
    if (q < -tol) flag("nonnegative " + tag, q);
    total += q;
    if (q <= tol) continue;
    const Route& r = sol.routes[f];
    if (!sol.served[f] || r.nodes.empty()) {
      flag("route missing for positive rate " + tag, -q);
      continue;
    }
    // conservation: a simple path from s to d whose hops are active links
    bool ok = r.nodes.front() == fl.s && r.nodes.back() == fl.d &&
              r.links.size() + 1 == r.nodes.size();
    std::vector<char> seen(snap.satellites.size(), 0);
    for (size_t h = 0; ok && h < r.nodes.size(); ++h) {
      const int v = r.nodes[h];
      if (v < 0 || v >= snap.num_sats() || seen[static_cast<size_t>(v)]) ok = false;
      else seen[static_cast<size_t>(v)] = 1;
    }
    for (size_t h = 0; ok && h < r.links.size(); ++h) {
      const int l = snap.link_index(r.nodes[h], r.nodes[h + 1]);
      if (l < 0 || l != r.links[h] || !active[static_cast<size_t>(l)]) ok = false;
    }
    if (!ok) {
      flag("conservation " + tag, -q);
      continue;
    }
    for (int l : r.links) load[static_cast<size_t>(l)] += q;
    out_rate[static_cast<size_t>(fl.s)] += q;
    in_rate[static_cast<size_t>(fl.d)] += q;
  }
  for (size_t i = 0; i < snap.satellites.size(); ++i) {
    const double s1 = snap.serving_Q[i] - out_rate[i];
    if (s1 < -tol) flag(str("serving s=", static_cast<int>(i)), s1);
    const double s2 = snap.demand_D[i] - in_rate[i];
    if (s2 < -tol) flag(str("demand d=", static_cast<int>(i)), s2);
  }
  for (int l = 0; l < snap.num_links(); ++l) {
    const double s = cap[static_cast<size_t>(l / 2)] - load[static_cast<size_t>(l)];
    if (s < -tol) {
      flag("link " + std::to_string(snap.link_from(l)) + "->" + std::to_string(snap.link_to(l)), s);
    }
  }
  if (std::abs(total - sol.throughput) > tol * std::max(1.0, std::abs(total))) {
    flag("throughput equals sum of rates", -std::abs(total - sol.throughput));
  }
  return rep;
}

DualityGap duality_gap(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       const PrimalSolution& sol, MatchingMode mode) {
  DualityGap d;
  d.g_value = dual_function(snap, lambda, mode).g_value;
  d.neg_throughput = -sol.throughput;
  d.gap = d.neg_throughput - d.g_value;
  return d;
}

LaduSolution solve_ladu(const ConstellationSnapshot& snap, const LaduConfig& cfg,
                        MatchingMode recovery_mode) {
  LaduSolution out;
  out.descent = ladu_descent(snap, cfg);
  PrimalSolution best = recover(snap, out.descent.best_lambda, recovery_mode);
  PrimalSolution fin = recover(snap, out.descent.final_lambda, recovery_mode);
  if (fin.throughput > best.throughput) {
    out.solution = std::move(fin);
    out.lambda = out.descent.final_lambda;
    out.used_best = false;
  } else {
    out.solution = std::move(best);
    out.lambda = out.descent.best_lambda;
  }
  return out;
}

}  // namespace lislopt
