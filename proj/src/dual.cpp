#include "lislopt/dual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <string>

#include "lislopt/error.hpp"
#include "lislopt/lp.hpp"

namespace lislopt {

Multipliers uniform_multipliers(const ConstellationSnapshot& snap, double value) {
  return Multipliers(static_cast<size_t>(snap.num_links()), value);
}

void validate_multipliers(const ConstellationSnapshot& snap, const Multipliers& lambda) {
  if (static_cast<int>(lambda.size()) != snap.num_links()) {
    throw ValidationError("multiplier count " + std::to_string(lambda.size()) +
                          " differs from link count " + std::to_string(snap.num_links()));
  }
  for (int l = 0; l < snap.num_links(); ++l) {
    const double v = lambda[static_cast<size_t>(l)];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("lambda(" + std::to_string(snap.link_from(l)) + "," +
                            std::to_string(snap.link_to(l)) + ") = " + std::to_string(v) +
                            " outside [0,1]");
    }
  }
}

Multipliers clip_multipliers(const Multipliers& lambda) {
  Multipliers out(lambda.size());
  for (size_t k = 0; k < lambda.size(); ++k) {
    if (!(lambda[k] >= 0.0)) throw DomainError("negative multiplier at link " + std::to_string(k));
    out[k] = std::min(1.0, lambda[k]);
  }
  return out;
}

std::vector<WeightedEdge> dual_edge_weights(const ConstellationSnapshot& snap,
                                            const Multipliers& lambda) {
  if (static_cast<int>(lambda.size()) != snap.num_links()) {
    throw ValidationError("multiplier count differs from link count");
  }
  std::vector<WeightedEdge> w;
  w.reserve(snap.lct_edges.size());
  for (const LctEdge& e : snap.lct_edges) {
    const double price = lambda[static_cast<size_t>(2 * e.pair)] + lambda[static_cast<size_t>(2 * e.pair + 1)];
    w.push_back({e.n, e.m, price * e.capacity});
  }
  return w;
}

MatchingResult matching_subproblem(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                   MatchingMode mode) {
  auto w = dual_edge_weights(snap, lambda);
  MatchingResult r;
  r.edges = max_weight_matching(w, mode);
  r.value = matching_weight(w, r.edges);
  return r;
}

std::vector<Route> routing_subproblem(const ConstellationSnapshot& snap, const Multipliers& lambda,
                                      const std::vector<char>& usable) {
  return shortest_routes(snap, lambda, usable);
}

RateResult rate_subproblem(const ConstellationSnapshot& snap, const std::vector<double>& costs) {
  if (costs.size() != snap.flows.size()) throw ValidationError("one routing cost per flow required");
  RateResult res;
  res.rates.assign(snap.flows.size(), 0.0);
  std::vector<int> var_flow;
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    if (std::isfinite(costs[f]) && 1.0 - costs[f] > 0.0) var_flow.push_back(static_cast<int>(f));
  }
  if (var_flow.empty()) return res;

  LinearProgram lp(static_cast<int>(var_flow.size()));
  std::map<int, std::vector<std::pair<int, double>>> serve_rows, demand_rows;
  for (size_t k = 0; k < var_flow.size(); ++k) {
    const int f = var_flow[k];
    const Flow& fl = snap.flows[static_cast<size_t>(f)];
    lp.objective[k] = 1.0 - costs[static_cast<size_t>(f)];
    serve_rows[fl.s].emplace_back(static_cast<int>(k), 1.0);
    demand_rows[fl.d].emplace_back(static_cast<int>(k), 1.0);
  }
  for (auto& [s, terms] : serve_rows) lp.add_constraint(terms, snap.serving_Q[static_cast<size_t>(s)]);
  for (auto& [d, terms] : demand_rows) lp.add_constraint(terms, snap.demand_D[static_cast<size_t>(d)]);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal) {
    throw NumericError(std::string("rate subproblem LP ") + to_string(sol.status));
  }
  for (size_t k = 0; k < var_flow.size(); ++k) {
    res.rates[static_cast<size_t>(var_flow[k])] = sol.values[k];
  }
  res.value = sol.objective_value;
  return res;
}

DualEval dual_function(const ConstellationSnapshot& snap, const Multipliers& lambda,
                       MatchingMode mode) {
  for (double v : lambda) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("multipliers must be finite and >= 0");
  }
  DualEval ev;
  MatchingResult m = matching_subproblem(snap, lambda, mode);
  // Zero-weight edges only pad the matching to maximal. They add nothing to
  // part (a) and are left out of the argmax so idle, unpriced links get δ = load.
  const auto w = dual_edge_weights(snap, lambda);
  for (int k : m.edges) {
    if (w[static_cast<size_t>(k)].w > 0.0) ev.arg_matching.push_back(k);
  }
  ev.matching_part_a = m.value;

  ev.arg_routes = routing_subproblem(snap, lambda);
  ev.routing_costs.resize(snap.flows.size());
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    ev.routing_costs[f] = ev.arg_routes[f].cost;
    if (ev.arg_routes[f].reachable) ev.routing_part_b += ev.arg_routes[f].cost;
  }
  RateResult r = rate_subproblem(snap, ev.routing_costs);
  ev.arg_rates = r.rates;
  ev.rate_part_c = r.value;
  ev.g_value = -ev.rate_part_c - ev.matching_part_a;

  ev.subgradient.assign(static_cast<size_t>(snap.num_links()), 0.0);
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    const double q = ev.arg_rates[f];
    if (q == 0.0) continue;
    for (int l : ev.arg_routes[f].links) ev.subgradient[static_cast<size_t>(l)] += q;
  }
  for (int k : ev.arg_matching) {
    const LctEdge& e = snap.lct_edges[static_cast<size_t>(k)];
    ev.subgradient[static_cast<size_t>(2 * e.pair)] -= e.capacity;
    ev.subgradient[static_cast<size_t>(2 * e.pair + 1)] -= e.capacity;
  }
  return ev;
}

void LaduConfig::validate() const {
  if (iterations_K < 1) throw DomainError("iterations_K must be at least 1");
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw DomainError("alpha0 must lie in (0,1)");
  if (!(beta >= 0.5 && beta < 1.0)) throw DomainError("beta must lie in [0.5,1)");
  if (!(initial_lambda >= 0.0 && initial_lambda <= 1.0)) {
    throw DomainError("initial_lambda must lie in [0,1]");
  }
}

LaduResult ladu_descent(const ConstellationSnapshot& snap, const LaduConfig& cfg) {
  cfg.validate();
  LaduResult res;
  Multipliers lambda = uniform_multipliers(snap, cfg.initial_lambda);
  res.best_g = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= cfg.iterations_K; ++k) {
    DualEval ev;
    try {
      ev = dual_function(snap, lambda, cfg.matching_mode);
    } catch (const Error& e) {
      throw Error("ladu iteration " + std::to_string(k) + ": " + e.what());
    }
    res.g_trace.push_back(ev.g_value);
    if (ev.g_value > res.best_g) {
      res.best_g = ev.g_value;
      res.best_lambda = lambda;
      res.best_iteration = k;
    }
    if (k == cfg.iterations_K) break;
    const double step = cfg.alpha0 / std::pow(static_cast<double>(k), cfg.beta);
    for (size_t l = 0; l < lambda.size(); ++l) {
      lambda[l] = std::clamp(lambda[l] + step * ev.subgradient[l], 0.0, 1.0);
    }
  }
  res.final_lambda = lambda;
  return res;
}

}  // namespace lislopt
