#include "lislopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lislopt/error.hpp"

namespace lislopt {

void GeometryParams::validate() const {
  if (!(max_range_zhat > 0.0)) throw DomainError("max_range_zhat must be positive");
  if (!(for_half_angle_theta > 0.0 && for_half_angle_theta <= kPi)) {
    throw DomainError("for_half_angle_theta must lie in (0, pi]");
  }
  if (lcts_per_sat < 1) throw DomainError("lcts_per_sat must be at least 1");
}

int ConstellationSnapshot::link_index(int i, int j) const {
  auto it = pair_lookup_.find({std::min(i, j), std::max(i, j)});
  if (it == pair_lookup_.end() || i == j) return -1;
  return 2 * it->second + (i < j ? 0 : 1);
}

int ConstellationSnapshot::link_from(int link) const {
  const SatPair& p = pairs[static_cast<size_t>(link / 2)];
  return (link & 1) ? p.j : p.i;
}

int ConstellationSnapshot::link_to(int link) const {
  const SatPair& p = pairs[static_cast<size_t>(link / 2)];
  return (link & 1) ? p.i : p.j;
}

void ConstellationSnapshot::index_links() {
  pairs = build_sat_graph(lct_edges, lcts);
  pair_lookup_.clear();
  for (size_t p = 0; p < pairs.size(); ++p) pair_lookup_[{pairs[p].i, pairs[p].j}] = static_cast<int>(p);
}

void ConstellationSnapshot::check() const {
  const int I = num_sats();
  if (static_cast<int>(serving_Q.size()) != I || static_cast<int>(demand_D.size()) != I) {
    throw ValidationError("node feature length differs from satellite count");
  }
  for (size_t k = 0; k < satellites.size(); ++k) {
    if (satellites[k].sat_id != static_cast<int>(k)) throw ValidationError("satellite ids not dense");
  }
  for (size_t k = 0; k < lcts.size(); ++k) {
    if (lcts[k].lct_id != static_cast<int>(k)) throw ValidationError("lct ids not dense");
    if (lcts[k].sat_id < 0 || lcts[k].sat_id >= I) throw ValidationError("lct on unknown satellite");
  }
  const int N = static_cast<int>(lcts.size());
  for (size_t e = 0; e < lct_edges.size(); ++e) {
    const LctEdge& le = lct_edges[e];
    if (le.n < 0 || le.m >= N || le.n >= le.m) throw ValidationError("malformed lct edge");
    if (lct_sat(le.n) == lct_sat(le.m)) throw ValidationError("lct edge within one satellite");
    if (!(le.capacity > 0.0)) throw ValidationError("non-positive lct edge capacity");
    if (le.pair < 0 || le.pair >= static_cast<int>(pairs.size())) {
      throw ValidationError("lct edge not indexed to a satellite pair");
    }
  }
  for (const Flow& f : flows) {
    if (f.s < 0 || f.s >= I || f.d < 0 || f.d >= I || f.s == f.d) {
      throw ValidationError("malformed flow pair");
    }
    if (!(demand_D[static_cast<size_t>(f.d)] > 0.0)) {
      throw ValidationError("flow toward a satellite without demand");
    }
  }
}

bool lct_connectable(const SatelliteState& a, const LctTerminal& n, const SatelliteState& b,
                     const LctTerminal& m, const GeometryParams& geo) {
  if (a.sat_id == b.sat_id) return false;
  const Vec3 diff = b.position - a.position;
  const double z = diff.norm();
  if (!(z > 0.0) || z > geo.max_range_zhat) return false;
  const Vec3 d = diff / z;
  const double c = std::cos(geo.for_half_angle_theta);
  return dot(d, n.mount_direction) > c && dot(-d, m.mount_direction) > c;
}

std::vector<LctEdge> build_lct_graph(const std::vector<SatelliteState>& states,
                                     const std::vector<LctTerminal>& lcts,
                                     const GeometryParams& geo, const OpticalParams& opt) {
  std::vector<std::vector<int>> by_sat(states.size());
  for (const auto& t : lcts) {
    if (t.sat_id < 0 || t.sat_id >= static_cast<int>(states.size())) {
      throw ValidationError("terminal " + std::to_string(t.lct_id) + " on unknown satellite");
    }
    if (t.lct_id != static_cast<int>(&t - lcts.data())) throw ValidationError("lct ids not dense");
    by_sat[static_cast<size_t>(t.sat_id)].push_back(t.lct_id);
  }
  std::vector<LctEdge> edges;
  const double zhat2 = geo.max_range_zhat * geo.max_range_zhat;
  for (size_t i = 0; i < states.size(); ++i) {
    if (by_sat[i].empty()) continue;
    for (size_t j = i + 1; j < states.size(); ++j) {
      if (by_sat[j].empty()) continue;
      const Vec3 diff = states[j].position - states[i].position;
      const double z2 = dot(diff, diff);
      if (z2 > zhat2 || z2 == 0.0) continue;
      double rate = -1.0;
      for (int ln : by_sat[i]) {
        for (int lm : by_sat[j]) {
          const LctTerminal& tn = lcts[static_cast<size_t>(ln)];
          const LctTerminal& tm = lcts[static_cast<size_t>(lm)];
          if (!lct_connectable(states[i], tn, states[j], tm, geo)) continue;
          if (rate < 0.0) rate = lisl_rate(std::sqrt(z2), opt);
          edges.push_back({std::min(ln, lm), std::max(ln, lm), rate, -1});
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const LctEdge& a, const LctEdge& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  });
  return edges;
}

std::vector<SatPair> build_sat_graph(std::vector<LctEdge>& edges,
                                     const std::vector<LctTerminal>& lcts) {
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (size_t e = 0; e < edges.size(); ++e) {
    const int a = lcts.at(static_cast<size_t>(edges[e].n)).sat_id;
    const int b = lcts.at(static_cast<size_t>(edges[e].m)).sat_id;
    groups[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(e));
  }
  std::vector<SatPair> pairs;
  pairs.reserve(groups.size());
  for (auto& [key, idx] : groups) {
    SatPair p;
    p.i = key.first;
    p.j = key.second;
    p.edges = idx;
    for (int e : idx) {
      p.capacity += edges[static_cast<size_t>(e)].capacity;
      edges[static_cast<size_t>(e)].pair = static_cast<int>(pairs.size());
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<std::vector<double>> edge_feature_matrix(const ConstellationSnapshot& snap) {
  const size_t I = snap.satellites.size();
  std::vector<std::vector<double>> R(I, std::vector<double>(I, 0.0));
  for (const SatPair& p : snap.pairs) {
    R[static_cast<size_t>(p.i)][static_cast<size_t>(p.j)] = p.capacity;
    R[static_cast<size_t>(p.j)][static_cast<size_t>(p.i)] = p.capacity;
  }
  return R;
}

std::vector<LctTerminal> all_terminals(const std::vector<SatelliteState>& states, int per_sat) {
  std::vector<LctTerminal> out;
  out.reserve(states.size() * static_cast<size_t>(per_sat));
  for (const auto& s : states) {
    auto t = mount_directions(s, per_sat, static_cast<int>(out.size()));
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

ConstellationSnapshot snapshot_from_parts(int num_sats, const std::vector<int>& lct_owner,
                                          const std::vector<LctEdge>& edges,
                                          std::vector<double> serving_Q,
                                          std::vector<double> demand_D, std::vector<Flow> flows) {
  ConstellationSnapshot s;
  s.satellites.resize(static_cast<size_t>(num_sats));
  s.catalog_ids.resize(static_cast<size_t>(num_sats));
  for (int i = 0; i < num_sats; ++i) {
    s.satellites[static_cast<size_t>(i)].sat_id = i;
    s.catalog_ids[static_cast<size_t>(i)] = i;
  }
  for (size_t k = 0; k < lct_owner.size(); ++k) {
    s.lcts.push_back({static_cast<int>(k), lct_owner[k], Vec3{1.0, 0.0, 0.0}});
  }
  s.lct_edges = edges;
  for (auto& e : s.lct_edges) {
    if (e.n > e.m) std::swap(e.n, e.m);
    e.pair = -1;
  }
  std::sort(s.lct_edges.begin(), s.lct_edges.end(), [](const LctEdge& a, const LctEdge& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  });
  s.serving_Q = std::move(serving_Q);
  s.demand_D = std::move(demand_D);
  s.flows = std::move(flows);
  s.index_links();
  s.check();
  return s;
}

// --- coherent time ----------------------------------------------------------

namespace {

struct EdgeRef {
  int sat_a, local_a, sat_b, local_b;
};

double loss_at(const std::vector<OrbitalElements>& elements, const std::vector<EdgeRef>& refs,
               const std::vector<int>& involved, double t, const GeometryParams& geo) {
  std::vector<SatelliteState> states(elements.size());
  std::vector<std::vector<LctTerminal>> mounts(elements.size());
  for (int i : involved) {
    states[static_cast<size_t>(i)] = propagate(elements[static_cast<size_t>(i)], t);
    states[static_cast<size_t>(i)].sat_id = i;
    mounts[static_cast<size_t>(i)] =
        mount_directions(states[static_cast<size_t>(i)], geo.lcts_per_sat);
  }
  size_t lost = 0;
  for (const auto& r : refs) {
    const auto& a = states[static_cast<size_t>(r.sat_a)];
    const auto& b = states[static_cast<size_t>(r.sat_b)];
    if (!lct_connectable(a, mounts[static_cast<size_t>(r.sat_a)][static_cast<size_t>(r.local_a)], b,
                         mounts[static_cast<size_t>(r.sat_b)][static_cast<size_t>(r.local_b)], geo)) {
      ++lost;
    }
  }
  return refs.empty() ? 0.0 : static_cast<double>(lost) / static_cast<double>(refs.size());
}

std::vector<EdgeRef> edge_refs(const std::vector<LctTerminal>& lcts,
                               const std::vector<LctEdge>& edges, int per_sat) {
  std::vector<EdgeRef> refs;
  refs.reserve(edges.size());
  for (const auto& e : edges) {
    const auto& tn = lcts[static_cast<size_t>(e.n)];
    const auto& tm = lcts[static_cast<size_t>(e.m)];
    refs.push_back({tn.sat_id, tn.lct_id - tn.sat_id * per_sat, tm.sat_id,
                    tm.lct_id - tm.sat_id * per_sat});
  }
  return refs;
}

std::vector<int> involved_sats(const std::vector<EdgeRef>& refs, size_t n) {
  std::vector<char> mark(n, 0);
  for (const auto& r : refs) {
    mark[static_cast<size_t>(r.sat_a)] = 1;
    mark[static_cast<size_t>(r.sat_b)] = 1;
  }
  std::vector<int> out;
  for (size_t i = 0; i < n; ++i) {
    if (mark[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

double coherent_loss_fraction(const ConstellationSnapshot& reference, double elapsed,
                              const GeometryParams& geo) {
  if (!(elapsed >= 0.0)) throw DomainError("elapsed time must be non-negative");
  if (reference.lct_edges.empty()) return 0.0;
  if (elapsed == 0.0) return 0.0;
  if (reference.elements.size() != reference.satellites.size()) {
    throw ValidationError("coherence needs orbital elements for every satellite");
  }
  for (const auto& t : reference.lcts) {
    const int local = t.lct_id - t.sat_id * geo.lcts_per_sat;
    if (local < 0 || local >= geo.lcts_per_sat) {
      throw ValidationError("terminal layout differs from lcts_per_sat");
    }
  }
  auto refs = edge_refs(reference.lcts, reference.lct_edges, geo.lcts_per_sat);
  auto involved = involved_sats(refs, reference.elements.size());
  return loss_at(reference.elements, refs, involved, reference.epoch_t + elapsed, geo);
}

CoherenceResult estimate_coherent_time(const std::vector<OrbitalElements>& elements,
                                       const GeometryParams& geo, const CoherenceOptions& opt) {
  if (!(opt.threshold_ratio > 0.0 && opt.threshold_ratio < 1.0)) {
    throw DomainError("threshold_ratio must lie in (0,1)");
  }
  if (opt.sample_count < 1) throw DomainError("sample_count must be at least 1");
  geo.validate();
  const double allowed = 1.0 - opt.threshold_ratio;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> start(0.0, opt.start_window);

  CoherenceResult res;
  double total = 0.0;
  OpticalParams unlimited;
  unlimited.max_range_zhat = geo.max_range_zhat;
  for (int k = 0; k < opt.sample_count; ++k) {
    const double t0 = start(rng);
    std::vector<SatelliteState> states;
    states.reserve(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
      auto s = propagate(elements[i], t0);
      s.sat_id = static_cast<int>(i);
      states.push_back(s);
    }
    auto lcts = all_terminals(states, geo.lcts_per_sat);
    auto edges = build_lct_graph(states, lcts, geo, unlimited);
    if (edges.empty()) {
      ++res.samples_skipped;
      continue;
    }
    auto refs = edge_refs(lcts, edges, geo.lcts_per_sat);
    auto involved = involved_sats(refs, elements.size());
    auto exceeded = [&](double dt) {
      return loss_at(elements, refs, involved, t0 + dt, geo) > allowed;
    };
    double value = opt.horizon;
    if (exceeded(opt.horizon)) {
      double lo = 0.0, hi = opt.horizon;
      while (hi - lo > opt.resolution) {
        const double mid = 0.5 * (lo + hi);
        if (exceeded(mid)) hi = mid;
        else lo = mid;
      }
      value = hi;
    } else {
      ++res.saturated;
    }
    total += value;
    ++res.samples_used;
  }
  if (res.samples_used == 0) throw Error("coherent time: no sampled epoch has any LCT edge");
  res.seconds = total / res.samples_used;
  return res;
}

}  // namespace lislopt
