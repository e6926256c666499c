#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lislopt/error.hpp"
#include "lislopt/graph.hpp"
#include "lislopt/scenario.hpp"
#include "oracles.hpp"

using namespace lislopt;

namespace {

constexpr double kDeg = kPi / 180.0;

SatelliteState at(int id, Vec3 r) {
  SatelliteState s;
  s.sat_id = id;
  s.position = r;
  return s;
}

// Pair scan written straight from the predicate, no range prefilter.
std::set<std::pair<int, int>> brute_edges(const std::vector<SatelliteState>& st,
                                          const std::vector<LctTerminal>& lcts, double zhat,
                                          double theta) {
  std::set<std::pair<int, int>> out;
  const double c = std::cos(theta);
  for (size_t a = 0; a < lcts.size(); ++a) {
    for (size_t b = a + 1; b < lcts.size(); ++b) {
      const auto& sa = st[static_cast<size_t>(lcts[a].sat_id)];
      const auto& sb = st[static_cast<size_t>(lcts[b].sat_id)];
      if (sa.sat_id == sb.sat_id) continue;
      const double dx = sb.position.x - sa.position.x, dy = sb.position.y - sa.position.y,
                   dz = sb.position.z - sa.position.z;
      const double z = std::sqrt(dx * dx + dy * dy + dz * dz);
      if (z > zhat) continue;
      const auto& u = lcts[a].mount_direction;
      const auto& w = lcts[b].mount_direction;
      const double da = (dx * u.x + dy * u.y + dz * u.z) / z;
      const double db = -(dx * w.x + dy * w.y + dz * w.z) / z;
      if (da > c && db > c) out.insert({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  return out;
}

std::set<std::pair<int, int>> as_set(const std::vector<LctEdge>& e) {
  std::set<std::pair<int, int>> out;
  for (const auto& x : e) out.insert({x.n, x.m});
  return out;
}

OrbitalElements circular(double a, double inc, double raan, double m0) {
  OrbitalElements el;
  el.semi_major_axis = a;
  el.inclination = inc;
  el.raan = raan;
  el.mean_anomaly_at_epoch = m0;
  el.mean_motion = std::sqrt(kEarthMu / (a * a * a));
  return el;
}

std::vector<SatelliteState> ring_states(int n, double a) {
  std::vector<SatelliteState> st;
  for (int k = 0; k < n; ++k) {
    auto s = propagate(circular(a, 0.9, 0.3, 2.0 * kPi * k / n), 0.0);
    s.sat_id = k;
    st.push_back(s);
  }
  return st;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("two facing terminals") {
  GeometryParams geo;
  geo.max_range_zhat = 3.0e6;
  OpticalParams opt;
  std::vector<SatelliteState> st = {at(0, {7e6, 0, 0}), at(1, {7e6, 1e6, 0})};
  std::vector<LctTerminal> lcts = {{0, 0, {0, 1, 0}}, {1, 1, {0, -1, 0}}};
  auto e = build_lct_graph(st, lcts, geo, opt);
  REQUIRE(e.size() == 1);
  CHECK(e[0].capacity == doctest::Approx(lisl_rate(1e6, opt)));

  st[1].position = {7e6, 4e6, 0};
  CHECK(build_lct_graph(st, lcts, geo, opt).empty());

  // same satellite never links
  std::vector<LctTerminal> same = {{0, 0, {0, 1, 0}}, {1, 0, {0, -1, 0}}};
  CHECK(build_lct_graph(st, same, geo, opt).empty());

  // exactly on the cone boundary is not connectable
  st[1].position = {7e6, 1e6, 0};
  geo.for_half_angle_theta = 60.0 * kDeg;
  const double c = std::cos(geo.for_half_angle_theta), s = std::sin(geo.for_half_angle_theta);
  std::vector<LctTerminal> edge = {{0, 0, {s, c, 0}}, {1, 1, {0, -1, 0}}};
  CHECK_FALSE(lct_connectable(st[0], edge[0], st[1], edge[1], geo));
  std::vector<LctTerminal> unknown = {{0, 5, {0, 1, 0}}};
  CHECK_THROWS_AS(build_lct_graph(st, unknown, geo, opt), ValidationError);
}

TEST_CASE("four-satellite ring with velocity mounts") {
  GeometryParams geo;
  geo.max_range_zhat = 1.0e7;
  auto st = ring_states(4, 6.921e6);
  auto lcts = all_terminals(st, 2);
  OpticalParams opt;
  opt.max_range_zhat = geo.max_range_zhat;
  auto e = build_lct_graph(st, lcts, geo, opt);
  CHECK(as_set(e) == brute_edges(st, lcts, geo.max_range_zhat, geo.for_half_angle_theta));
  CHECK(e.size() == 4);
  auto pairs = build_sat_graph(e, lcts);
  CHECK(pairs.size() == 4);
}

TEST_CASE("sampled constellations match the brute-force scan") {
  auto sc = oracle::desk_scenario(20);
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    auto snap = sample_snapshot(sc, 0.0, seed);
    for (double th : {30.0, 60.0, 90.0, 150.0}) {
      GeometryParams geo = sc.config.geometry;
      geo.for_half_angle_theta = th * kDeg;
      auto e = build_lct_graph(snap.satellites, snap.lcts, geo, sc.config.optics);
      CHECK(as_set(e) == brute_edges(snap.satellites, snap.lcts, geo.max_range_zhat, th * kDeg));
      for (const auto& x : e) {
        const auto& a = snap.satellites[static_cast<size_t>(snap.lct_sat(x.n))];
        const auto& b = snap.satellites[static_cast<size_t>(snap.lct_sat(x.m))];
        CHECK(x.capacity == doctest::Approx(lisl_rate((a.position - b.position).norm(),
                                                      sc.config.optics)));
        CHECK(x.capacity > 0.0);
        // swapping the endpoints gives the same verdict
        CHECK(lct_connectable(b, snap.lcts[static_cast<size_t>(x.m)], a,
                              snap.lcts[static_cast<size_t>(x.n)], geo));
      }
    }
  }
}

TEST_CASE("edge sets grow with the field of regard") {
  auto sc = oracle::desk_scenario(20);
  auto snap = sample_snapshot(sc, 0.0, 9);
  std::set<std::pair<int, int>> prev;
  for (double th = 10.0; th <= 180.0; th += 10.0) {
    GeometryParams geo = sc.config.geometry;
    geo.for_half_angle_theta = th * kDeg;
    auto cur = as_set(build_lct_graph(snap.satellites, snap.lcts, geo, sc.config.optics));
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST_CASE("satellite graph grouping") {
  std::vector<LctTerminal> lcts;
  for (int k = 0; k < 6; ++k) lcts.push_back({k, k / 2, {1, 0, 0}});
  std::vector<LctEdge> none;
  CHECK(build_sat_graph(none, lcts).empty());

  std::vector<LctEdge> two = {{2, 4, 3.0, -1}, {3, 5, 5.0, -1}};
  auto p = build_sat_graph(two, lcts);
  REQUIRE(p.size() == 1);
  CHECK(p[0].i == 1);
  CHECK(p[0].j == 2);
  CHECK(p[0].edges.size() == 2);
  CHECK(p[0].capacity == doctest::Approx(8.0));
  CHECK(two[0].pair == 0);

  auto snap = snapshot_from_parts(3, {0, 0, 1, 1, 2, 2}, two, {0, 0, 0}, {0, 0, 0}, {});
  auto R = edge_feature_matrix(snap);
  CHECK(R[1][2] == doctest::Approx(8.0));
  CHECK(R[2][1] == doctest::Approx(8.0));
  CHECK(R[0][1] == 0.0);
  CHECK(snap.link_index(1, 2) == 0);
  CHECK(snap.link_index(2, 1) == 1);
  CHECK(snap.link_index(0, 1) == -1);
  CHECK(snap.link_from(1) == 2);
  CHECK(snap.link_to(1) == 1);

  auto empty = snapshot_from_parts(2, {0, 1}, {}, {0, 0}, {0, 0}, {});
  CHECK(empty.num_links() == 0);
  CHECK(edge_feature_matrix(empty) == std::vector<std::vector<double>>(2, {0.0, 0.0}));
}

TEST_CASE("random satellite graphs match a rescan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int I = 20;
    std::vector<int> owner;
    for (int i = 0; i < I; ++i) owner.insert(owner.end(), {i, i, i});
    std::uniform_int_distribution<int> pick(0, 3 * I - 1);
    std::uniform_real_distribution<double> cap(0.1, 5.0);
    std::set<std::pair<int, int>> used;
    std::vector<LctEdge> edges;
    for (int k = 0; k < 40; ++k) {
      int n = pick(rng), m = pick(rng);
      if (owner[n] == owner[m] || used.count({std::min(n, m), std::max(n, m)})) continue;
      used.insert({std::min(n, m), std::max(n, m)});
      edges.push_back({n, m, cap(rng), -1});
    }
    auto snap = snapshot_from_parts(I, owner, edges, std::vector<double>(I), std::vector<double>(I),
                                    {});
    std::map<std::pair<int, int>, double> expect;
    for (const auto& e : edges) {
      const int a = owner[e.n], b = owner[e.m];
      expect[{std::min(a, b), std::max(a, b)}] += e.capacity;
    }
    REQUIRE(snap.pairs.size() == expect.size());
    auto R = edge_feature_matrix(snap);
    std::vector<double> row(I, 0.0);
    for (const auto& [k, v] : expect) {
      CHECK(snap.link_index(k.first, k.second) >= 0);
      CHECK(snap.link_index(k.second, k.first) >= 0);
      CHECK(R[k.first][k.second] == doctest::Approx(v));
      CHECK(R[k.second][k.first] == doctest::Approx(v));
      row[k.first] += v;
      row[k.second] += v;
    }
    size_t total_edges = 0;
    for (const auto& p : snap.pairs) total_edges += p.edges.size();
    CHECK(total_edges == edges.size());
    for (int i = 0; i < I; ++i) {
      double s = 0.0;
      for (int j = 0; j < I; ++j) s += R[i][j];
      CHECK(s == doctest::Approx(row[i]));
    }
  }
}

TEST_CASE("snapshot check rejects broken invariants") {
  CHECK_THROWS_AS(snapshot_from_parts(2, {0, 0}, {{0, 1, 1.0, -1}}, {0, 0}, {0, 0}, {}),
                  ValidationError);
  CHECK_THROWS_AS(snapshot_from_parts(2, {0, 1}, {{0, 1, 0.0, -1}}, {0, 0}, {0, 0}, {}),
                  ValidationError);
  // flow toward a satellite without demand
  CHECK_THROWS_AS(snapshot_from_parts(2, {0, 1}, {{0, 1, 1.0, -1}}, {1, 0}, {0, 0}, {{0, 1}}),
                  ValidationError);
}

TEST_CASE("coherent loss") {
  auto sc = oracle::desk_scenario(20);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto snap = sample_snapshot(sc, 0.0, seed);
    const auto& geo = sc.config.geometry;
    CHECK(coherent_loss_fraction(snap, 0.0, geo) == 0.0);
    const double f = coherent_loss_fraction(snap, 100.0, geo);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  auto snap = sample_snapshot(sc, 0.0, 1);
  CHECK_THROWS_AS(coherent_loss_fraction(snap, -1.0, sc.config.geometry), DomainError);
}

TEST_CASE("co-orbital pair keeps its edge") {
  GeometryParams geo;
  std::vector<OrbitalElements> els = {circular(6.921e6, 0.9, 0.3, 0.0),
                                      circular(6.921e6, 0.9, 0.3, 0.2)};
  ConstellationSnapshot snap;
  snap.elements = els;
  for (int i = 0; i < 2; ++i) {
    auto s = propagate(els[static_cast<size_t>(i)], 0.0);
    s.sat_id = i;
    snap.satellites.push_back(s);
  }
  snap.lcts = all_terminals(snap.satellites, 2);
  snap.lct_edges = build_lct_graph(snap.satellites, snap.lcts, geo, OpticalParams{});
  REQUIRE(snap.lct_edges.size() == 1);
  for (double dt : {0.5, 10.0, 100.0, 3000.0}) CHECK(coherent_loss_fraction(snap, dt, geo) == 0.0);

  CoherenceOptions opt;
  opt.sample_count = 3;
  auto res = estimate_coherent_time(els, geo, opt);
  CHECK(res.samples_used == 3);
  CHECK(res.all_saturated());
  CHECK(res.seconds == opt.horizon);

  // far apart, never any edge
  std::vector<OrbitalElements> apart = {circular(6.921e6, 0.9, 0.3, 0.0),
                                        circular(6.921e6, 0.9, 0.3, 3.0)};
  CHECK_THROWS_AS(estimate_coherent_time(apart, geo, opt), Error);
  opt.threshold_ratio = 1.0;
  CHECK_THROWS_AS(estimate_coherent_time(els, geo, opt), DomainError);
}

TEST_CASE("coherent time is monotone in the threshold") {
  auto sc = oracle::desk_scenario(200);
  std::vector<OrbitalElements> els;
  for (size_t i = 0; i < 200; ++i) els.push_back(sc.catalog[i * 7 % sc.catalog.size()].elements);
  CoherenceOptions a;
  a.sample_count = 3;
  a.threshold_ratio = 0.999;
  CoherenceOptions b = a;
  b.threshold_ratio = 0.99;
  const auto ra = estimate_coherent_time(els, sc.config.geometry, a);
  const auto rb = estimate_coherent_time(els, sc.config.geometry, b);
  CHECK(rb.seconds >= ra.seconds);
  CHECK(ra.seconds > 0.0);
}

}  // TEST_SUITE
