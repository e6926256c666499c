#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "lislopt/baselines.hpp"
#include "lislopt/error.hpp"
#include "lislopt/scenario.hpp"
#include "oracles.hpp"

using namespace lislopt;

namespace {

// Independent greedy: order by weight desc, then (n, m).
std::vector<int> greedy_oracle(const ConstellationSnapshot& s,
                               const std::function<double(const LctEdge&)>& weight) {
  std::vector<int> order(s.lct_edges.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::vector<double> w;
  for (const auto& e : s.lct_edges) w.push_back(weight(e));
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (w[a] != w[b]) return w[a] > w[b];
    const auto& ea = s.lct_edges[a];
    const auto& eb = s.lct_edges[b];
    return ea.n != eb.n ? ea.n < eb.n : ea.m < eb.m;
  });
  std::vector<char> used(s.lcts.size(), 0);
  std::vector<int> out;
  for (int k : order) {
    const auto& e = s.lct_edges[static_cast<size_t>(k)];
    if (used[e.n] || used[e.m]) continue;
    used[e.n] = used[e.m] = 1;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Four satellites in a ring, two terminals each (2i forward, 2i+1 back),
// plus a diagonal 0-2 that competes for terminals 0 and 5.
ConstellationSnapshot ring_fixture() {
  std::vector<int> owner = {0, 0, 1, 1, 2, 2, 3, 3};
  std::vector<LctEdge> edges = {{0, 3, 2.0, -1},   // 0-1
                                {2, 5, 5.0, -1},   // 1-2
                                {4, 7, 3.0, -1},   // 2-3
                                {1, 6, 4.0, -1},   // 3-0
                                {0, 5, 1.5, -1}};  // 0-2
  return snapshot_from_parts(4, owner, edges, {6, 6, 0, 0}, {0, 0, 5, 5}, {{0, 2}, {1, 3}});
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("mrate examples") {
  auto one = snapshot_from_parts(2, {0, 1}, {{0, 1, 0.7, -1}}, {0, 0}, {0, 0}, {});
  CHECK(match_mrate(one) == std::vector<int>{0});
  CHECK(match_random(one, 99) == std::vector<int>{0});

  auto two = snapshot_from_parts(3, {0, 1, 2}, {{0, 1, 5.0, -1}, {0, 2, 7.0, -1}}, {0, 0, 0},
                                 {0, 0, 0}, {});
  CHECK(match_mrate(two) == std::vector<int>{1});
}

TEST_CASE("grid weights") {
  SatelliteState a, b;
  a.sat_id = 0;
  a.position = {7e6, 0, 0};
  b.sat_id = 1;
  b.position = {7e6, 1e6, 0};
  auto s = snapshot_from_parts(2, {0, 1, 0, 1}, {{0, 1, 1.0, -1}, {2, 3, 1.0, -1}}, {0, 0},
                               {0, 0}, {});
  s.satellites = {a, b};
  s.lcts[0].mount_direction = {0, 1, 0};
  s.lcts[1].mount_direction = {0, -1, 0};
  s.lcts[2].mount_direction = {0, 0, 1};
  s.lcts[3].mount_direction = {1, 0, 0};
  CHECK(grid_weight(s, s.lct_edges[0]) == doctest::Approx(2.0));
  CHECK(grid_weight(s, s.lct_edges[1]) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(match_grid(s) == std::vector<int>{0, 1});
}

TEST_CASE("heuristic matchers match a duplicate greedy") {
  auto sc = oracle::desk_scenario(30);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto snap = sample_snapshot(sc, 0.0, seed);
    CHECK(match_mrate(snap) == greedy_oracle(snap, [](const LctEdge& e) { return e.capacity; }));
    CHECK(match_grid(snap) == greedy_oracle(snap, [&](const LctEdge& e) {
            const auto& tn = snap.lcts[static_cast<size_t>(e.n)];
            const auto& tm = snap.lcts[static_cast<size_t>(e.m)];
            const auto& pa = snap.satellites[static_cast<size_t>(tn.sat_id)].position;
            const auto& pb = snap.satellites[static_cast<size_t>(tm.sat_id)].position;
            const double dx = pb.x - pa.x, dy = pb.y - pa.y, dz = pb.z - pa.z;
            const double z = std::sqrt(dx * dx + dy * dy + dz * dz);
            const auto& u = tn.mount_direction;
            const auto& v = tm.mount_direction;
            return (dx * u.x + dy * u.y + dz * u.z - dx * v.x - dy * v.y - dz * v.z) / z;
          }));
    CHECK(match_random(snap, seed) == match_random(snap, seed));
  }
}

TEST_CASE("random matcher frequencies") {
  // star: terminal 0 against three others, each chosen with probability 1/3
  auto star = snapshot_from_parts(4, {0, 1, 2, 3}, {{0, 1, 1, -1}, {0, 2, 1, -1}, {0, 3, 1, -1}},
                                  {0, 0, 0, 0}, {0, 0, 0, 0}, {});
  // path a-b-c-d: the middle edge wins only when it has the top weight
  auto path = snapshot_from_parts(4, {0, 1, 1, 2, 2, 3},
                                  {{0, 1, 1, -1}, {2, 3, 1, -1}, {4, 5, 1, -1}}, {0, 0, 0, 0},
                                  {0, 0, 0, 0}, {});
  // exact probabilities by enumerating the 3! weight orders
  auto exact = [](const ConstellationSnapshot& s) {
    std::vector<double> p(3, 0.0);
    std::vector<int> perm = {0, 1, 2};
    do {
      std::vector<char> used(s.lcts.size(), 0);
      for (int k : perm) {
        const auto& e = s.lct_edges[static_cast<size_t>(k)];
        if (used[e.n] || used[e.m]) continue;
        used[e.n] = used[e.m] = 1;
        p[static_cast<size_t>(k)] += 1.0 / 6.0;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
  };
  for (const auto* s : {&star, &path}) {
    const auto p = exact(*s);
    std::vector<double> freq(3, 0.0);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      for (int k : match_random(*s, seed)) freq[static_cast<size_t>(k)] += 1e-3;
    }
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(freq[k] - p[k]) < 0.05);
  }
}

TEST_CASE("ospf routing") {
  // 0->2->3 over capacity 8 links beats 0->1->3 over capacity 2 links
  auto s = snapshot_from_parts(
      4, {0, 0, 1, 1, 2, 2, 3, 3},
      {{0, 2, 2.0, -1}, {1, 4, 8.0, -1}, {3, 6, 2.0, -1}, {5, 7, 8.0, -1}}, {1, 0, 0, 0},
      {0, 0, 0, 1}, {{0, 3}});
  REQUIRE(s.link_index(0, 1) >= 0);
  std::vector<int> all = {0, 1, 2, 3};
  std::vector<char> served;
  auto r = ospf_route(s, all, served);
  CHECK(served == std::vector<char>{1});
  CHECK(r[0].nodes == std::vector<int>{0, 2, 3});
  CHECK(r[0].cost == doctest::Approx(0.25));

  auto direct = snapshot_from_parts(2, {0, 1}, {{0, 1, 3.0, -1}}, {1, 0}, {0, 1}, {{0, 1}});
  r = ospf_route(direct, {0}, served);
  CHECK(r[0].nodes == std::vector<int>{0, 1});
  r = ospf_route(direct, {}, served);
  CHECK(served == std::vector<char>{0});

  // random instances against Bellman-Ford over the matched links
  for (std::uint64_t seed = 30; seed < 60; ++seed) {
    auto snap = oracle::random_tiny_instance(seed);
    auto m = match_mrate(snap);
    auto cap = matched_capacity(snap, m);
    std::vector<oracle::Arc> arcs;
    for (int l = 0; l < snap.num_links(); ++l) {
      if (cap[static_cast<size_t>(l / 2)] > 0)
        arcs.push_back({snap.link_from(l), snap.link_to(l), 1.0 / cap[static_cast<size_t>(l / 2)]});
    }
    auto routes = ospf_route(snap, m, served);
    for (size_t f = 0; f < snap.flows.size(); ++f) {
      const auto d = oracle::bellman_ford(snap.num_sats(), arcs, snap.flows[f].s);
      const double want = d[static_cast<size_t>(snap.flows[f].d)];
      CHECK(static_cast<bool>(served[f]) == std::isfinite(want));
      if (served[f]) CHECK(routes[f].cost == doctest::Approx(want));
    }
  }
}

TEST_CASE("sate pipeline") {
  auto idle = snapshot_from_parts(2, {0, 1}, {{0, 1, 3.0, -1}}, {0, 0}, {0, 0}, {});
  CHECK(sate_pipeline(idle).throughput == 0.0);

  auto chain = snapshot_from_parts(3, {0, 1, 1, 2}, {{0, 1, 4.0, -1}, {2, 3, 6.0, -1}},
                                   {7, 0, 0}, {0, 0, 9}, {{0, 2}});
  CHECK(sate_pipeline(chain).throughput == doctest::Approx(4.0));
  CHECK(parse_heuristic("rand") == HeuristicMatcher::random);
  CHECK(parse_heuristic("grid") == HeuristicMatcher::grid);
  CHECK_THROWS(parse_heuristic("ospf"));
}

TEST_CASE("brute force fixtures") {
  auto single = snapshot_from_parts(2, {0, 1}, {{0, 1, 3.0, -1}}, {5, 0}, {0, 4}, {{0, 1}});
  CHECK(brute_force_p1(single).throughput == doctest::Approx(3.0));
  auto none = snapshot_from_parts(2, {0, 1}, {{0, 1, 3.0, -1}}, {5, 0}, {0, 0}, {});
  CHECK(brute_force_p1(none).throughput == 0.0);

  // Hand enumeration of the ring: the full matching dominates the diagonal
  // one. Flow 0->2 via 3 carries 3, flow 1->3 via 2 carries 3, on separate
  // link directions: 6 in total.
  auto ring = ring_fixture();
  auto res = brute_force_p1(ring);
  CHECK(res.throughput == doctest::Approx(6.0));
  CHECK(verify_feasibility(ring, res.solution).pass());
  CHECK(res.solution.routes[0].nodes == std::vector<int>{0, 3, 2});
  CHECK(res.solution.routes[1].nodes == std::vector<int>{1, 2, 3});

  oracle::TinySpec big;
  big.min_sats = 9;
  big.max_sats = 9;
  CHECK_THROWS_AS(brute_force_p1(oracle::random_tiny_instance(1, big)), CapacityError);
}

TEST_CASE("oracle dominance and feasibility") {
  for (std::uint64_t seed = 900; seed < 930; ++seed) {
    auto snap = oracle::random_tiny_instance(seed);
    const double opt = brute_force_p1(snap).throughput;
    std::vector<PrimalSolution> sols = {
        sate_pipeline(snap, HeuristicMatcher::mrate), sate_pipeline(snap, HeuristicMatcher::grid),
        sate_pipeline(snap, HeuristicMatcher::random, seed), sate_pipeline(snap)};
    for (const auto& s : sols) {
      CHECK(verify_feasibility(snap, s).pass());
      CHECK(s.throughput <= opt + 1e-8);
    }
    CHECK(sate_pipeline(snap, HeuristicMatcher::random, seed).throughput ==
          sate_pipeline(snap, HeuristicMatcher::random, seed).throughput);
  }
}

}  // TEST_SUITE
