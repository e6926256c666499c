#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library code they check.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lislopt/lp.hpp"
#include "lislopt/matching.hpp"
#include "lislopt/scenario.hpp"

namespace oracle {

// --- LP ---------------------------------------------------------------------

struct LpOracleResult {
  bool feasible = false;
  bool bounded = true;  // only meaningful with a finite box supplied
  double objective = 0.0;
  std::vector<double> x;
};

// maximize c.x, A x <= b, 0 <= x <= u by enumerating every vertex: all
// choices of n tight constraints among the rows and bounds, solved by
// Gaussian elimination. Variables without an upper bound get `box`.
// Returns bounded=false when the optimum sits on the artificial box.
LpOracleResult lp_vertex_enumeration(const lislopt::LinearProgram& lp, double box = 1e6);

// --- graphs -----------------------------------------------------------------

struct Arc {
  int from = 0, to = 0;
  double w = 0.0;
};

// Single-source shortest distances (+inf when unreachable).
std::vector<double> bellman_ford(int n, const std::vector<Arc>& arcs, int source);

std::vector<char> bfs_reachable(int n, const std::vector<Arc>& arcs, int source);

// Maximum total weight over all matchings by recursion on edges.
double max_matching_weight(const std::vector<lislopt::WeightedEdge>& edges);

// All maximal matchings (each a sorted edge list).
std::vector<std::vector<int>> maximal_matchings(const std::vector<lislopt::WeightedEdge>& edges);

// --- orbits / geometry ------------------------------------------------------

struct State {
  long double r[3];
  long double v[3];
};

// Classical RK4 on the two-body equation; `steps` fixed steps over `dt`.
State rk4_two_body(State s, long double mu, long double dt, int steps);

// Great-circle distance via the spherical law of cosines on unit vectors.
double central_angle_distance(double lat1, double lon1, double lat2, double lon2, double radius);

// --- optics -----------------------------------------------------------------

struct OpticsInputs {
  long double P0, A, Psi, sigmaN, B, W0, zR, sigmaJ, eps;
};

long double beam_radius_ld(const OpticsInputs& o, long double z);
long double intensity_ld(const OpticsInputs& o, long double y, long double z);
// Outage-weighted rate in Gbit/s.
long double rate_gbps_ld(const OpticsInputs& o, long double z);

// --- instances --------------------------------------------------------------

struct TinySpec {
  int min_sats = 3, max_sats = 6;
  int lcts_per_sat = 2;
  int max_edges = 12;
  int max_flows = 4;
  double edge_prob = 0.5;
};

// Random snapshot built through snapshot_from_parts: random terminal pairs on
// distinct satellites, capacities in [0.3, 5], servers with Q in [1, 20] and
// demanders with D in [0.5, 8]. Positions and mounts are random but do not
// imply the edge set.
lislopt::ConstellationSnapshot random_tiny_instance(std::uint64_t seed, const TinySpec& spec = {});

// Random multipliers in [lo, hi] per directed link.
std::vector<double> random_lambda(const lislopt::ConstellationSnapshot& snap, std::mt19937_64& rng,
                                  double lo = 0.0, double hi = 1.0);

// --- scenario fixtures ------------------------------------------------------

std::string source_path(const std::string& rel);

// Scenario from configs/desk.json with I overridden.
lislopt::Scenario desk_scenario(int num_sats);

}  // namespace oracle
