#pragma once

// LCT connectivity graph, satellite adjacency graph and the snapshot that
// bundles them with traffic.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lislopt/optics.hpp"
#include "lislopt/orbit.hpp"
#include "lislopt/traffic.hpp"

namespace lislopt {

struct GeometryParams {
  double max_range_zhat = 3.0e6;                    // m
  double for_half_angle_theta = kPi / 3.0;          // rad
  int lcts_per_sat = 2;

  void validate() const;
};

// Unordered terminal pair, n < m.
struct LctEdge {
  int n = 0;
  int m = 0;
  double capacity = 0.0;  // Gbit/s
  int pair = -1;          // index into ConstellationSnapshot::pairs
};

// Unordered satellite pair, i < j, with the LCT edges joining them.
struct SatPair {
  int i = 0;
  int j = 0;
  std::vector<int> edges;
  double capacity = 0.0;  // sum of edge capacities (R_ij)
};

// Directed satellite links are numbered 2p (pairs[p].i -> pairs[p].j) and
// 2p+1 (the reverse).
struct ConstellationSnapshot {
  double epoch_t = 0.0;
  std::vector<SatelliteState> satellites;  // sat_id == position
  std::vector<long> catalog_ids;
  std::vector<OrbitalElements> elements;   // empty for hand-built instances
  std::vector<LctTerminal> lcts;           // lct_id == position, sat_id dense
  std::vector<LctEdge> lct_edges;
  std::vector<SatPair> pairs;
  std::vector<double> serving_Q;
  std::vector<double> demand_D;
  std::vector<Flow> flows;

  int num_sats() const { return static_cast<int>(satellites.size()); }
  int num_links() const { return 2 * static_cast<int>(pairs.size()); }
  // -1 when (i,j) is not a satellite link.
  int link_index(int i, int j) const;
  int link_from(int link) const;
  int link_to(int link) const;
  int reverse_link(int link) const { return link ^ 1; }
  int lct_sat(int lct) const { return lcts[static_cast<size_t>(lct)].sat_id; }

  // Rebuilds `pairs`, edge pair indices and the link lookup from lct_edges.
  void index_links();
  // Throws ValidationError if a documented snapshot invariant fails.
  void check() const;

 private:
  std::map<std::pair<int, int>, int> pair_lookup_;
};

// True when terminals n and m (on different satellites) can form a link.
bool lct_connectable(const SatelliteState& a, const LctTerminal& n, const SatelliteState& b,
                     const LctTerminal& m, const GeometryParams& geo);

// Every connectable terminal pair with capacity lisl_rate(z). Sorted by (n,m).
// `states` are indexed by sat_id.
std::vector<LctEdge> build_lct_graph(const std::vector<SatelliteState>& states,
                                     const std::vector<LctTerminal>& lcts,
                                     const GeometryParams& geo, const OpticalParams& opt);

// Groups LCT edges per unordered satellite pair; sets each edge's pair index.
std::vector<SatPair> build_sat_graph(std::vector<LctEdge>& edges,
                                     const std::vector<LctTerminal>& lcts);

std::vector<std::vector<double>> edge_feature_matrix(const ConstellationSnapshot& snap);

// Terminals for every satellite, N' per satellite, ids sat-major.
std::vector<LctTerminal> all_terminals(const std::vector<SatelliteState>& states, int per_sat);

// Minimal snapshot from explicit parts; used by tests and deserialization.
ConstellationSnapshot snapshot_from_parts(int num_sats, const std::vector<int>& lct_owner,
                                          const std::vector<LctEdge>& edges,
                                          std::vector<double> serving_Q,
                                          std::vector<double> demand_D, std::vector<Flow> flows);

// --- coherent time ----------------------------------------------------------

// Share of the reference snapshot's LCT edges that are no longer connectable
// after `elapsed` seconds. Needs orbital elements in the snapshot.
double coherent_loss_fraction(const ConstellationSnapshot& reference, double elapsed,
                              const GeometryParams& geo);

struct CoherenceOptions {
  double threshold_ratio = 0.999;
  int sample_count = 10;
  std::uint64_t seed = 1;
  double horizon = 100.0;        // s, grid maximum
  double resolution = 0.01;      // s
  double start_window = 6000.0;  // start epochs drawn uniformly from [0, window)
};

struct CoherenceResult {
  double seconds = 0.0;  // mean over used samples
  int samples_used = 0;
  int samples_skipped = 0;
  int saturated = 0;     // samples that never crossed within the horizon
  bool all_saturated() const { return samples_used > 0 && saturated == samples_used; }
};

// Throws Error when every sampled start epoch has an empty edge set.
CoherenceResult estimate_coherent_time(const std::vector<OrbitalElements>& elements,
                                       const GeometryParams& geo, const CoherenceOptions& opt);

}  // namespace lislopt
