#pragma once

// Serving/demand rates and source-destination pairs from ground geography.

#include <cstdint>
#include <string>
#include <vector>

#include "lislopt/orbit.hpp"

namespace lislopt {

struct TrafficParams {
  double per_user_rate_D = 0.1;     // Gbit/s
  double gateway_rate_Q = 20.0;     // Gbit/s
  int nearest_gateways_M = 5;
  double coverage_radius = 200e3;   // m, great-circle on the Earth surface
  double activity_fraction = 1e-4;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct GroundPoint {
  double latitude = 0.0;   // rad
  double longitude = 0.0;  // rad
  double weight = 1.0;
};

// A served (s) / demanding (d) satellite pair, dense snapshot indices.
struct Flow {
  int s = 0;
  int d = 0;
  bool operator==(const Flow&) const = default;
  auto operator<=>(const Flow&) const = default;
};

// CSV with header lat_deg,lon_deg,population.
std::vector<GroundPoint> load_population_csv(const std::string& path);
// CSV with header lat_deg,lon_deg,name; every site gets weight 1.
std::vector<GroundPoint> load_gateways_csv(const std::string& path);

// Great-circle distance (m) on the spherical Earth.
double surface_distance(double lat1, double lon1, double lat2, double lon2);

// Earth-fixed latitude/longitude (rad) of the sub-satellite point.
void subsatellite_point(const SatelliteState& s, double unix_time, double& lat, double& lon);

double covered_population(const SatelliteState& s, const std::vector<GroundPoint>& points,
                          double radius, double unix_time);

bool gateway_visible(const SatelliteState& s, const std::vector<GroundPoint>& gateways,
                     double radius, double unix_time);

// Poisson(activity_fraction * population); the stream is keyed by
// (seed, satellite key, epoch) so draws do not depend on evaluation order.
long draw_active_users(double population, const TrafficParams& p, long sat_key, double epoch);

double serving_rate(long users, bool has_gateway, const TrafficParams& p);
double demand_rate(long users, bool has_gateway, const TrafficParams& p);

// Pairs every demander with its M nearest servers (Q > 0) by range, ties to
// the lower index. Ordered by demander, then by rank. `no_servers` is set
// when some demand exists but nobody can serve it.
std::vector<Flow> flow_pairs(const std::vector<SatelliteState>& states,
                             const std::vector<double>& serving_Q,
                             const std::vector<double>& demand_D, int M,
                             bool* no_servers = nullptr);

struct TrafficState {
  std::vector<long> users;
  std::vector<char> has_gateway;
  std::vector<double> serving_Q;
  std::vector<double> demand_D;
};

// Per-satellite traffic at scenario time `epoch` (Unix time `unix_time`).
// `sat_keys` identify satellites for the random stream (catalog ids).
TrafficState compute_traffic(const std::vector<SatelliteState>& states,
                             const std::vector<long>& sat_keys,
                             const std::vector<GroundPoint>& population,
                             const std::vector<GroundPoint>& gateways, const TrafficParams& p,
                             double epoch, double unix_time);

}  // namespace lislopt
