#include "lislopt/traffic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lislopt/error.hpp"

namespace lislopt {

namespace {

constexpr double kDeg = kPi / 180.0;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  size_t k = 0;
  while (k < s.size() && s[k] == ' ') ++k;
  return s.substr(k);
}

double to_double(const std::string& cell, int line, const std::string& path) {
  try {
    size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path + ": non-numeric value '" + cell + "'", line);
  }
}

std::vector<GroundPoint> load_points(const std::string& path, const std::string& header,
                                     bool weighted) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string line;
  int line_no = 0;
  std::vector<GroundPoint> pts;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw ParseError(path + ": expected header '" + header + "'", line_no);
      seen_header = true;
      continue;
    }
    auto cells = split_csv(line);
    if (cells.size() < 3) throw ParseError(path + ": expected 3 columns", line_no);
    GroundPoint g;
    const double lat = to_double(strip(cells[0]), line_no, path);
    const double lon = to_double(strip(cells[1]), line_no, path);
    if (std::abs(lat) > 90.0) throw ParseError(path + ": latitude out of range", line_no);
    g.latitude = lat * kDeg;
    g.longitude = lon * kDeg;
    g.weight = weighted ? to_double(strip(cells[2]), line_no, path) : 1.0;
    if (weighted && g.weight < 0.0) throw ParseError(path + ": negative population", line_no);
    pts.push_back(g);
  }
  if (!seen_header) throw ParseError(path + ": missing header '" + header + "'");
  return pts;
}

}  // namespace

void TrafficParams::validate() const {
  if (!(per_user_rate_D > 0.0)) throw DomainError("per_user_rate_D must be positive");
  if (!(gateway_rate_Q > 0.0)) throw DomainError("gateway_rate_Q must be positive");
  if (nearest_gateways_M < 1) throw DomainError("nearest_gateways_M must be at least 1");
  if (!(coverage_radius > 0.0)) throw DomainError("coverage_radius must be positive");
  if (!(activity_fraction > 0.0 && activity_fraction <= 1.0)) {
    throw DomainError("activity_fraction must lie in (0,1]");
  }
}

std::vector<GroundPoint> load_population_csv(const std::string& path) {
  return load_points(path, "lat_deg,lon_deg,population", true);
}

std::vector<GroundPoint> load_gateways_csv(const std::string& path) {
  return load_points(path, "lat_deg,lon_deg,name", false);
}

double surface_distance(double lat1, double lon1, double lat2, double lon2) {
  const double sdlat = std::sin(0.5 * (lat2 - lat1));
  const double sdlon = std::sin(0.5 * (lon2 - lon1));
  double h = sdlat * sdlat + std::cos(lat1) * std::cos(lat2) * sdlon * sdlon;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadius * std::asin(std::sqrt(h));
}

void subsatellite_point(const SatelliteState& s, double unix_time, double& lat, double& lon) {
  const Vec3& r = s.position;
  lat = std::asin(r.z / r.norm());
  lon = std::atan2(r.y, r.x) - greenwich_angle(unix_time);
  lon = std::remainder(lon, 2.0 * kPi);
}

double covered_population(const SatelliteState& s, const std::vector<GroundPoint>& points,
                          double radius, double unix_time) {
  if (points.empty()) return 0.0;
  double lat = 0.0, lon = 0.0;
  subsatellite_point(s, unix_time, lat, lon);
  double total = 0.0;
  for (const auto& p : points) {
    if (surface_distance(lat, lon, p.latitude, p.longitude) <= radius) total += p.weight;
  }
  return total;
}

bool gateway_visible(const SatelliteState& s, const std::vector<GroundPoint>& gateways,
                     double radius, double unix_time) {
  if (gateways.empty()) return false;
  double lat = 0.0, lon = 0.0;
  subsatellite_point(s, unix_time, lat, lon);
  for (const auto& g : gateways) {
    if (surface_distance(lat, lon, g.latitude, g.longitude) <= radius) return true;
  }
  return false;
}

long draw_active_users(double population, const TrafficParams& p, long sat_key, double epoch) {
  if (population < 0.0) throw DomainError("population must be non-negative");
  const double mean = p.activity_fraction * population;
  if (mean <= 0.0) return 0;
  const auto eb = std::bit_cast<std::uint64_t>(epoch);
  std::seed_seq seq{static_cast<std::uint32_t>(p.rng_seed), static_cast<std::uint32_t>(p.rng_seed >> 32),
                    static_cast<std::uint32_t>(sat_key), static_cast<std::uint32_t>(eb),
                    static_cast<std::uint32_t>(eb >> 32)};
  std::mt19937_64 rng(seq);
  std::poisson_distribution<long> dist(mean);
  return dist(rng);
}

double serving_rate(long users, bool has_gateway, const TrafficParams& p) {
  if (users < 0) throw DomainError("user count must be non-negative");
  if (!has_gateway) return 0.0;
  return std::max(p.gateway_rate_Q - static_cast<double>(users) * p.per_user_rate_D, 0.0);
}

double demand_rate(long users, bool has_gateway, const TrafficParams& p) {
  if (users < 0) throw DomainError("user count must be non-negative");
  const double load = static_cast<double>(users) * p.per_user_rate_D;
  if (!has_gateway) return load;
  return std::max(load - p.gateway_rate_Q, 0.0);
}

std::vector<Flow> flow_pairs(const std::vector<SatelliteState>& states,
                             const std::vector<double>& serving_Q,
                             const std::vector<double>& demand_D, int M, bool* no_servers) {
  const int n = static_cast<int>(states.size());
  if (static_cast<int>(serving_Q.size()) != n || static_cast<int>(demand_D.size()) != n) {
    throw ValidationError("traffic vectors do not match the satellite count");
  }
  if (M < 1) throw DomainError("M must be at least 1");
  std::vector<int> servers;
  for (int i = 0; i < n; ++i) {
    if (serving_Q[static_cast<size_t>(i)] > 0.0) servers.push_back(i);
  }
  std::vector<Flow> flows;
  bool any_demand = false;
  for (int d = 0; d < n; ++d) {
    if (!(demand_D[static_cast<size_t>(d)] > 0.0)) continue;
    any_demand = true;
    std::vector<std::pair<double, int>> cand;
    for (int s : servers) {
      if (s == d) continue;
      cand.emplace_back((states[static_cast<size_t>(s)].position -
                         states[static_cast<size_t>(d)].position)
                            .norm(),
                        s);
    }
    const size_t k = std::min(cand.size(), static_cast<size_t>(M));
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k), cand.end());
    for (size_t r = 0; r < k; ++r) flows.push_back({cand[r].second, d});
  }
  if (no_servers) *no_servers = any_demand && servers.empty();
  return flows;
}

TrafficState compute_traffic(const std::vector<SatelliteState>& states,
                             const std::vector<long>& sat_keys,
                             const std::vector<GroundPoint>& population,
                             const std::vector<GroundPoint>& gateways, const TrafficParams& p,
                             double epoch, double unix_time) {
  if (sat_keys.size() != states.size()) throw ValidationError("sat_keys size mismatch");
  TrafficState t;
  const size_t n = states.size();
  t.users.resize(n);
  t.has_gateway.resize(n);
  t.serving_Q.resize(n);
  t.demand_D.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double pop = covered_population(states[i], population, p.coverage_radius, unix_time);
    const bool gw = gateway_visible(states[i], gateways, p.coverage_radius, unix_time);
    const long u = draw_active_users(pop, p, sat_keys[i], epoch);
    t.users[i] = u;
    t.has_gateway[i] = gw ? 1 : 0;
    t.serving_Q[i] = serving_rate(u, gw, p);
    t.demand_D[i] = demand_rate(u, gw, p);
  }
  return t;
}

}  // namespace lislopt
