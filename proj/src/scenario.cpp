#include "lislopt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "lislopt/baselines.hpp"
#include "lislopt/error.hpp"

namespace lislopt {

using nlohmann::json;

namespace {

constexpr double kDeg = kPi / 180.0;

// Rejects keys outside `allowed` so typos do not silently fall back to defaults.
void check_keys(const json& j, const std::string& section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ValidationError("config section '" + section + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ValidationError("unknown config key '" + section + "." + it.key() + "'");
  }
}

template <class T>
void get_opt(const json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config key '" + section + "." + key + "' has the wrong type");
  }
}

}  // namespace

LaduConfig SolverConfig::ladu() const {
  LaduConfig c;
  c.iterations_K = ladu_iterations;
  c.alpha0 = ladu_alpha0;
  c.beta = ladu_beta;
  c.initial_lambda = initial_lambda;
  c.matching_mode = matching_mode;
  return c;
}

void ScenarioConfig::validate() const {
  parse_iso8601_utc(orbital.t0);
  if (orbital.num_sats_I < 1) throw DomainError("orbital.num_sats_I must be at least 1");
  if (orbital.sampling != "uniform" && orbital.sampling != "regional") {
    throw DomainError("orbital.sampling must be 'uniform' or 'regional'");
  }
  if (orbital.density_reference_I < 1) throw DomainError("orbital.density_reference_I must be positive");
  optics.validate();
  geometry.validate();
  traffic.validate();
  solver.ladu().validate();
  parse_heuristic(solver.sate_matcher);
  if (!(solver.gnn_alpha0 > 0.0) || !(solver.gnn_beta > 0.0)) {
    throw DomainError("solver.gnn_alpha0 and gnn_beta must be positive");
  }
}

std::string ScenarioConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

ScenarioConfig config_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  check_keys(j, "config", {"orbital", "optics", "geometry", "traffic", "solver", "paths"});
  ScenarioConfig c;
  c.base_dir = base_dir;

  if (j.contains("orbital")) {
    const json& o = j["orbital"];
    check_keys(o, "orbital", {"t0", "num_sats_I", "sampling", "density_reference_I", "region_center_deg"});
    get_opt(o, "t0", c.orbital.t0, "orbital");
    get_opt(o, "num_sats_I", c.orbital.num_sats_I, "orbital");
    get_opt(o, "sampling", c.orbital.sampling, "orbital");
    get_opt(o, "density_reference_I", c.orbital.density_reference_I, "orbital");
    if (o.contains("region_center_deg") && !o["region_center_deg"].is_null()) {
      const json& rc = o["region_center_deg"];
      if (!rc.is_array() || rc.size() != 2 || !rc[0].is_number() || !rc[1].is_number()) {
        throw ValidationError("config key 'orbital.region_center_deg' must be [lat, lon]");
      }
      c.orbital.region_center_deg = std::make_pair(rc[0].get<double>(), rc[1].get<double>());
    }
  }
  if (j.contains("optics")) {
    const json& o = j["optics"];
    check_keys(o, "optics", {"P0_W", "aperture_m2", "responsivity_A_per_W", "noise_current_A",
                             "bandwidth_Hz", "wavelength_m", "waist_W0_m", "rayleigh_range_zR_m",
                             "jitter_sigma_rad", "outage_eps", "divergence_full_rad"});
    auto& p = c.optics;
    get_opt(o, "P0_W", p.tx_power_P0, "optics");
    get_opt(o, "aperture_m2", p.aperture_A, "optics");
    get_opt(o, "responsivity_A_per_W", p.responsivity_Psi, "optics");
    get_opt(o, "noise_current_A", p.noise_current_sigmaN, "optics");
    get_opt(o, "bandwidth_Hz", p.bandwidth_B, "optics");
    get_opt(o, "wavelength_m", p.wavelength, "optics");
    get_opt(o, "waist_W0_m", p.waist_W0, "optics");
    get_opt(o, "rayleigh_range_zR_m", p.rayleigh_range_zR, "optics");
    get_opt(o, "jitter_sigma_rad", p.jitter_sigmaJ, "optics");
    get_opt(o, "outage_eps", p.outage_eps, "optics");
    if (o.contains("divergence_full_rad") && !o["divergence_full_rad"].is_null()) {
      double div = 0.0;
      get_opt(o, "divergence_full_rad", div, "optics");
      p = with_divergence(p, div);
    }
  }
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    check_keys(g, "geometry", {"max_range_m", "for_half_angle_deg", "lcts_per_sat"});
    get_opt(g, "max_range_m", c.geometry.max_range_zhat, "geometry");
    double deg = c.geometry.for_half_angle_theta / kDeg;
    get_opt(g, "for_half_angle_deg", deg, "geometry");
    c.geometry.for_half_angle_theta = deg * kDeg;
    get_opt(g, "lcts_per_sat", c.geometry.lcts_per_sat, "geometry");
  }
  c.optics.max_range_zhat = c.geometry.max_range_zhat;
  if (j.contains("traffic")) {
    const json& t = j["traffic"];
    check_keys(t, "traffic", {"per_user_rate_gbps", "gateway_rate_gbps", "nearest_gateways_M",
                              "coverage_radius_m", "activity_fraction", "seed"});
    get_opt(t, "per_user_rate_gbps", c.traffic.per_user_rate_D, "traffic");
    get_opt(t, "gateway_rate_gbps", c.traffic.gateway_rate_Q, "traffic");
    get_opt(t, "nearest_gateways_M", c.traffic.nearest_gateways_M, "traffic");
    get_opt(t, "coverage_radius_m", c.traffic.coverage_radius, "traffic");
    get_opt(t, "activity_fraction", c.traffic.activity_fraction, "traffic");
    get_opt(t, "seed", c.traffic.rng_seed, "traffic");
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "solver", {"ladu_iterations", "ladu_alpha0", "ladu_beta", "initial_lambda",
                             "matching_mode", "recovery_mode", "sate_matcher", "random_seed",
                             "gnn_alpha0", "gnn_beta"});
    get_opt(s, "ladu_iterations", c.solver.ladu_iterations, "solver");
    get_opt(s, "ladu_alpha0", c.solver.ladu_alpha0, "solver");
    get_opt(s, "ladu_beta", c.solver.ladu_beta, "solver");
    get_opt(s, "initial_lambda", c.solver.initial_lambda, "solver");
    std::string mode;
    get_opt(s, "matching_mode", mode, "solver");
    if (!mode.empty()) c.solver.matching_mode = parse_matching_mode(mode);
    mode.clear();
    get_opt(s, "recovery_mode", mode, "solver");
    if (!mode.empty()) c.solver.recovery_mode = parse_matching_mode(mode);
    get_opt(s, "sate_matcher", c.solver.sate_matcher, "solver");
    get_opt(s, "random_seed", c.solver.random_seed, "solver");
    get_opt(s, "gnn_alpha0", c.solver.gnn_alpha0, "solver");
    get_opt(s, "gnn_beta", c.solver.gnn_beta, "solver");
  }
  if (j.contains("paths")) {
    const json& p = j["paths"];
    check_keys(p, "paths", {"tle", "population", "gateways"});
    get_opt(p, "tle", c.paths.tle, "paths");
    get_opt(p, "population", c.paths.population, "paths");
    get_opt(p, "gateways", c.paths.gateways, "paths");
  }
  c.validate();
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["orbital"] = {{"t0", c.orbital.t0},
                  {"num_sats_I", c.orbital.num_sats_I},
                  {"sampling", c.orbital.sampling},
                  {"density_reference_I", c.orbital.density_reference_I},
                  {"region_center_deg", c.orbital.region_center_deg
                                            ? json::array({c.orbital.region_center_deg->first,
                                                           c.orbital.region_center_deg->second})
                                            : json(nullptr)}};
  const auto& p = c.optics;
  j["optics"] = {{"P0_W", p.tx_power_P0},
                 {"aperture_m2", p.aperture_A},
                 {"responsivity_A_per_W", p.responsivity_Psi},
                 {"noise_current_A", p.noise_current_sigmaN},
                 {"bandwidth_Hz", p.bandwidth_B},
                 {"wavelength_m", p.wavelength},
                 {"waist_W0_m", p.waist_W0},
                 {"rayleigh_range_zR_m", p.rayleigh_range_zR},
                 {"jitter_sigma_rad", p.jitter_sigmaJ},
                 {"outage_eps", p.outage_eps}};
  j["geometry"] = {{"max_range_m", c.geometry.max_range_zhat},
                   {"for_half_angle_deg", c.geometry.for_half_angle_theta / kDeg},
                   {"lcts_per_sat", c.geometry.lcts_per_sat}};
  j["traffic"] = {{"per_user_rate_gbps", c.traffic.per_user_rate_D},
                  {"gateway_rate_gbps", c.traffic.gateway_rate_Q},
                  {"nearest_gateways_M", c.traffic.nearest_gateways_M},
                  {"coverage_radius_m", c.traffic.coverage_radius},
                  {"activity_fraction", c.traffic.activity_fraction},
                  {"seed", c.traffic.rng_seed}};
  j["solver"] = {{"ladu_iterations", c.solver.ladu_iterations},
                 {"ladu_alpha0", c.solver.ladu_alpha0},
                 {"ladu_beta", c.solver.ladu_beta},
                 {"initial_lambda", c.solver.initial_lambda},
                 {"matching_mode", to_string(c.solver.matching_mode)},
                 {"recovery_mode", to_string(c.solver.recovery_mode)},
                 {"sate_matcher", c.solver.sate_matcher},
                 {"random_seed", c.solver.random_seed},
                 {"gnn_alpha0", c.solver.gnn_alpha0},
                 {"gnn_beta", c.solver.gnn_beta}};
  j["paths"] = {{"tle", c.paths.tle}, {"population", c.paths.population}, {"gateways", c.paths.gateways}};
  return j;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
  auto dir = std::filesystem::path(path).parent_path().string();
  return config_from_json(j, dir.empty() ? "." : dir);
}

Scenario load_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario sc;
  sc.config = config;
  sc.t0_unix = parse_iso8601_utc(config.orbital.t0);
  sc.catalog = load_tle_file(config.resolve(config.paths.tle), sc.t0_unix);
  sc.population = load_population_csv(config.resolve(config.paths.population));
  sc.gateways = load_gateways_csv(config.resolve(config.paths.gateways));
  return sc;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ ((b << 29) | (b >> 35)) ^ 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ConstellationSnapshot build_snapshot(const std::vector<OrbitalElements>& elements,
                                     const std::vector<long>& catalog_ids, double t,
                                     const ScenarioConfig& config,
                                     const std::vector<GroundPoint>& population,
                                     const std::vector<GroundPoint>& gateways,
                                     std::uint64_t traffic_seed) {
  if (elements.size() != catalog_ids.size()) throw ValidationError("catalog_ids size mismatch");
  if (!(t >= 0.0)) throw DomainError("snapshot time must be >= 0");
  ConstellationSnapshot s;
  s.epoch_t = t;
  s.catalog_ids = catalog_ids;
  s.elements = elements;
  s.satellites.reserve(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    s.elements[i].sat_id = static_cast<int>(i);
    auto st = propagate(s.elements[i], t);
    st.sat_id = static_cast<int>(i);
    s.satellites.push_back(st);
  }
  TrafficParams tp = config.traffic;
  tp.rng_seed = traffic_seed;
  const double unix_time = parse_iso8601_utc(config.orbital.t0) + t;
  TrafficState traffic =
      compute_traffic(s.satellites, catalog_ids, population, gateways, tp, t, unix_time);
  for (size_t i = 0; i < s.satellites.size(); ++i) s.satellites[i].has_gateway = traffic.has_gateway[i] != 0;
  s.serving_Q = std::move(traffic.serving_Q);
  s.demand_D = std::move(traffic.demand_D);
  s.lcts = all_terminals(s.satellites, config.geometry.lcts_per_sat);
  OpticalParams opt = config.optics;
  opt.max_range_zhat = config.geometry.max_range_zhat;
  s.lct_edges = build_lct_graph(s.satellites, s.lcts, config.geometry, opt);
  s.index_links();
  s.flows = flow_pairs(s.satellites, s.serving_Q, s.demand_D, config.traffic.nearest_gateways_M);
  s.check();
  return s;
}

std::vector<int> sample_satellites(const Scenario& sc, double t, std::uint64_t seed) {
  const int I = sc.config.orbital.num_sats_I;
  const int C = static_cast<int>(sc.catalog.size());
  if (I > C) {
    throw CapacityError("requested " + std::to_string(I) + " satellites but the catalog holds " +
                        std::to_string(C));
  }
  std::mt19937_64 rng(mix_seed(seed, 0x5a7));
  std::vector<int> pool;
  const auto& orb = sc.config.orbital;
  if (orb.sampling == "regional" && I < orb.density_reference_I) {
    Vec3 center;
    double lat = 0.0, lon = 0.0;
    if (orb.region_center_deg) {
      lat = orb.region_center_deg->first * kPi / 180.0;
      lon = orb.region_center_deg->second * kPi / 180.0;
    } else {
      if (sc.population.empty()) throw Error("regional sampling needs population points");
      std::vector<double> w;
      for (const auto& p : sc.population) w.push_back(p.weight);
      std::discrete_distribution<size_t> pick(w.begin(), w.end());
      const GroundPoint& g = sc.population[pick(rng)];
      lat = g.latitude;
      lon = g.longitude;
    }
    // Earth-fixed centre rotated into ECI at the snapshot instant.
    const double ang = lon + greenwich_angle(sc.t0_unix + t);
    center = Vec3{std::cos(lat) * std::cos(ang), std::cos(lat) * std::sin(ang), std::sin(lat)};
    std::vector<Vec3> dirs(static_cast<size_t>(C));
    for (int k = 0; k < C; ++k) {
      Vec3 r = propagate(sc.catalog[static_cast<size_t>(k)].elements, t).position;
      dirs[static_cast<size_t>(k)] = r / r.norm();
    }
    double cap = 2.0 * I / orb.density_reference_I;  // 1 - cos(rho)
    while (true) {
      pool.clear();
      for (int k = 0; k < C; ++k) {
        if (1.0 - dot(dirs[static_cast<size_t>(k)], center) <= cap) pool.push_back(k);
      }
      if (static_cast<int>(pool.size()) >= I || cap >= 2.0) break;
      cap = std::min(2.0, cap * 1.25);
    }
  } else {
    pool.resize(static_cast<size_t>(C));
    for (int k = 0; k < C; ++k) pool[static_cast<size_t>(k)] = k;
  }
  // partial Fisher-Yates
  for (int k = 0; k < I; ++k) {
    std::uniform_int_distribution<size_t> d(static_cast<size_t>(k), pool.size() - 1);
    std::swap(pool[static_cast<size_t>(k)], pool[d(rng)]);
  }
  pool.resize(static_cast<size_t>(I));
  std::sort(pool.begin(), pool.end());
  return pool;
}

ConstellationSnapshot sample_snapshot(const Scenario& sc, double t, std::uint64_t seed) {
  auto idx = sample_satellites(sc, t, seed);
  std::vector<OrbitalElements> els;
  std::vector<long> ids;
  for (int k : idx) {
    els.push_back(sc.catalog[static_cast<size_t>(k)].elements);
    ids.push_back(sc.catalog[static_cast<size_t>(k)].elements.sat_id);
  }
  return build_snapshot(els, ids, t, sc.config, sc.population, sc.gateways,
                        mix_seed(sc.config.traffic.rng_seed, seed));
}

}  // namespace lislopt
