#pragma once

// Scenario configuration and snapshot construction from catalog files.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lislopt/dual.hpp"
#include "lislopt/graph.hpp"

namespace lislopt {

struct OrbitalConfig {
  std::string t0 = "2025-07-16T16:00:00Z";
  int num_sats_I = 1000;
  // "uniform": I satellites drawn from the whole catalog.
  // "regional": drawn from a spherical cap holding I / density_reference_I of
  // the sphere, so neighbour density matches a global draw of that size.
  std::string sampling = "uniform";
  int density_reference_I = 1000;
  std::optional<std::pair<double, double>> region_center_deg;  // lat, lon; else seeded
};

struct SolverConfig {
  int ladu_iterations = 100;
  double ladu_alpha0 = 0.5;
  double ladu_beta = 0.7;
  double initial_lambda = 1.0;
  MatchingMode matching_mode = MatchingMode::greedy;
  MatchingMode recovery_mode = MatchingMode::greedy;
  std::string sate_matcher = "grid";
  std::uint64_t random_seed = 0;
  // learning-rate schedule handed to the trainer
  double gnn_alpha0 = 1e-3;
  double gnn_beta = 0.7;

  LaduConfig ladu() const;
};

struct PathsConfig {
  std::string tle = "data/starlink_like_full.tle";
  std::string population = "data/population.csv";
  std::string gateways = "data/gateways.csv";
};

struct ScenarioConfig {
  OrbitalConfig orbital;
  OpticalParams optics;
  GeometryParams geometry;
  TrafficParams traffic;
  SolverConfig solver;
  PathsConfig paths;
  std::string base_dir = ".";  // relative paths resolve against this

  void validate() const;
  std::string resolve(const std::string& path) const;
};

// Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
nlohmann::json config_to_json(const ScenarioConfig& c);
ScenarioConfig load_config(const std::string& path);

struct Scenario {
  ScenarioConfig config;
  double t0_unix = 0.0;
  std::vector<TleRecord> catalog;
  std::vector<GroundPoint> population;
  std::vector<GroundPoint> gateways;
};

Scenario load_scenario(const ScenarioConfig& config);

// Builds the full snapshot (graphs and traffic) at time t for the given
// satellite subset. `elements` and `catalog_ids` run in parallel.
ConstellationSnapshot build_snapshot(const std::vector<OrbitalElements>& elements,
                                     const std::vector<long>& catalog_ids, double t,
                                     const ScenarioConfig& config,
                                     const std::vector<GroundPoint>& population,
                                     const std::vector<GroundPoint>& gateways,
                                     std::uint64_t traffic_seed);

// Catalog indices of the I sampled satellites, ascending.
std::vector<int> sample_satellites(const Scenario& sc, double t, std::uint64_t seed);

// Samples satellites with `seed` and builds the snapshot at time t.
ConstellationSnapshot sample_snapshot(const Scenario& sc, double t, std::uint64_t seed);

// splitmix64 finalizer over a ^ rotl(b).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace lislopt
