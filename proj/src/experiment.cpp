#include "lislopt/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "lislopt/error.hpp"
#include "lislopt/json_io.hpp"

namespace lislopt {

using nlohmann::json;

Method parse_method(const std::string& name) {
  if (name == "mrate") return Method::mrate;
  if (name == "grid") return Method::grid;
  if (name == "rand") return Method::rand;
  if (name == "sate") return Method::sate;
  if (name == "ladu") return Method::ladu;
  if (name == "deepladu") return Method::deepladu;
  if (name == "brute") return Method::brute;
  throw DomainError("unknown method '" + name + "'");
}

const char* to_string(Method m) {
  switch (m) {
    case Method::mrate: return "mrate";
    case Method::grid: return "grid";
    case Method::rand: return "rand";
    case Method::sate: return "sate";
    case Method::ladu: return "ladu";
    case Method::deepladu: return "deepladu";
    case Method::brute: return "brute";
  }
  return "?";
}

MethodOptions method_options(const SolverConfig& cfg) {
  MethodOptions o;
  o.ladu = cfg.ladu();
  o.recovery_mode = cfg.recovery_mode;
  o.sate_matcher = parse_heuristic(cfg.sate_matcher);
  o.seed = cfg.random_seed;
  return o;
}

MethodRun run_method(const ConstellationSnapshot& snap, Method method, const MethodOptions& opt) {
  MethodRun run;
  run.method = method;
  if (method == Method::deepladu) {
    if (!opt.lambda) throw ValidationError("deepladu needs multipliers (--lambda)");
    validate_multipliers(snap, *opt.lambda);
  }
  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::mrate: run.solution = sate_pipeline(snap, HeuristicMatcher::mrate, opt.seed); break;
    case Method::grid: run.solution = sate_pipeline(snap, HeuristicMatcher::grid, opt.seed); break;
    case Method::rand: run.solution = sate_pipeline(snap, HeuristicMatcher::random, opt.seed); break;
    case Method::sate: run.solution = sate_pipeline(snap, opt.sate_matcher, opt.seed); break;
    case Method::ladu: {
      LaduSolution ls = solve_ladu(snap, opt.ladu, opt.recovery_mode);
      run.solution = std::move(ls.solution);
      run.lambda = ls.lambda;
      run.dual_value = ls.used_best ? ls.descent.best_g : ls.descent.g_trace.back();
      run.descent = std::move(ls.descent);
      break;
    }
    case Method::deepladu:
      run.solution = recover(snap, *opt.lambda, opt.recovery_mode);
      run.lambda = opt.lambda;
      break;
    case Method::brute: run.solution = brute_force_p1(snap, opt.brute_limits).solution; break;
  }
  run.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // reported but outside the timed phase
  if (method == Method::deepladu) {
    run.dual_value = dual_function(snap, *opt.lambda, opt.ladu.matching_mode).g_value;
  }
  return run;
}

EvolvedRun evaluate_evolved(const ConstellationSnapshot& snap, const PrimalSolution& sol,
                            double elapsed, const GeometryParams& geo, const OpticalParams& opt) {
  if (!(elapsed >= 0.0)) throw DomainError("elapsed time must be >= 0");
  if (snap.elements.size() != snap.satellites.size()) {
    throw ValidationError("snapshot carries no orbital elements; cannot evolve");
  }
  const int I = snap.num_sats();
  if (I == 0 || snap.lcts.size() % static_cast<size_t>(I) != 0) {
    throw ValidationError("evolution needs the same terminal count on every satellite");
  }
  const int per_sat = static_cast<int>(snap.lcts.size()) / I;

  EvolvedRun ev;
  ev.elapsed = elapsed;
  ConstellationSnapshot& s = ev.snapshot;
  s = snap;
  s.epoch_t = snap.epoch_t + elapsed;
  for (int i = 0; i < I; ++i) {
    auto st = propagate(snap.elements[static_cast<size_t>(i)], s.epoch_t);
    st.sat_id = i;
    st.has_gateway = snap.satellites[static_cast<size_t>(i)].has_gateway;
    s.satellites[static_cast<size_t>(i)] = st;
  }
  s.lcts = all_terminals(s.satellites, per_sat);

  // Only the matched edges matter for the fixed decisions.
  s.lct_edges.clear();
  ev.matched_edges_before = static_cast<int>(sol.matching.size());
  for (int e : sol.matching) {
    LctEdge le = snap.lct_edges[static_cast<size_t>(e)];
    const auto& a = s.satellites[static_cast<size_t>(s.lct_sat(le.n))];
    const auto& b = s.satellites[static_cast<size_t>(s.lct_sat(le.m))];
    if (!lct_connectable(a, s.lcts[static_cast<size_t>(le.n)], b, s.lcts[static_cast<size_t>(le.m)], geo)) {
      continue;
    }
    le.capacity = lisl_rate((b.position - a.position).norm(), opt);
    le.pair = -1;
    s.lct_edges.push_back(le);
  }
  s.index_links();
  s.check();
  ev.matched_edges_kept = static_cast<int>(s.lct_edges.size());

  std::vector<int> matching(s.lct_edges.size());
  for (size_t k = 0; k < matching.size(); ++k) matching[k] = static_cast<int>(k);
  std::vector<Route> routes(snap.flows.size());
  std::vector<char> served(snap.flows.size(), 0);
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    Route& r = routes[f];
    r.cost = std::numeric_limits<double>::infinity();
    if (!sol.served[f]) continue;
    const Route& old = sol.routes[f];
    Route nr;
    nr.reachable = true;
    nr.nodes = old.nodes;
    nr.cost = old.cost;
    bool ok = true;
    for (size_t k = 0; k + 1 < old.nodes.size() && ok; ++k) {
      const int l = s.link_index(old.nodes[k], old.nodes[k + 1]);
      if (l < 0) ok = false;
      else nr.links.push_back(l);
    }
    if (ok) {
      r = std::move(nr);
      served[f] = 1;
    } else {
      ++ev.flows_dropped;
    }
  }
  ev.solution = complete_solution(s, std::move(matching), std::move(routes), std::move(served));
  ev.throughput = ev.solution.throughput;
  if (ev.matched_edges_before > 0 && ev.matched_edges_kept == 0) ev.status = "all_links_lost";
  else if (ev.matched_edges_kept < ev.matched_edges_before) ev.status = "links_lost";
  else ev.status = "ok";
  return ev;
}

json metrics_json(const ConstellationSnapshot& snap, const MethodRun& run,
                  double end_to_end_seconds, const std::optional<EvolvedRun>& evolved) {
  const auto report = verify_feasibility(snap, run.solution);
  int served = 0;
  for (char c : run.solution.served) served += c ? 1 : 0;
  json j = {{"schema", "lislopt.metrics"},
            {"version", 1},
            {"method", to_string(run.method)},
            {"throughput_gbps", run.solution.throughput},
            {"solve_seconds", run.solve_seconds},
            {"end_to_end_seconds", end_to_end_seconds},
            {"dual_value", run.dual_value ? json(*run.dual_value) : json(nullptr)},
            {"feasible", report.pass()},
            {"num_sats", snap.num_sats()},
            {"num_lct_edges", snap.lct_edges.size()},
            {"num_flows", snap.flows.size()},
            {"served_flows", served},
            {"matched_edges", run.solution.matching.size()}};
  if (run.descent) {
    j["ladu"] = {{"iterations", run.descent->g_trace.size()},
                 {"best_iteration", run.descent->best_iteration},
                 {"best_g", run.descent->best_g},
                 {"final_g", run.descent->g_trace.empty() ? json(nullptr) : json(run.descent->g_trace.back())}};
  }
  if (evolved) {
    j["evolved"] = {{"elapsed_s", evolved->elapsed},
                    {"status", evolved->status},
                    {"throughput_gbps", evolved->throughput},
                    {"matched_edges_before", evolved->matched_edges_before},
                    {"matched_edges_kept", evolved->matched_edges_kept},
                    {"flows_dropped", evolved->flows_dropped}};
  }
  return j;
}

// --- sweeps -----------------------------------------------------------------

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "lcts_per_sat" || name == "N'") return SweepAxis::lcts_per_sat;
  if (name == "theta_deg" || name == "theta") return SweepAxis::theta_deg;
  if (name == "jitter_sigma" || name == "sigma_j") return SweepAxis::jitter_sigma;
  if (name == "divergence") return SweepAxis::divergence;
  if (name == "num_sats" || name == "I") return SweepAxis::num_sats;
  throw DomainError("unknown sweep axis '" + name + "'");
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::lcts_per_sat: return "lcts_per_sat";
    case SweepAxis::theta_deg: return "theta_deg";
    case SweepAxis::jitter_sigma: return "jitter_sigma";
    case SweepAxis::divergence: return "divergence";
    case SweepAxis::num_sats: return "num_sats";
  }
  return "?";
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig c = base;
  switch (axis) {
    case SweepAxis::lcts_per_sat:
      if (value != std::floor(value)) throw DomainError("lcts_per_sat must be an integer");
      c.geometry.lcts_per_sat = static_cast<int>(value);
      break;
    case SweepAxis::theta_deg: c.geometry.for_half_angle_theta = value * kPi / 180.0; break;
    case SweepAxis::jitter_sigma: c.optics.jitter_sigmaJ = value; break;
    case SweepAxis::divergence: c.optics = with_divergence(c.optics, value); break;
    case SweepAxis::num_sats:
      if (value != std::floor(value)) throw DomainError("num_sats must be an integer");
      c.orbital.num_sats_I = static_cast<int>(value);
      break;
  }
  c.validate();
  return c;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds, double t) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    Scenario sc = scenario;
    sc.config = apply_axis(scenario.config, axis, v);
    MethodOptions opt = method_options(sc.config.solver);
    for (std::uint64_t seed : seeds) {
      ConstellationSnapshot snap = sample_snapshot(sc, t, seed);
      for (Method m : methods) {
        if (m == Method::deepladu) throw DomainError("deepladu cannot be swept (needs per-snapshot multipliers)");
        MethodOptions o = opt;
        o.seed = mix_seed(opt.seed, seed);
        MethodRun run = run_method(snap, m, o);
        rows.push_back({v, to_string(m), seed, run.solution.throughput,
                        static_cast<int>(snap.lct_edges.size())});
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows) {
  out << "axis,axis_value,method,seed,throughput_gbps,lct_edges\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << to_string(axis) << ',' << r.axis_value << ',' << r.method << ',' << r.seed << ','
        << r.throughput << ',' << r.lct_edges << '\n';
  }
}

void write_coherence_csv(std::ostream& out, const std::vector<CoherenceRow>& rows) {
  out << "constellation,TR,coherent_time_s\n";
  for (const auto& r : rows) {
    out << r.constellation << ',' << std::setprecision(6) << r.threshold_ratio << ','
        << std::setprecision(10) << r.result.seconds << '\n';
  }
}

// --- dataset ----------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

json snapshot_meta(const ScenarioConfig& cfg, std::uint64_t seed) {
  return {{"sample_seed", seed}, {"config", config_to_json(cfg)}};
}

ScenarioConfig config_from_snapshot_meta(const json& snapshot_doc) {
  const json& meta = snapshot_doc.at("meta");
  if (!meta.contains("config")) return ScenarioConfig{};
  return config_from_json(meta["config"]);
}

std::vector<DatasetEntry> export_dataset(const Scenario& scenario, const std::string& dir,
                                         int count, std::uint64_t seed, double epoch_window) {
  if (count < 0) throw DomainError("count must be >= 0");
  if (!(epoch_window > 0.0)) throw DomainError("epoch window must be positive");
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> epoch(0.0, epoch_window);
  std::vector<DatasetEntry> entries;
  json list = json::array();
  for (int k = 0; k < count; ++k) {
    DatasetEntry e;
    e.t = epoch(rng);
    e.seed = rng();
    std::ostringstream name;
    name << "snapshot_" << std::setw(5) << std::setfill('0') << k << ".json";
    e.file = name.str();
    ConstellationSnapshot snap = sample_snapshot(scenario, e.t, e.seed);
    const std::string text =
        snapshot_to_json(snap, snapshot_meta(scenario.config, e.seed))
            .dump(2) + "\n";
    e.hash = hex64(fnv1a64(text));
    std::ofstream out(std::filesystem::path(dir) / e.file, std::ios::binary);
    if (!out) throw Error("cannot write '" + e.file + "' in " + dir);
    out << text;
    list.push_back({{"file", e.file}, {"seed", e.seed}, {"t_s", e.t}, {"fnv1a64", e.hash}});
    entries.push_back(e);
  }
  json manifest = {{"schema", "lislopt.manifest"},
                   {"version", 1},
                   {"seed", seed},
                   {"count", count},
                   {"epoch_window_s", epoch_window},
                   {"config", config_to_json(scenario.config)},
                   {"snapshots", list}};
  write_json_file((std::filesystem::path(dir) / "manifest.json").string(), manifest);
  return entries;
}

}  // namespace lislopt
