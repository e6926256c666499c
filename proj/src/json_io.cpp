#include "lislopt/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "lislopt/error.hpp"

namespace lislopt {

using nlohmann::json;

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ValidationError("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string link_key(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void expect_schema(const json& j, const char* schema, int version) {
  if (!j.is_object()) throw ValidationError(std::string(schema) + ": document must be an object");
  if (j.value("schema", std::string()) != schema) {
    throw ValidationError(std::string("expected schema '") + schema + "'");
  }
  if (j.value("version", -1) != version) {
    throw ValidationError(std::string(schema) + ": unsupported version");
  }
}

json elements_json(const OrbitalElements& e) {
  return {{"semi_major_axis_m", e.semi_major_axis}, {"eccentricity", e.eccentricity},
          {"inclination_rad", e.inclination},       {"raan_rad", e.raan},
          {"arg_perigee_rad", e.arg_perigee},       {"mean_anomaly_rad", e.mean_anomaly_at_epoch},
          {"mean_motion_rad_s", e.mean_motion},     {"epoch_s", e.epoch}};
}

OrbitalElements elements_from(const json& j, int sat_id) {
  OrbitalElements e;
  e.sat_id = sat_id;
  e.semi_major_axis = j.at("semi_major_axis_m").get<double>();
  e.eccentricity = j.at("eccentricity").get<double>();
  e.inclination = j.at("inclination_rad").get<double>();
  e.raan = j.at("raan_rad").get<double>();
  e.arg_perigee = j.at("arg_perigee_rad").get<double>();
  e.mean_anomaly_at_epoch = j.at("mean_anomaly_rad").get<double>();
  e.mean_motion = j.at("mean_motion_rad_s").get<double>();
  e.epoch = j.at("epoch_s").get<double>();
  e.validate();
  return e;
}

// Wraps nlohmann errors so callers only see our hierarchy.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

// --- snapshot ---------------------------------------------------------------

json snapshot_to_json(const ConstellationSnapshot& snap, const json& meta_extra) {
  json j;
  j["schema"] = "lislopt.snapshot";
  j["version"] = kSnapshotVersion;
  json meta = {{"epoch_t_s", snap.epoch_t},
               {"num_sats", snap.num_sats()},
               {"num_lcts", snap.lcts.size()},
               {"num_lct_edges", snap.lct_edges.size()},
               {"num_sat_links", snap.num_links()},
               {"num_flows", snap.flows.size()},
               {"units", {{"capacity", "Gbit/s"}, {"rate", "Gbit/s"}, {"length", "m"}, {"time", "s"}}}};
  for (auto it = meta_extra.begin(); it != meta_extra.end(); ++it) meta[it.key()] = it.value();
  j["meta"] = meta;

  const bool with_el = snap.elements.size() == snap.satellites.size();
  json sats = json::array();
  for (int i = 0; i < snap.num_sats(); ++i) {
    const auto& s = snap.satellites[static_cast<size_t>(i)];
    json o = {{"index", i},
              {"catalog_id", snap.catalog_ids.empty() ? i : snap.catalog_ids[static_cast<size_t>(i)]},
              {"position_m", vec_json(s.position)},
              {"velocity_mps", vec_json(s.velocity)},
              {"has_gateway", s.has_gateway},
              {"elements", with_el ? elements_json(snap.elements[static_cast<size_t>(i)]) : json(nullptr)}};
    sats.push_back(std::move(o));
  }
  j["satellites"] = std::move(sats);

  json lcts = json::array();
  for (const auto& t : snap.lcts) {
    lcts.push_back({{"index", t.lct_id}, {"sat", t.sat_id}, {"mount", vec_json(t.mount_direction)}});
  }
  j["lcts"] = std::move(lcts);

  json edges = json::array();
  for (const auto& e : snap.lct_edges) {
    edges.push_back({{"n", e.n}, {"m", e.m}, {"capacity_gbps", e.capacity}});
  }
  j["lct_edges"] = std::move(edges);

  json links = json::array();
  for (int l = 0; l < snap.num_links(); ++l) {
    const SatPair& p = snap.pairs[static_cast<size_t>(l / 2)];
    links.push_back({{"link", l},
                     {"i", snap.link_from(l)},
                     {"j", snap.link_to(l)},
                     {"capacity_gbps", p.capacity},
                     {"lct_edges", p.edges}});
  }
  j["sat_links"] = std::move(links);
  j["node_features"] = {{"Q", snap.serving_Q}, {"D", snap.demand_D}};
  json flows = json::array();
  for (const auto& f : snap.flows) flows.push_back({{"s", f.s}, {"d", f.d}});
  j["flow_pairs"] = std::move(flows);
  return j;
}

ConstellationSnapshot snapshot_from_json(const json& j) {
  expect_schema(j, "lislopt.snapshot", kSnapshotVersion);
  return guarded("snapshot", [&] {
    ConstellationSnapshot s;
    s.epoch_t = j.at("meta").at("epoch_t_s").get<double>();
    const json& sats = j.at("satellites");
    bool any_el = false, all_el = true;
    for (size_t i = 0; i < sats.size(); ++i) {
      const json& o = sats[i];
      if (o.at("index").get<int>() != static_cast<int>(i)) {
        throw ValidationError("satellite index " + std::to_string(i) + " out of order");
      }
      SatelliteState st;
      st.sat_id = static_cast<int>(i);
      st.position = vec_from(o.at("position_m"));
      st.velocity = vec_from(o.at("velocity_mps"));
      st.has_gateway = o.at("has_gateway").get<bool>();
      s.satellites.push_back(st);
      s.catalog_ids.push_back(o.at("catalog_id").get<long>());
      if (o.contains("elements") && !o["elements"].is_null()) {
        any_el = true;
        s.elements.push_back(elements_from(o["elements"], static_cast<int>(i)));
      } else {
        all_el = false;
      }
    }
    if (any_el && !all_el) throw ValidationError("orbital elements present for only some satellites");

    const json& lcts = j.at("lcts");
    for (size_t k = 0; k < lcts.size(); ++k) {
      const json& o = lcts[k];
      if (o.at("index").get<int>() != static_cast<int>(k)) {
        throw ValidationError("lct index " + std::to_string(k) + " out of order");
      }
      s.lcts.push_back({static_cast<int>(k), o.at("sat").get<int>(), vec_from(o.at("mount"))});
    }
    for (const json& o : j.at("lct_edges")) {
      LctEdge e;
      e.n = o.at("n").get<int>();
      e.m = o.at("m").get<int>();
      e.capacity = o.at("capacity_gbps").get<double>();
      if (e.n < 0 || e.m < 0 || e.n >= static_cast<int>(s.lcts.size()) ||
          e.m >= static_cast<int>(s.lcts.size())) {
        throw ValidationError("lct edge references unknown terminal");
      }
      s.lct_edges.push_back(e);
    }
    const json& nf = j.at("node_features");
    s.serving_Q = nf.at("Q").get<std::vector<double>>();
    s.demand_D = nf.at("D").get<std::vector<double>>();
    for (const json& o : j.at("flow_pairs")) {
      Flow f{o.at("s").get<int>(), o.at("d").get<int>()};
      if (f.s < 0 || f.d < 0 || f.s >= s.num_sats() || f.d >= s.num_sats() || f.s == f.d) {
        throw ValidationError("flow pair (" + std::to_string(f.s) + "," + std::to_string(f.d) +
                              ") is invalid");
      }
      s.flows.push_back(f);
    }
    s.index_links();
    s.check();

    const json& links = j.at("sat_links");
    if (static_cast<int>(links.size()) != s.num_links()) {
      throw ValidationError("sat_links count disagrees with lct_edges");
    }
    for (int l = 0; l < s.num_links(); ++l) {
      const json& o = links[static_cast<size_t>(l)];
      const int a = o.at("i").get<int>(), b = o.at("j").get<int>();
      if (s.link_index(a, b) != l) throw ValidationError("sat_link " + link_key(a, b) + " out of order");
    }
    return s;
  });
}

// --- multipliers ------------------------------------------------------------

json multipliers_to_json(const ConstellationSnapshot& snap, const Multipliers& lambda) {
  if (static_cast<int>(lambda.size()) != snap.num_links()) {
    throw ValidationError("multiplier count differs from link count");
  }
  json list = json::array();
  for (int l = 0; l < snap.num_links(); ++l) {
    list.push_back({{"i", snap.link_from(l)}, {"j", snap.link_to(l)}, {"lambda", lambda[static_cast<size_t>(l)]}});
  }
  return {{"schema", "lislopt.multipliers"}, {"version", kMultipliersVersion}, {"multipliers", list}};
}

Multipliers multipliers_from_json(const ConstellationSnapshot& snap, const json& j,
                                  bool check_range) {
  const json* list = &j;
  if (j.is_object()) {
    expect_schema(j, "lislopt.multipliers", kMultipliersVersion);
    if (!j.contains("multipliers")) throw ValidationError("multipliers: missing 'multipliers'");
    list = &j["multipliers"];
  }
  if (!list->is_array()) throw ValidationError("multipliers: expected a list");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Multipliers lambda(static_cast<size_t>(snap.num_links()), nan);
  for (const json& o : *list) {
    if (!o.is_object() || !o.contains("i") || !o.contains("j") || !o.contains("lambda") ||
        !o["i"].is_number_integer() || !o["j"].is_number_integer()) {
      throw ValidationError("multipliers: entries need integer i, j and numeric lambda");
    }
    const int a = o["i"].get<int>(), b = o["j"].get<int>();
    const std::string key = link_key(a, b);
    if (!o["lambda"].is_number()) throw ValidationError("multiplier " + key + " is not a number");
    const int l = snap.link_index(a, b);
    if (l < 0) throw ValidationError("multiplier " + key + " is not a satellite link");
    if (!std::isnan(lambda[static_cast<size_t>(l)])) {
      throw ValidationError("multiplier " + key + " given twice");
    }
    const double v = o["lambda"].get<double>();
    if (!std::isfinite(v) || (check_range && (v < 0.0 || v > 1.0))) {
      throw ValidationError("multiplier " + key + " = " + std::to_string(v) + " outside [0,1]");
    }
    lambda[static_cast<size_t>(l)] = v;
  }
  for (int l = 0; l < snap.num_links(); ++l) {
    if (std::isnan(lambda[static_cast<size_t>(l)])) {
      throw ValidationError("multiplier " + link_key(snap.link_from(l), snap.link_to(l)) + " missing");
    }
  }
  return lambda;
}

// --- dual evaluation --------------------------------------------------------

DualEvalDoc make_dual_eval_doc(const ConstellationSnapshot& snap, const DualEval& ev,
                               double recovered_throughput) {
  DualEvalDoc d;
  d.g = ev.g_value;
  d.part_a = ev.matching_part_a;
  d.part_b = ev.routing_part_b;
  d.part_c = ev.rate_part_c;
  for (int l = 0; l < snap.num_links(); ++l) {
    d.subgradient.push_back({snap.link_from(l), snap.link_to(l), ev.subgradient[static_cast<size_t>(l)]});
  }
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    DualEvalDoc::FlowCost fc{snap.flows[f].s, snap.flows[f].d, std::nullopt};
    if (std::isfinite(ev.routing_costs[f])) fc.cost = ev.routing_costs[f];
    d.routing_costs.push_back(fc);
  }
  for (int e : ev.arg_matching) {
    const LctEdge& le = snap.lct_edges[static_cast<size_t>(e)];
    d.arg_matching.emplace_back(le.n, le.m);
  }
  for (const Route& r : ev.arg_routes) d.arg_routes.push_back(r.reachable ? r.nodes : std::vector<int>{});
  d.arg_rates = ev.arg_rates;
  d.recovered_throughput = recovered_throughput;
  return d;
}

json dual_eval_to_json(const DualEvalDoc& d) {
  json sg = json::array();
  for (const auto& v : d.subgradient) sg.push_back({{"i", v.i}, {"j", v.j}, {"delta", v.value}});
  json rc = json::array();
  for (const auto& c : d.routing_costs) {
    rc.push_back({{"s", c.s}, {"d", c.d}, {"cost", c.cost ? json(*c.cost) : json(nullptr)}});
  }
  json am = json::array();
  for (const auto& [n, m] : d.arg_matching) am.push_back({n, m});
  return {{"schema", "lislopt.dual_eval"},
          {"version", kDualEvalVersion},
          {"g", d.g},
          {"parts", {{"a", d.part_a}, {"b", d.part_b}, {"c", d.part_c}}},
          {"subgradient", sg},
          {"routing_costs", rc},
          {"arg_matching", am},
          {"arg_routes", d.arg_routes},
          {"arg_rates", d.arg_rates},
          {"recovered_throughput", d.recovered_throughput}};
}

DualEvalDoc dual_eval_from_json(const json& j) {
  expect_schema(j, "lislopt.dual_eval", kDualEvalVersion);
  return guarded("dual_eval", [&] {
    DualEvalDoc d;
    d.g = j.at("g").get<double>();
    d.part_a = j.at("parts").at("a").get<double>();
    d.part_b = j.at("parts").at("b").get<double>();
    d.part_c = j.at("parts").at("c").get<double>();
    for (const json& o : j.at("subgradient")) {
      d.subgradient.push_back({o.at("i").get<int>(), o.at("j").get<int>(), o.at("delta").get<double>()});
    }
    for (const json& o : j.at("routing_costs")) {
      DualEvalDoc::FlowCost c{o.at("s").get<int>(), o.at("d").get<int>(), std::nullopt};
      if (!o.at("cost").is_null()) c.cost = o["cost"].get<double>();
      d.routing_costs.push_back(c);
    }
    for (const json& o : j.at("arg_matching")) d.arg_matching.emplace_back(o.at(0).get<int>(), o.at(1).get<int>());
    d.arg_routes = j.at("arg_routes").get<std::vector<std::vector<int>>>();
    d.arg_rates = j.at("arg_rates").get<std::vector<double>>();
    d.recovered_throughput = j.at("recovered_throughput").get<double>();
    return d;
  });
}

// --- solution ---------------------------------------------------------------

json solution_to_json(const ConstellationSnapshot& snap, const PrimalSolution& sol) {
  json matching = json::array();
  for (int e : sol.matching) {
    const LctEdge& le = snap.lct_edges[static_cast<size_t>(e)];
    matching.push_back({le.n, le.m});
  }
  json links = json::array();
  for (int l = 0; l < snap.num_links(); ++l) {
    if (sol.connected_links[static_cast<size_t>(l)]) links.push_back({snap.link_from(l), snap.link_to(l)});
  }
  json flows = json::array();
  for (size_t f = 0; f < snap.flows.size(); ++f) {
    const bool served = sol.served[f] != 0;
    flows.push_back({{"s", snap.flows[f].s},
                     {"d", snap.flows[f].d},
                     {"served", served},
                     {"route", served ? sol.routes[f].nodes : std::vector<int>{}},
                     {"rate_gbps", sol.rates[f]}});
  }
  return {{"schema", "lislopt.solution"},
          {"version", kSolutionVersion},
          {"throughput_gbps", sol.throughput},
          {"matching", matching},
          {"connected_links", links},
          {"flows", flows}};
}

PrimalSolution solution_from_json(const ConstellationSnapshot& snap, const json& j) {
  expect_schema(j, "lislopt.solution", kSolutionVersion);
  return guarded("solution", [&] {
    std::map<std::pair<int, int>, int> edge_of;
    for (size_t e = 0; e < snap.lct_edges.size(); ++e) {
      edge_of[{snap.lct_edges[e].n, snap.lct_edges[e].m}] = static_cast<int>(e);
    }
    PrimalSolution sol;
    for (const json& o : j.at("matching")) {
      int n = o.at(0).get<int>(), m = o.at(1).get<int>();
      if (n > m) std::swap(n, m);
      auto it = edge_of.find({n, m});
      if (it == edge_of.end()) throw ValidationError("matched pair " + link_key(n, m) + " is not an lct edge");
      sol.matching.push_back(it->second);
    }
    std::sort(sol.matching.begin(), sol.matching.end());
    sol.connected_links = links_of_matching(snap, sol.matching);
    const json& flows = j.at("flows");
    if (flows.size() != snap.flows.size()) throw ValidationError("solution flow count differs from snapshot");
    for (size_t f = 0; f < flows.size(); ++f) {
      const json& o = flows[f];
      if (o.at("s").get<int>() != snap.flows[f].s || o.at("d").get<int>() != snap.flows[f].d) {
        throw ValidationError("solution flow " + std::to_string(f) + " does not match the snapshot");
      }
      Route r;
      const bool served = o.at("served").get<bool>();
      if (served) {
        r.reachable = true;
        r.nodes = o.at("route").get<std::vector<int>>();
        r.cost = 0.0;
        for (size_t k = 0; k + 1 < r.nodes.size(); ++k) {
          const int l = snap.link_index(r.nodes[k], r.nodes[k + 1]);
          if (l < 0) throw ValidationError("route hop " + link_key(r.nodes[k], r.nodes[k + 1]) + " is not a link");
          r.links.push_back(l);
        }
      } else {
        r.cost = std::numeric_limits<double>::infinity();
      }
      sol.routes.push_back(std::move(r));
      sol.served.push_back(served ? 1 : 0);
      sol.rates.push_back(o.at("rate_gbps").get<double>());
    }
    sol.throughput = j.at("throughput_gbps").get<double>();
    return sol;
  });
}

// --- files ------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line
    const size_t upto = std::min(static_cast<size_t>(e.byte), text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    throw ParseError(path + ": invalid JSON", line);
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace lislopt
