#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

// Solves M x = r in place; false when (near) singular.
bool gauss(std::vector<std::vector<double>> M, std::vector<double> r, std::vector<double>& x) {
  const size_t n = r.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t k = c + 1; k < n; ++k) {
      if (std::fabs(M[k][c]) > std::fabs(M[piv][c])) piv = k;
    }
    if (std::fabs(M[piv][c]) < 1e-10) return false;
    std::swap(M[c], M[piv]);
    std::swap(r[c], r[piv]);
    for (size_t k = 0; k < n; ++k) {
      if (k == c) continue;
      const double f = M[k][c] / M[c][c];
      if (f == 0.0) continue;
      for (size_t j = c; j < n; ++j) M[k][j] -= f * M[c][j];
      r[k] -= f * r[c];
    }
  }
  x.assign(n, 0.0);
  for (size_t c = 0; c < n; ++c) x[c] = r[c] / M[c][c];
  return true;
}

}  // namespace

LpOracleResult lp_vertex_enumeration(const lislopt::LinearProgram& lp, double box) {
  const int n = lp.num_vars();
  // Every constraint as a dense row a.x <= b.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<char> is_box;
  for (const auto& row : lp.constraints) {
    std::vector<double> a(static_cast<size_t>(n), 0.0);
    for (auto [v, c] : row.terms) a[static_cast<size_t>(v)] += c;
    rows.push_back(a);
    rhs.push_back(row.bound);
    is_box.push_back(0);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<double> lo(static_cast<size_t>(n), 0.0), hi(static_cast<size_t>(n), 0.0);
    lo[static_cast<size_t>(v)] = -1.0;
    rows.push_back(lo);
    rhs.push_back(0.0);
    is_box.push_back(0);
    hi[static_cast<size_t>(v)] = 1.0;
    const bool has_upper = !lp.upper.empty() && std::isfinite(lp.upper[static_cast<size_t>(v)]);
    rows.push_back(hi);
    rhs.push_back(has_upper ? lp.upper[static_cast<size_t>(v)] : box);
    is_box.push_back(has_upper ? 0 : 1);
  }
  const size_t R = rows.size();
  LpOracleResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  std::vector<size_t> pick(static_cast<size_t>(n));
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == static_cast<size_t>(n)) {
      std::vector<std::vector<double>> M;
      std::vector<double> r, x;
      for (size_t k : pick) {
        M.push_back(rows[k]);
        r.push_back(rhs[k]);
      }
      if (!gauss(M, r, x)) return;
      for (size_t k = 0; k < R; ++k) {
        double lhs = 0.0;
        for (int v = 0; v < n; ++v) lhs += rows[k][static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
        if (lhs > rhs[k] + 1e-9 * (1.0 + std::fabs(rhs[k]))) return;
      }
      double obj = 0.0;
      for (int v = 0; v < n; ++v) obj += lp.objective[static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
      if (obj > best.objective + 1e-12) {
        best.objective = obj;
        best.x = x;
        best.feasible = true;
        best.bounded = true;
        for (size_t k = 0; k < R; ++k) {
          if (!is_box[k]) continue;
          double lhs = 0.0;
          for (int v = 0; v < n; ++v) lhs += rows[k][static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
          if (std::fabs(lhs - rhs[k]) < 1e-6 * box) best.bounded = false;
        }
      }
      return;
    }
    for (size_t k = start; k < R; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  if (n == 0) {
    best.feasible = std::all_of(lp.constraints.begin(), lp.constraints.end(),
                                [](const auto& row) { return row.bound >= 0.0; });
    best.objective = 0.0;
    return best;
  }
  rec(0, 0);
  if (!best.feasible) best.objective = 0.0;
  return best;
}

std::vector<double> bellman_ford(int n, const std::vector<Arc>& arcs, int source) {
  std::vector<double> d(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  d[static_cast<size_t>(source)] = 0.0;
  for (int it = 0; it < n; ++it) {
    bool changed = false;
    for (const Arc& a : arcs) {
      const double c = d[static_cast<size_t>(a.from)] + a.w;
      if (c < d[static_cast<size_t>(a.to)]) {
        d[static_cast<size_t>(a.to)] = c;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

std::vector<char> bfs_reachable(int n, const std::vector<Arc>& arcs, int source) {
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> queue{source};
  seen[static_cast<size_t>(source)] = 1;
  for (size_t h = 0; h < queue.size(); ++h) {
    for (const Arc& a : arcs) {
      if (a.from == queue[h] && !seen[static_cast<size_t>(a.to)]) {
        seen[static_cast<size_t>(a.to)] = 1;
        queue.push_back(a.to);
      }
    }
  }
  return seen;
}

double max_matching_weight(const std::vector<lislopt::WeightedEdge>& edges) {
  std::vector<int> used;
  std::function<double(size_t)> rec = [&](size_t k) -> double {
    if (k == edges.size()) return 0.0;
    double skip = rec(k + 1);
    const auto& e = edges[k];
    if (std::find(used.begin(), used.end(), e.u) != used.end() ||
        std::find(used.begin(), used.end(), e.v) != used.end()) {
      return skip;
    }
    used.push_back(e.u);
    used.push_back(e.v);
    const double take = e.w + rec(k + 1);
    used.resize(used.size() - 2);
    return std::max(skip, take);
  };
  return rec(0);
}

std::vector<std::vector<int>> maximal_matchings(const std::vector<lislopt::WeightedEdge>& edges) {
  std::vector<std::vector<int>> out;
  const size_t E = edges.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << E); ++mask) {
    std::vector<int> deg;
    bool ok = true;
    std::vector<int> sel;
    for (size_t k = 0; k < E && ok; ++k) {
      if (!(mask >> k & 1)) continue;
      for (int v : {edges[k].u, edges[k].v}) {
        if (std::find(deg.begin(), deg.end(), v) != deg.end()) ok = false;
        deg.push_back(v);
      }
      sel.push_back(static_cast<int>(k));
    }
    if (!ok) continue;
    bool maximal = true;
    for (size_t k = 0; k < E && maximal; ++k) {
      if (mask >> k & 1) continue;
      if (std::find(deg.begin(), deg.end(), edges[k].u) == deg.end() &&
          std::find(deg.begin(), deg.end(), edges[k].v) == deg.end()) {
        maximal = false;
      }
    }
    if (maximal) out.push_back(sel);
  }
  return out;
}

State rk4_two_body(State s, long double mu, long double dt, int steps) {
  auto accel = [mu](const long double r[3], long double a[3]) {
    const long double d = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const long double k = -mu / (d * d * d);
    for (int i = 0; i < 3; ++i) a[i] = k * r[i];
  };
  const long double h = dt / steps;
  for (int n = 0; n < steps; ++n) {
    long double k1r[3], k1v[3], k2r[3], k2v[3], k3r[3], k3v[3], k4r[3], k4v[3], tmp[3];
    for (int i = 0; i < 3; ++i) k1r[i] = s.v[i];
    accel(s.r, k1v);
    for (int i = 0; i < 3; ++i) tmp[i] = s.r[i] + 0.5L * h * k1r[i];
    for (int i = 0; i < 3; ++i) k2r[i] = s.v[i] + 0.5L * h * k1v[i];
    accel(tmp, k2v);
    for (int i = 0; i < 3; ++i) tmp[i] = s.r[i] + 0.5L * h * k2r[i];
    for (int i = 0; i < 3; ++i) k3r[i] = s.v[i] + 0.5L * h * k2v[i];
    accel(tmp, k3v);
    for (int i = 0; i < 3; ++i) tmp[i] = s.r[i] + h * k3r[i];
    for (int i = 0; i < 3; ++i) k4r[i] = s.v[i] + h * k3v[i];
    accel(tmp, k4v);
    for (int i = 0; i < 3; ++i) {
      s.r[i] += h / 6.0L * (k1r[i] + 2 * k2r[i] + 2 * k3r[i] + k4r[i]);
      s.v[i] += h / 6.0L * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
    }
  }
  return s;
}

double central_angle_distance(double lat1, double lon1, double lat2, double lon2, double radius) {
  const double a[3] = {std::cos(lat1) * std::cos(lon1), std::cos(lat1) * std::sin(lon1), std::sin(lat1)};
  const double b[3] = {std::cos(lat2) * std::cos(lon2), std::cos(lat2) * std::sin(lon2), std::sin(lat2)};
  // atan2 of |a x b| and a.b stays accurate at small and large angles
  const double cx = a[1] * b[2] - a[2] * b[1], cy = a[2] * b[0] - a[0] * b[2], cz = a[0] * b[1] - a[1] * b[0];
  const double s = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double c = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return radius * std::atan2(s, c);
}

long double beam_radius_ld(const OpticsInputs& o, long double z) {
  return o.W0 * std::sqrt(1.0L + (z / o.zR) * (z / o.zR));
}

long double intensity_ld(const OpticsInputs& o, long double y, long double z) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double W = beam_radius_ld(o, z);
  const long double phi0 = 2.0L * o.P0 / (pi * o.W0 * o.W0);
  return phi0 * (o.W0 / W) * (o.W0 / W) * std::exp(-2.0L * y * y / (W * W));
}

long double rate_gbps_ld(const OpticsInputs& o, long double z) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double e = 2.718281828459045235360287471352662498L;
  const long double nu = o.sigmaJ * std::sqrt(-2.0L * std::log(o.eps));
  const long double current = o.A * intensity_ld(o, z * nu, z) * o.Psi;
  const long double snr = current * current / (2.0L * pi * e * o.sigmaN * o.sigmaN);
  const long double C = o.B / 2.0L * std::log2(1.0L + snr);
  return (1.0L - o.eps) * C / 1e9L;
}

lislopt::ConstellationSnapshot random_tiny_instance(std::uint64_t seed, const TinySpec& spec) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nsat(spec.min_sats, spec.max_sats);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int I = nsat(rng);
  std::vector<int> owner;
  for (int i = 0; i < I; ++i) {
    for (int k = 0; k < spec.lcts_per_sat; ++k) owner.push_back(i);
  }
  std::vector<lislopt::LctEdge> cand;
  const int N = static_cast<int>(owner.size());
  for (int n = 0; n < N; ++n) {
    for (int m = n + 1; m < N; ++m) {
      if (owner[static_cast<size_t>(n)] == owner[static_cast<size_t>(m)]) continue;
      if (U(rng) < spec.edge_prob) cand.push_back({n, m, 0.3 + 4.7 * U(rng), -1});
    }
  }
  std::shuffle(cand.begin(), cand.end(), rng);
  if (static_cast<int>(cand.size()) > spec.max_edges) cand.resize(static_cast<size_t>(spec.max_edges));

  std::vector<double> Q(static_cast<size_t>(I), 0.0), D(static_cast<size_t>(I), 0.0);
  std::vector<int> servers, demanders;
  for (int i = 0; i < I; ++i) {
    if (U(rng) < 0.4) {
      Q[static_cast<size_t>(i)] = 1.0 + 19.0 * U(rng);
      servers.push_back(i);
    } else {
      D[static_cast<size_t>(i)] = 0.5 + 7.5 * U(rng);
      demanders.push_back(i);
    }
  }
  std::vector<lislopt::Flow> flows;
  for (int d : demanders) {
    for (int s : servers) {
      if (U(rng) < 0.6) flows.push_back({s, d});
    }
  }
  std::shuffle(flows.begin(), flows.end(), rng);
  if (static_cast<int>(flows.size()) > spec.max_flows) flows.resize(static_cast<size_t>(spec.max_flows));
  std::sort(flows.begin(), flows.end());
  auto snap = lislopt::snapshot_from_parts(I, owner, cand, Q, D, flows);
  // Plausible geometry so alignment-based heuristics have something to score.
  std::normal_distribution<double> G(0.0, 1.0);
  for (auto& s : snap.satellites) {
    s.position = lislopt::Vec3{7.0e6 + 1.0e6 * U(rng), 1.0e6 * U(rng), 1.0e6 * U(rng)};
    s.velocity = lislopt::Vec3{0.0, 7.5e3, 0.0};
  }
  for (auto& t : snap.lcts) {
    lislopt::Vec3 u{G(rng), G(rng), G(rng)};
    t.mount_direction = u / u.norm();
  }
  return snap;
}

std::vector<double> random_lambda(const lislopt::ConstellationSnapshot& snap, std::mt19937_64& rng,
                                  double lo, double hi) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> l(static_cast<size_t>(snap.num_links()));
  for (double& v : l) v = U(rng);
  return l;
}

std::string source_path(const std::string& rel) { return std::string(LISLOPT_SOURCE_DIR) + "/" + rel; }

lislopt::Scenario desk_scenario(int num_sats) {
  auto cfg = lislopt::load_config(source_path("configs/desk.json"));
  cfg.orbital.num_sats_I = num_sats;
  return lislopt::load_scenario(cfg);
}

}  // namespace oracle
