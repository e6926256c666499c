#include "lislopt/matching.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include "lislopt/error.hpp"

namespace lislopt {

MatchingMode parse_matching_mode(const std::string& name) {
  if (name == "greedy") return MatchingMode::greedy;
  if (name == "exact") return MatchingMode::exact;
  if (name == "blossom") return MatchingMode::blossom;
  throw ValidationError("unknown matching mode '" + name + "'");
}

const char* to_string(MatchingMode m) {
  switch (m) {
    case MatchingMode::greedy: return "greedy";
    case MatchingMode::exact: return "exact";
    case MatchingMode::blossom: return "blossom";
  }
  return "?";
}

namespace {

int vertex_count(const std::vector<WeightedEdge>& edges) {
  int n = 0;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0) throw ValidationError("negative vertex id in matching input");
    if (e.u == e.v) throw ValidationError("self-loop in matching input");
    n = std::max(n, std::max(e.u, e.v) + 1);
  }
  return n;
}

std::vector<int> greedy_order(const std::vector<WeightedEdge>& edges) {
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = edges[static_cast<size_t>(a)];
    const auto& eb = edges[static_cast<size_t>(b)];
    if (ea.w != eb.w) return ea.w > eb.w;
    const int ua = std::min(ea.u, ea.v), va = std::max(ea.u, ea.v);
    const int ub = std::min(eb.u, eb.v), vb = std::max(eb.u, eb.v);
    if (ua != ub) return ua < ub;
    return va < vb;
  });
  return order;
}

// Port of the classic O(V^3) primal-dual weighted matching with integer
// weights. Dual variables are stored doubled, so the slack of an edge between
// two S-blossoms is even and halving it stays exact.
class Blossom {
 public:
  Blossom(int nv, const std::vector<std::array<std::int64_t, 3>>& edges)
      : n_(nv), edges_(edges), m_(static_cast<int>(edges.size())) {}

  std::vector<int> run() {
    const int n = n_;
    endpoint_.resize(static_cast<size_t>(2 * m_));
    for (int k = 0; k < m_; ++k) {
      endpoint_[static_cast<size_t>(2 * k)] = static_cast<int>(edges_[static_cast<size_t>(k)][0]);
      endpoint_[static_cast<size_t>(2 * k + 1)] = static_cast<int>(edges_[static_cast<size_t>(k)][1]);
    }
    neighbend_.assign(static_cast<size_t>(n), {});
    for (int k = 0; k < m_; ++k) {
      const auto& e = edges_[static_cast<size_t>(k)];
      neighbend_[static_cast<size_t>(e[0])].push_back(2 * k + 1);
      neighbend_[static_cast<size_t>(e[1])].push_back(2 * k);
    }
    std::int64_t maxw = 0;
    for (const auto& e : edges_) maxw = std::max(maxw, e[2]);
    mate_.assign(static_cast<size_t>(n), -1);
    label_.assign(static_cast<size_t>(2 * n), 0);
    labelend_.assign(static_cast<size_t>(2 * n), -1);
    inblossom_.resize(static_cast<size_t>(n));
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    parent_.assign(static_cast<size_t>(2 * n), -1);
    childs_.assign(static_cast<size_t>(2 * n), {});
    base_.assign(static_cast<size_t>(2 * n), -1);
    for (int v = 0; v < n; ++v) base_[static_cast<size_t>(v)] = v;
    endps_.assign(static_cast<size_t>(2 * n), {});
    bestedge_.assign(static_cast<size_t>(2 * n), -1);
    bestedges_.assign(static_cast<size_t>(2 * n), {});
    has_bestedges_.assign(static_cast<size_t>(2 * n), 0);
    unused_.clear();
    for (int b = n; b < 2 * n; ++b) unused_.push_back(b);
    dual_.assign(static_cast<size_t>(2 * n), 0);
    for (int v = 0; v < n; ++v) dual_[static_cast<size_t>(v)] = maxw;
    allow_.assign(static_cast<size_t>(m_), 0);

    for (int stage = 0; stage < n; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n; b < 2 * n; ++b) {
        bestedges_[static_cast<size_t>(b)].clear();
        has_bestedges_[static_cast<size_t>(b)] = 0;
      }
      std::fill(allow_.begin(), allow_.end(), 0);
      queue_.clear();
      for (int v = 0; v < n; ++v) {
        if (mate_[static_cast<size_t>(v)] == -1 && label_[static_cast<size_t>(in(v))] == 0) {
          assign_label(v, 1, -1);
        }
      }
      bool augmented = false;
      for (;;) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[static_cast<size_t>(v)]) {
            const int k = p / 2;
            const int w = endpoint_[static_cast<size_t>(p)];
            if (in(v) == in(w)) continue;
            std::int64_t kslack = 0;
            if (!allow_[static_cast<size_t>(k)]) {
              kslack = slack(k);
              if (kslack <= 0) allow_[static_cast<size_t>(k)] = 1;
            }
            if (allow_[static_cast<size_t>(k)]) {
              if (label_[static_cast<size_t>(in(w))] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[static_cast<size_t>(in(w))] == 1) {
                const int b = scan_blossom(v, w);
                if (b >= 0) {
                  add_blossom(b, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[static_cast<size_t>(w)] == 0) {
                label_[static_cast<size_t>(w)] = 2;
                labelend_[static_cast<size_t>(w)] = p ^ 1;
              }
            } else if (label_[static_cast<size_t>(in(w))] == 1) {
              const int b = in(v);
              if (bestedge_[static_cast<size_t>(b)] == -1 ||
                  kslack < slack(bestedge_[static_cast<size_t>(b)])) {
                bestedge_[static_cast<size_t>(b)] = k;
              }
            } else if (label_[static_cast<size_t>(w)] == 0) {
              if (bestedge_[static_cast<size_t>(w)] == -1 ||
                  kslack < slack(bestedge_[static_cast<size_t>(w)])) {
                bestedge_[static_cast<size_t>(w)] = k;
              }
            }
          }
        }
        if (augmented) break;

        int deltatype = 1;
        std::int64_t delta = *std::min_element(dual_.begin(), dual_.begin() + n);
        int deltaedge = -1, deltablossom = -1;
        for (int v = 0; v < n; ++v) {
          if (label_[static_cast<size_t>(in(v))] == 0 && bestedge_[static_cast<size_t>(v)] != -1) {
            const std::int64_t d = slack(bestedge_[static_cast<size_t>(v)]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[static_cast<size_t>(v)];
            }
          }
        }
        for (int b = 0; b < 2 * n; ++b) {
          if (parent_[static_cast<size_t>(b)] == -1 && label_[static_cast<size_t>(b)] == 1 &&
              bestedge_[static_cast<size_t>(b)] != -1) {
            const std::int64_t ks = slack(bestedge_[static_cast<size_t>(b)]);
            if (ks % 2 != 0) throw NumericError("blossom: odd slack between S-blossoms");
            const std::int64_t d = ks / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[static_cast<size_t>(b)];
            }
          }
        }
        for (int b = n; b < 2 * n; ++b) {
          if (base_[static_cast<size_t>(b)] >= 0 && parent_[static_cast<size_t>(b)] == -1 &&
              label_[static_cast<size_t>(b)] == 2 && dual_[static_cast<size_t>(b)] < delta) {
            delta = dual_[static_cast<size_t>(b)];
            deltatype = 4;
            deltablossom = b;
          }
        }
        for (int v = 0; v < n; ++v) {
          const int l = label_[static_cast<size_t>(in(v))];
          if (l == 1) dual_[static_cast<size_t>(v)] -= delta;
          else if (l == 2) dual_[static_cast<size_t>(v)] += delta;
        }
        for (int b = n; b < 2 * n; ++b) {
          if (base_[static_cast<size_t>(b)] >= 0 && parent_[static_cast<size_t>(b)] == -1) {
            if (label_[static_cast<size_t>(b)] == 1) dual_[static_cast<size_t>(b)] += delta;
            else if (label_[static_cast<size_t>(b)] == 2) dual_[static_cast<size_t>(b)] -= delta;
          }
        }
        if (deltatype == 1) break;
        if (deltatype == 2) {
          allow_[static_cast<size_t>(deltaedge)] = 1;
          int i = static_cast<int>(edges_[static_cast<size_t>(deltaedge)][0]);
          int j = static_cast<int>(edges_[static_cast<size_t>(deltaedge)][1]);
          if (label_[static_cast<size_t>(in(i))] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allow_[static_cast<size_t>(deltaedge)] = 1;
          queue_.push_back(static_cast<int>(edges_[static_cast<size_t>(deltaedge)][0]));
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = n; b < 2 * n; ++b) {
        if (parent_[static_cast<size_t>(b)] == -1 && base_[static_cast<size_t>(b)] >= 0 &&
            label_[static_cast<size_t>(b)] == 1 && dual_[static_cast<size_t>(b)] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
      const int p = mate_[static_cast<size_t>(v)];
      if (p >= 0 && v < endpoint_[static_cast<size_t>(p)]) out.push_back(p / 2);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int in(int v) const { return inblossom_[static_cast<size_t>(v)]; }

  std::int64_t slack(int k) const {
    const auto& e = edges_[static_cast<size_t>(k)];
    return dual_[static_cast<size_t>(e[0])] + dual_[static_cast<size_t>(e[1])] - 2 * e[2];
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[static_cast<size_t>(b)]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  void assign_label(int w, int t, int p) {
    const int b = in(w);
    label_[static_cast<size_t>(w)] = label_[static_cast<size_t>(b)] = t;
    labelend_[static_cast<size_t>(w)] = labelend_[static_cast<size_t>(b)] = p;
    bestedge_[static_cast<size_t>(w)] = bestedge_[static_cast<size_t>(b)] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = base_[static_cast<size_t>(b)];
      const int mb = mate_[static_cast<size_t>(base)];
      assign_label(endpoint_[static_cast<size_t>(mb)], 1, mb ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = in(v);
      if (label_[static_cast<size_t>(b)] & 4) {
        base = base_[static_cast<size_t>(b)];
        break;
      }
      path.push_back(b);
      label_[static_cast<size_t>(b)] = 5;
      if (labelend_[static_cast<size_t>(b)] == -1) {
        v = -1;
      } else {
        v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)])];
        b = in(v);
        v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)])];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[static_cast<size_t>(b)] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = static_cast<int>(edges_[static_cast<size_t>(k)][0]);
    int w = static_cast<int>(edges_[static_cast<size_t>(k)][1]);
    const int bb = in(base);
    int bv = in(v);
    int bw = in(w);
    const int b = unused_.back();
    unused_.pop_back();
    base_[static_cast<size_t>(b)] = base;
    parent_[static_cast<size_t>(b)] = -1;
    parent_[static_cast<size_t>(bb)] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
      parent_[static_cast<size_t>(bv)] = b;
      path.push_back(bv);
      endps.push_back(labelend_[static_cast<size_t>(bv)]);
      v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bv)])];
      bv = in(v);
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      parent_[static_cast<size_t>(bw)] = b;
      path.push_back(bw);
      endps.push_back(labelend_[static_cast<size_t>(bw)] ^ 1);
      w = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bw)])];
      bw = in(w);
    }
    childs_[static_cast<size_t>(b)] = path;
    endps_[static_cast<size_t>(b)] = endps;
    label_[static_cast<size_t>(b)] = 1;
    labelend_[static_cast<size_t>(b)] = labelend_[static_cast<size_t>(bb)];
    dual_[static_cast<size_t>(b)] = 0;
    for (int leaf : leaves(b)) {
      if (label_[static_cast<size_t>(in(leaf))] == 2) queue_.push_back(leaf);
      inblossom_[static_cast<size_t>(leaf)] = b;
    }
    std::vector<int> bestedgeto(static_cast<size_t>(2 * n_), -1);
    for (int sub : path) {
      std::vector<int> ks;
      if (!has_bestedges_[static_cast<size_t>(sub)]) {
        for (int leaf : leaves(sub)) {
          for (int p : neighbend_[static_cast<size_t>(leaf)]) ks.push_back(p / 2);
        }
      } else {
        ks = bestedges_[static_cast<size_t>(sub)];
      }
      for (int kk : ks) {
        int i = static_cast<int>(edges_[static_cast<size_t>(kk)][0]);
        int j = static_cast<int>(edges_[static_cast<size_t>(kk)][1]);
        if (in(j) == b) std::swap(i, j);
        const int bj = in(j);
        if (bj != b && label_[static_cast<size_t>(bj)] == 1 &&
            (bestedgeto[static_cast<size_t>(bj)] == -1 ||
             slack(kk) < slack(bestedgeto[static_cast<size_t>(bj)]))) {
          bestedgeto[static_cast<size_t>(bj)] = kk;
        }
      }
      bestedges_[static_cast<size_t>(sub)].clear();
      has_bestedges_[static_cast<size_t>(sub)] = 0;
      bestedge_[static_cast<size_t>(sub)] = -1;
    }
    auto& list = bestedges_[static_cast<size_t>(b)];
    list.clear();
    for (int kk : bestedgeto) {
      if (kk != -1) list.push_back(kk);
    }
    has_bestedges_[static_cast<size_t>(b)] = 1;
    bestedge_[static_cast<size_t>(b)] = -1;
    for (int kk : list) {
      if (bestedge_[static_cast<size_t>(b)] == -1 || slack(kk) < slack(bestedge_[static_cast<size_t>(b)])) {
        bestedge_[static_cast<size_t>(b)] = kk;
      }
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> children = childs_[static_cast<size_t>(b)];
    for (int s : children) {
      parent_[static_cast<size_t>(s)] = -1;
      if (s < n_) {
        inblossom_[static_cast<size_t>(s)] = s;
      } else if (endstage && dual_[static_cast<size_t>(s)] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[static_cast<size_t>(leaf)] = s;
      }
    }
    if (!endstage && label_[static_cast<size_t>(b)] == 2) {
      const auto& ch = childs_[static_cast<size_t>(b)];
      const auto& ep = endps_[static_cast<size_t>(b)];
      const int len = static_cast<int>(ch.size());
      const int entrychild = in(endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)] ^ 1)]);
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[static_cast<size_t>(b)];
      while (j != 0) {
        label_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] = 0;
        label_[static_cast<size_t>(
            endpoint_[static_cast<size_t>(ep[static_cast<size_t>(wrap(j - endptrick, len))] ^ endptrick ^ 1)])] = 0;
        assign_label(endpoint_[static_cast<size_t>(p ^ 1)], 2, p);
        allow_[static_cast<size_t>(ep[static_cast<size_t>(wrap(j - endptrick, len))] / 2)] = 1;
        j += jstep;
        p = ep[static_cast<size_t>(wrap(j - endptrick, len))] ^ endptrick;
        allow_[static_cast<size_t>(p / 2)] = 1;
        j += jstep;
      }
      int bv = ch[static_cast<size_t>(wrap(j, len))];
      label_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] = label_[static_cast<size_t>(bv)] = 2;
      labelend_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] =
          labelend_[static_cast<size_t>(bv)] = p;
      bestedge_[static_cast<size_t>(bv)] = -1;
      j += jstep;
      while (ch[static_cast<size_t>(wrap(j, len))] != entrychild) {
        bv = ch[static_cast<size_t>(wrap(j, len))];
        if (label_[static_cast<size_t>(bv)] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[static_cast<size_t>(leaf)] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
          label_[static_cast<size_t>(found)] = 0;
          label_[static_cast<size_t>(
              endpoint_[static_cast<size_t>(mate_[static_cast<size_t>(base_[static_cast<size_t>(bv)])])])] = 0;
          assign_label(found, 2, labelend_[static_cast<size_t>(found)]);
        }
        j += jstep;
      }
    }
    label_[static_cast<size_t>(b)] = -1;
    labelend_[static_cast<size_t>(b)] = -1;
    childs_[static_cast<size_t>(b)].clear();
    endps_[static_cast<size_t>(b)].clear();
    base_[static_cast<size_t>(b)] = -1;
    bestedges_[static_cast<size_t>(b)].clear();
    has_bestedges_[static_cast<size_t>(b)] = 0;
    bestedge_[static_cast<size_t>(b)] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (parent_[static_cast<size_t>(t)] != b) t = parent_[static_cast<size_t>(t)];
    if (t >= n_) augment_blossom(t, v);
    auto& ch = childs_[static_cast<size_t>(b)];
    auto& ep = endps_[static_cast<size_t>(b)];
    const int len = static_cast<int>(ch.size());
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = ch[static_cast<size_t>(wrap(j, len))];
      const int p = ep[static_cast<size_t>(wrap(j - endptrick, len))] ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[static_cast<size_t>(p)]);
      j += jstep;
      t = ch[static_cast<size_t>(wrap(j, len))];
      if (t >= n_) augment_blossom(t, endpoint_[static_cast<size_t>(p ^ 1)]);
      mate_[static_cast<size_t>(endpoint_[static_cast<size_t>(p)])] = p ^ 1;
      mate_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    base_[static_cast<size_t>(b)] = base_[static_cast<size_t>(ch[0])];
  }

  void augment_matching(int k) {
    const int v = static_cast<int>(edges_[static_cast<size_t>(k)][0]);
    const int w = static_cast<int>(edges_[static_cast<size_t>(k)][1]);
    const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : starts) {
      for (;;) {
        const int bs = in(s);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[static_cast<size_t>(s)] = p;
        if (labelend_[static_cast<size_t>(bs)] == -1) break;
        const int t = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bs)])];
        const int bt = in(t);
        s = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bt)])];
        const int j = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bt)] ^ 1)];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[static_cast<size_t>(j)] = labelend_[static_cast<size_t>(bt)];
        p = labelend_[static_cast<size_t>(bt)] ^ 1;
      }
    }
  }

  int n_;
  std::vector<std::array<std::int64_t, 3>> edges_;
  int m_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, parent_, base_, bestedge_;
  std::vector<std::vector<int>> childs_, endps_, bestedges_;
  std::vector<char> has_bestedges_;
  std::vector<int> unused_;
  std::vector<std::int64_t> dual_;
  std::vector<char> allow_;
  std::vector<int> queue_;
};

}  // namespace

std::vector<int> greedy_matching(const std::vector<WeightedEdge>& edges) {
  std::vector<char> used(static_cast<size_t>(vertex_count(edges)), 0);
  std::vector<int> out;
  for (int k : greedy_order(edges)) {
    const auto& e = edges[static_cast<size_t>(k)];
    if (used[static_cast<size_t>(e.u)] || used[static_cast<size_t>(e.v)]) continue;
    used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> enumerate_matching(const std::vector<WeightedEdge>& edges, int cap) {
  if (static_cast<int>(edges.size()) > cap) {
    throw CapacityError("exact matching enumeration is limited to " + std::to_string(cap) +
                        " edges, got " + std::to_string(edges.size()));
  }
  std::vector<char> used(static_cast<size_t>(vertex_count(edges)), 0);
  std::vector<int> cur, best;
  double best_w = -1.0;
  std::function<void(size_t, double)> rec = [&](size_t k, double w) {
    if (k == edges.size()) {
      if (w > best_w) {
        best_w = w;
        best = cur;
      }
      return;
    }
    const auto& e = edges[k];
    if (!used[static_cast<size_t>(e.u)] && !used[static_cast<size_t>(e.v)]) {
      used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
      cur.push_back(static_cast<int>(k));
      rec(k + 1, w + e.w);
      cur.pop_back();
      used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 0;
    }
    rec(k + 1, w);
  };
  rec(0, 0.0);
  return best;
}

std::vector<int> blossom_matching(const std::vector<WeightedEdge>& edges) {
  const int n = vertex_count(edges);
  if (edges.empty()) return {};
  double maxw = 0.0;
  for (const auto& e : edges) {
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw DomainError("matching weights must be finite and >= 0");
    maxw = std::max(maxw, e.w);
  }
  double scale = 1e12;
  if (maxw * scale > 1e15) scale = 1e15 / maxw;
  std::vector<std::array<std::int64_t, 3>> ie;
  ie.reserve(edges.size());
  for (const auto& e : edges) {
    ie.push_back({e.u, e.v, static_cast<std::int64_t>(std::llround(e.w * scale))});
  }
  Blossom solver(n, ie);
  return solver.run();
}

void extend_to_maximal(const std::vector<WeightedEdge>& edges, std::vector<int>& selected) {
  std::vector<char> used(static_cast<size_t>(vertex_count(edges)), 0);
  for (int k : selected) {
    used[static_cast<size_t>(edges[static_cast<size_t>(k)].u)] = 1;
    used[static_cast<size_t>(edges[static_cast<size_t>(k)].v)] = 1;
  }
  for (int k : greedy_order(edges)) {
    const auto& e = edges[static_cast<size_t>(k)];
    if (used[static_cast<size_t>(e.u)] || used[static_cast<size_t>(e.v)]) continue;
    used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
    selected.push_back(k);
  }
  std::sort(selected.begin(), selected.end());
}

std::vector<int> max_weight_matching(const std::vector<WeightedEdge>& edges, MatchingMode mode) {
  std::vector<int> sel;
  switch (mode) {
    case MatchingMode::greedy: return greedy_matching(edges);
    case MatchingMode::exact: sel = enumerate_matching(edges); break;
    case MatchingMode::blossom: sel = blossom_matching(edges); break;
  }
  extend_to_maximal(edges, sel);
  return sel;
}

double matching_weight(const std::vector<WeightedEdge>& edges, const std::vector<int>& selected) {
  double w = 0.0;
  for (int k : selected) w += edges.at(static_cast<size_t>(k)).w;
  return w;
}

bool is_matching(const std::vector<WeightedEdge>& edges, const std::vector<int>& selected) {
  std::vector<char> used(static_cast<size_t>(vertex_count(edges)), 0);
  for (int k : selected) {
    const auto& e = edges.at(static_cast<size_t>(k));
    if (used[static_cast<size_t>(e.u)] || used[static_cast<size_t>(e.v)]) return false;
    used[static_cast<size_t>(e.u)] = used[static_cast<size_t>(e.v)] = 1;
  }
  return true;
}

}  // namespace lislopt
