#include "lislopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lislopt/error.hpp"

namespace lislopt {

void LinearProgram::add_constraint(const std::vector<double>& dense, double bound) {
  if (static_cast<int>(dense.size()) != num_vars()) {
    throw ValidationError("constraint row length differs from objective length");
  }
  Row r;
  for (size_t j = 0; j < dense.size(); ++j) {
    if (dense[j] != 0.0) r.terms.emplace_back(static_cast<int>(j), dense[j]);
  }
  r.bound = bound;
  constraints.push_back(std::move(r));
}

void LinearProgram::add_constraint(std::vector<std::pair<int, double>> terms, double bound) {
  constraints.push_back({std::move(terms), bound});
}

void LinearProgram::set_upper(int var, double bound) {
  if (upper.empty()) upper.assign(objective.size(), std::numeric_limits<double>::infinity());
  upper.at(static_cast<size_t>(var)) = bound;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

namespace {

using SparseCol = std::vector<std::pair<int, double>>;

class Simplex {
 public:
  Simplex(int m, int n, std::vector<SparseCol> cols, std::vector<double> b, const LpTolerances& tol)
      : m_(m), n_(n), cols_(std::move(cols)), b_(std::move(b)), tol_(tol) {}

  // Columns [0,n) structural, then m logicals, then artificials.
  void set_basis(std::vector<int> basis, int first_artificial) {
    basis_ = std::move(basis);
    first_art_ = first_artificial;
    in_basis_.assign(cols_.size(), -1);
    for (int r = 0; r < m_; ++r) in_basis_[static_cast<size_t>(basis_[static_cast<size_t>(r)])] = r;
    refactor();
  }

  // Maximizes cost.x over the current feasible basis. Returns false when
  // unbounded.
  bool run(const std::vector<double>& cost, bool allow_artificials) {
    bool bland = false;
    int degenerate = 0;
    const long cap = 50L * (m_ + static_cast<long>(cols_.size())) + 1000;
    std::vector<double> y(static_cast<size_t>(m_));
    std::vector<double> w(static_cast<size_t>(m_));
    for (;;) {
      if (++iterations_ > cap) throw NumericError("simplex iteration limit reached");
      if (since_refactor_ >= tol_.refactor_every) refactor();
      duals(cost, y);

      int enter = -1;
      double best = tol_.reduced_cost;
      for (size_t j = 0; j < cols_.size(); ++j) {
        if (in_basis_[j] >= 0) continue;
        if (!allow_artificials && static_cast<int>(j) >= first_art_) continue;
        double d = cost[j];
        for (auto [i, a] : cols_[j]) d -= y[static_cast<size_t>(i)] * a;
        if (d > best) {
          enter = static_cast<int>(j);
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return true;

      ftran(enter, w);
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double wr = w[static_cast<size_t>(r)];
        const int col = basis_[static_cast<size_t>(r)];
        double q;
        if (!allow_artificials && col >= first_art_ && std::abs(wr) > 1e-9) {
          q = 0.0;  // pivot a zero-level artificial out
        } else if (wr > 1e-9) {
          q = std::max(0.0, x_[static_cast<size_t>(r)]) / wr;
        } else {
          continue;
        }
        bool take = false;
        if (leave < 0 || q < ratio - 1e-12) {
          take = true;
        } else if (q <= ratio + 1e-12) {
          if (bland) take = col < basis_[static_cast<size_t>(leave)];
          else take = std::abs(wr) > std::abs(w[static_cast<size_t>(leave)]);
        }
        if (take) {
          leave = r;
          ratio = q;
        }
      }
      if (leave < 0) return false;

      if (std::abs(w[static_cast<size_t>(leave)]) < tol_.pivot) {
        refactor();
        ftran(enter, w);
        if (std::abs(w[static_cast<size_t>(leave)]) < tol_.pivot) {
          throw NumericError("simplex pivot below tolerance after refactorization");
        }
      }
      pivot(enter, leave, w, ratio);
      if (ratio <= 1e-12) {
        if (++degenerate >= tol_.degenerate_before_bland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  void duals(const std::vector<double>& cost, std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (int r = 0; r < m_; ++r) {
      const double cb = cost[static_cast<size_t>(basis_[static_cast<size_t>(r)])];
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<size_t>(r) * static_cast<size_t>(m_)];
      for (int i = 0; i < m_; ++i) y[static_cast<size_t>(i)] += cb * row[i];
    }
  }

  double value_of(int col) const {
    const int r = in_basis_[static_cast<size_t>(col)];
    return r < 0 ? 0.0 : x_[static_cast<size_t>(r)];
  }

  double artificial_sum() const {
    double s = 0.0;
    for (int r = 0; r < m_; ++r) {
      if (basis_[static_cast<size_t>(r)] >= first_art_) s += std::max(0.0, x_[static_cast<size_t>(r)]);
    }
    return s;
  }

  int iterations() const { return static_cast<int>(iterations_); }

  void refactor() {
    const size_t m = static_cast<size_t>(m_);
    std::vector<double> B(m * m, 0.0);
    for (size_t r = 0; r < m; ++r) {
      for (auto [i, a] : cols_[static_cast<size_t>(basis_[r])]) B[static_cast<size_t>(i) * m + r] = a;
    }
    binv_.assign(m * m, 0.0);
    for (size_t i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
    for (size_t c = 0; c < m; ++c) {
      size_t p = c;
      for (size_t r = c + 1; r < m; ++r) {
        if (std::abs(B[r * m + c]) > std::abs(B[p * m + c])) p = r;
      }
      if (std::abs(B[p * m + c]) < tol_.pivot) throw NumericError("singular simplex basis");
      if (p != c) {
        for (size_t k = 0; k < m; ++k) {
          std::swap(B[p * m + k], B[c * m + k]);
          std::swap(binv_[p * m + k], binv_[c * m + k]);
        }
      }
      const double inv = 1.0 / B[c * m + c];
      for (size_t k = 0; k < m; ++k) {
        B[c * m + k] *= inv;
        binv_[c * m + k] *= inv;
      }
      for (size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = B[r * m + c];
        if (f == 0.0) continue;
        for (size_t k = 0; k < m; ++k) {
          B[r * m + k] -= f * B[c * m + k];
          binv_[r * m + k] -= f * binv_[c * m + k];
        }
      }
    }
    x_.assign(m, 0.0);
    for (size_t r = 0; r < m; ++r) {
      double s = 0.0;
      for (size_t i = 0; i < m; ++i) s += binv_[r * m + i] * b_[i];
      x_[r] = s;
    }
    since_refactor_ = 0;
  }

 private:
  void ftran(int col, std::vector<double>& w) const {
    std::fill(w.begin(), w.end(), 0.0);
    const size_t m = static_cast<size_t>(m_);
    for (auto [i, a] : cols_[static_cast<size_t>(col)]) {
      for (size_t r = 0; r < m; ++r) w[r] += binv_[r * m + static_cast<size_t>(i)] * a;
    }
  }

  void pivot(int enter, int leave, const std::vector<double>& w, double theta) {
    const size_t m = static_cast<size_t>(m_);
    const size_t l = static_cast<size_t>(leave);
    for (size_t r = 0; r < m; ++r) {
      if (r != l) x_[r] -= theta * w[r];
    }
    x_[l] = theta;
    double* prow = &binv_[l * m];
    const double inv = 1.0 / w[l];
    for (size_t k = 0; k < m; ++k) prow[k] *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == l || w[r] == 0.0) continue;
      double* row = &binv_[r * m];
      const double f = w[r];
      for (size_t k = 0; k < m; ++k) row[k] -= f * prow[k];
    }
    in_basis_[static_cast<size_t>(basis_[l])] = -1;
    basis_[l] = enter;
    in_basis_[static_cast<size_t>(enter)] = leave;
    ++since_refactor_;
  }

  int m_;
  int n_;
  std::vector<SparseCol> cols_;
  std::vector<double> b_;
  LpTolerances tol_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  int first_art_ = 0;
  std::vector<double> binv_;
  std::vector<double> x_;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const LpTolerances& tol) {
  const int n = lp.num_vars();
  if (!lp.upper.empty() && static_cast<int>(lp.upper.size()) != n) {
    throw ValidationError("upper bound vector length differs from objective length");
  }
  // Gather rows, bounds become extra rows.
  std::vector<LinearProgram::Row> rows = lp.constraints;
  std::vector<int> upper_row(static_cast<size_t>(n), -1);
  for (int j = 0; j < n && !lp.upper.empty(); ++j) {
    const double u = lp.upper[static_cast<size_t>(j)];
    if (std::isinf(u) && u > 0) continue;
    if (!std::isfinite(u)) throw ValidationError("upper bounds must be finite or +inf");
    upper_row[static_cast<size_t>(j)] = static_cast<int>(rows.size());
    rows.push_back({{{j, 1.0}}, u});
  }
  for (const auto& r : rows) {
    for (auto [j, a] : r.terms) {
      if (j < 0 || j >= n) throw ValidationError("constraint references unknown variable");
      if (!std::isfinite(a)) throw ValidationError("non-finite constraint coefficient");
    }
    if (!std::isfinite(r.bound)) throw ValidationError("non-finite constraint bound");
  }
  const int m = static_cast<int>(rows.size());

  LpSolution sol;
  sol.values.assign(static_cast<size_t>(n), 0.0);
  sol.duals.assign(lp.constraints.size(), 0.0);
  sol.upper_duals.assign(static_cast<size_t>(n), 0.0);

  // equilibration: rows then columns by max magnitude
  std::vector<double> rs(static_cast<size_t>(m), 1.0), cs(static_cast<size_t>(n), 1.0);
  for (int i = 0; i < m; ++i) {
    double mx = 0.0;
    for (auto [j, a] : rows[static_cast<size_t>(i)].terms) mx = std::max(mx, std::abs(a));
    if (mx > 0.0) rs[static_cast<size_t>(i)] = 1.0 / mx;
  }
  std::vector<double> cmax(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    for (auto [j, a] : rows[static_cast<size_t>(i)].terms) {
      cmax[static_cast<size_t>(j)] =
          std::max(cmax[static_cast<size_t>(j)], std::abs(a) * rs[static_cast<size_t>(i)]);
    }
  }
  for (int j = 0; j < n; ++j) {
    if (cmax[static_cast<size_t>(j)] > 0.0) cs[static_cast<size_t>(j)] = 1.0 / cmax[static_cast<size_t>(j)];
  }

  std::vector<double> sign(static_cast<size_t>(m), 1.0);
  std::vector<double> b(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double bi = rows[static_cast<size_t>(i)].bound * rs[static_cast<size_t>(i)];
    sign[static_cast<size_t>(i)] = bi < 0.0 ? -1.0 : 1.0;
    b[static_cast<size_t>(i)] = std::abs(bi);
  }

  std::vector<SparseCol> cols(static_cast<size_t>(n));
  for (int i = 0; i < m; ++i) {
    for (auto [j, a] : rows[static_cast<size_t>(i)].terms) {
      const double v = a * rs[static_cast<size_t>(i)] * cs[static_cast<size_t>(j)] * sign[static_cast<size_t>(i)];
      if (v != 0.0) cols[static_cast<size_t>(j)].emplace_back(i, v);
    }
  }
  // merge duplicate (row, var) terms
  for (auto& c : cols) {
    std::sort(c.begin(), c.end());
    SparseCol merged;
    for (auto& t : c) {
      if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
      else merged.push_back(t);
    }
    c.swap(merged);
  }
  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) cols.push_back({{i, sign[static_cast<size_t>(i)]}});
  const int first_art = static_cast<int>(cols.size());
  for (int i = 0; i < m; ++i) {
    if (sign[static_cast<size_t>(i)] < 0.0) {
      basis[static_cast<size_t>(i)] = static_cast<int>(cols.size());
      cols.push_back({{i, 1.0}});
    } else {
      basis[static_cast<size_t>(i)] = n + i;
    }
  }
  const int total = static_cast<int>(cols.size());

  Simplex sx(m, n, std::move(cols), b, tol);
  sx.set_basis(basis, first_art);

  if (total > first_art) {
    std::vector<double> phase1(static_cast<size_t>(total), 0.0);
    for (int j = first_art; j < total; ++j) phase1[static_cast<size_t>(j)] = -1.0;
    sx.run(phase1, true);
    if (sx.artificial_sum() > tol.feasibility) {
      sol.status = LpStatus::infeasible;
      sol.iterations = sx.iterations();
      return sol;
    }
  }

  std::vector<double> cost(static_cast<size_t>(total), 0.0);
  for (int j = 0; j < n; ++j) {
    cost[static_cast<size_t>(j)] = lp.objective[static_cast<size_t>(j)] * cs[static_cast<size_t>(j)];
  }
  const bool bounded = sx.run(cost, false);
  sol.iterations = sx.iterations();
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  sx.refactor();

  sol.status = LpStatus::optimal;
  double obj = 0.0;
  for (int j = 0; j < n; ++j) {
    double v = sx.value_of(j) * cs[static_cast<size_t>(j)];
    if (v < 0.0 && v > -1e-9) v = 0.0;
    sol.values[static_cast<size_t>(j)] = v;
    obj += lp.objective[static_cast<size_t>(j)] * v;
  }
  sol.objective_value = obj;

  std::vector<double> y(static_cast<size_t>(m));
  sx.duals(cost, y);
  std::vector<double> orig(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    orig[static_cast<size_t>(i)] =
        y[static_cast<size_t>(i)] * rs[static_cast<size_t>(i)] * sign[static_cast<size_t>(i)];
  }
  for (size_t i = 0; i < lp.constraints.size(); ++i) sol.duals[i] = orig[i];
  for (int j = 0; j < n; ++j) {
    const int r = upper_row[static_cast<size_t>(j)];
    if (r >= 0) sol.upper_duals[static_cast<size_t>(j)] = orig[static_cast<size_t>(r)];
  }
  return sol;
}

bool DualityCertificate::holds(double rel) const {
  const double scale = std::max(1.0, std::abs(primal));
  return std::abs(primal - dual) <= rel * scale && max_dual_infeasibility <= rel * scale &&
         min_multiplier >= -rel * scale;
}

DualityCertificate certify(const LinearProgram& lp, const LpSolution& sol) {
  DualityCertificate c;
  const size_t n = lp.objective.size();
  for (size_t j = 0; j < n; ++j) c.primal += lp.objective[j] * sol.values.at(j);
  std::vector<double> aty(n, 0.0);
  double mn = 0.0;
  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    const double yi = sol.duals.at(i);
    mn = std::min(mn, yi);
    c.dual += yi * lp.constraints[i].bound;
    for (auto [j, a] : lp.constraints[i].terms) aty[static_cast<size_t>(j)] += a * yi;
  }
  for (size_t j = 0; j < n; ++j) {
    const double w = sol.upper_duals.empty() ? 0.0 : sol.upper_duals[j];
    mn = std::min(mn, w);
    if (w != 0.0) c.dual += w * lp.upper.at(j);
    c.max_dual_infeasibility = std::max(c.max_dual_infeasibility, lp.objective[j] - aty[j] - w);
  }
  c.min_multiplier = mn;
  return c;
}

std::string to_text(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(17);
  os << "maximize\n ";
  for (size_t j = 0; j < lp.objective.size(); ++j) {
    if (lp.objective[j] != 0.0) os << " + " << lp.objective[j] << " x" << j;
  }
  os << "\nsubject to\n";
  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    os << " r" << i << ":";
    for (auto [j, a] : lp.constraints[i].terms) os << " + " << a << " x" << j;
    os << " <= " << lp.constraints[i].bound << "\n";
  }
  os << "bounds\n";
  for (size_t j = 0; j < lp.objective.size(); ++j) {
    os << "  0 <= x" << j;
    if (!lp.upper.empty() && std::isfinite(lp.upper[j])) os << " <= " << lp.upper[j];
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

}  // namespace lislopt
