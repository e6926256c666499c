#pragma once

// Dense-basis revised simplex for   maximize c.x  s.t.  A x <= b,  0 <= x <= u.

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lislopt {

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    double bound = 0.0;
  };

  std::vector<double> objective;
  std::vector<Row> constraints;
  std::vector<double> upper;  // empty, or one entry per variable (+inf = none)

  explicit LinearProgram(int num_vars = 0) : objective(static_cast<size_t>(num_vars), 0.0) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  void add_constraint(const std::vector<double>& dense, double bound);
  void add_constraint(std::vector<std::pair<int, double>> terms, double bound);
  void set_upper(int var, double bound);
};

enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  std::vector<double> duals;        // one per constraint, >= 0
  std::vector<double> upper_duals;  // one per variable, 0 when unbounded above
  int iterations = 0;
};

struct LpTolerances {
  double feasibility = 1e-8;
  double reduced_cost = 1e-9;
  double pivot = 1e-12;
  int refactor_every = 64;
  int degenerate_before_bland = 50;
};

// Throws ValidationError on inconsistent dimensions and NumericError when the
// basis stays singular after refactorization.
LpSolution solve(const LinearProgram& lp, const LpTolerances& tol = {});

struct DualityCertificate {
  double primal = 0.0;
  double dual = 0.0;
  double max_dual_infeasibility = 0.0;  // max over variables of (c - A^T y - w)+
  double min_multiplier = 0.0;
  bool holds(double rel = 1e-6) const;
};

DualityCertificate certify(const LinearProgram& lp, const LpSolution& sol);

// Human-readable dump for triage.
std::string to_text(const LinearProgram& lp);

}  // namespace lislopt
