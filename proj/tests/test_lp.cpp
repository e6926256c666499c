#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "lislopt/error.hpp"
#include "lislopt/lp.hpp"
#include "oracles.hpp"

using namespace lislopt;

namespace {

void check_feasible(const LinearProgram& lp, const LpSolution& s) {
  for (double v : s.values) CHECK(v >= -1e-10);
  for (const auto& row : lp.constraints) {
    double lhs = 0.0;
    for (auto [j, a] : row.terms) lhs += a * s.values[static_cast<size_t>(j)];
    CHECK(lhs <= row.bound + 1e-8);
  }
  for (size_t j = 0; j < lp.upper.size(); ++j) CHECK(s.values[j] <= lp.upper[j] + 1e-8);
}

LinearProgram random_lp(std::mt19937_64& rng, bool allow_negative_b, bool bounded_box) {
  std::uniform_int_distribution<int> nv(1, 6), nc(1, 8);
  std::uniform_real_distribution<double> coef(-3.0, 5.0), b(0.0, 10.0), cc(-2.0, 4.0), u(0.0, 1.0);
  const int n = nv(rng), m = nc(rng);
  LinearProgram lp(n);
  for (int j = 0; j < n; ++j) lp.objective[static_cast<size_t>(j)] = cc(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(static_cast<size_t>(n));
    for (auto& a : row) a = u(rng) < 0.3 ? 0.0 : coef(rng);
    double bound = b(rng);
    if (allow_negative_b && u(rng) < 0.2) bound = -bound * 0.3;
    lp.add_constraint(row, bound);
  }
  if (bounded_box) {
    for (int j = 0; j < n; ++j) lp.set_upper(j, 1.0 + 9.0 * u(rng));
  } else {
    for (int j = 0; j < n; ++j) {
      if (u(rng) < 0.3) lp.set_upper(j, 1.0 + 9.0 * u(rng));
    }
  }
  return lp;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("one-dimensional and budget examples") {
  LinearProgram a(1);
  a.objective = {1.0};
  a.add_constraint(std::vector<double>{1.0}, 5.0);
  auto s = solve(a);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values[0] == doctest::Approx(5.0));
  CHECK(s.objective_value == doctest::Approx(5.0));

  LinearProgram b(2);
  b.objective = {1.0, 1.0};
  b.add_constraint({1.0, 0.0}, 1.0);
  b.add_constraint({0.0, 1.0}, 1.0);
  b.add_constraint({1.0, 1.0}, 1.5);
  s = solve(b);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == doctest::Approx(1.5));
  check_feasible(b, s);
  CHECK(certify(b, s).holds());
}

TEST_CASE("upper bounds act as constraints") {
  LinearProgram lp(2);
  lp.objective = {2.0, 1.0};
  lp.set_upper(0, 3.0);
  lp.set_upper(1, 4.0);
  lp.add_constraint({1.0, 1.0}, 5.0);
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values[0] == doctest::Approx(3.0));
  CHECK(s.values[1] == doctest::Approx(2.0));
  CHECK(s.objective_value == doctest::Approx(8.0));
  CHECK(s.upper_duals[0] == doctest::Approx(1.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram inf(1);
  inf.objective = {1.0};
  inf.add_constraint(std::vector<double>{-1.0}, -2.0);  // x >= 2
  inf.add_constraint(std::vector<double>{1.0}, 1.0);
  CHECK(solve(inf).status == LpStatus::infeasible);

  LinearProgram unb(2);
  unb.objective = {1.0, 0.0};
  unb.add_constraint({-1.0, 1.0}, 1.0);
  CHECK(solve(unb).status == LpStatus::unbounded);

  LinearProgram none(0);
  auto s = solve(none);
  CHECK(s.status == LpStatus::optimal);
  CHECK(s.objective_value == 0.0);

  // negative bound but feasible
  LinearProgram neg(2);
  neg.objective = {-1.0, -1.0};
  neg.add_constraint({-1.0, -2.0}, -4.0);
  s = solve(neg);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == doctest::Approx(-2.0));
  check_feasible(neg, s);
}

TEST_CASE("cycling example terminates") {
  // classic degenerate instance that cycles under the largest-coefficient rule
  LinearProgram lp(4);
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.add_constraint({0.25, -60.0, -0.04, 9.0}, 0.0);
  lp.add_constraint({0.5, -90.0, -0.02, 3.0}, 0.0);
  lp.add_constraint({0.0, 0.0, 1.0, 0.0}, 1.0);
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective_value == doctest::Approx(0.05));
  check_feasible(lp, s);

  LpTolerances eager;
  eager.degenerate_before_bland = 0;
  auto t = solve(lp, eager);
  CHECK(t.objective_value == doctest::Approx(0.05));
}

TEST_CASE("structural errors") {
  LinearProgram lp(2);
  CHECK_THROWS_AS(lp.add_constraint(std::vector<double>{1.0}, 1.0), ValidationError);
  lp.add_constraint(std::vector<std::pair<int, double>>{{5, 1.0}}, 1.0);
  CHECK_THROWS_AS(solve(lp), ValidationError);
  LinearProgram bad(2);
  bad.upper = {1.0};
  CHECK_THROWS_AS(solve(bad), ValidationError);
}

TEST_CASE("random LPs against vertex enumeration") {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const bool neg = trial % 3 == 0;
    auto lp = random_lp(rng, neg, trial % 2 == 0);
    auto s = solve(lp);
    auto o = oracle::lp_vertex_enumeration(lp, 1e6);
    if (!o.feasible) {
      CHECK(s.status == LpStatus::infeasible);
      continue;
    }
    if (!o.bounded) {
      CHECK(s.status == LpStatus::unbounded);
      continue;
    }
    REQUIRE(s.status == LpStatus::optimal);
    ++optimal;
    CHECK(s.objective_value == doctest::Approx(o.objective).epsilon(1e-9).scale(1.0));
    CHECK(std::fabs(s.objective_value - o.objective) < 1e-6);
    check_feasible(lp, s);
    const auto cert = certify(lp, s);
    CHECK(cert.holds());
    CHECK(cert.min_multiplier >= -1e-9);
  }
  CHECK(optimal >= 100);
}

TEST_CASE("deterministic and dumpable") {
  std::mt19937_64 rng(5);
  auto lp = random_lp(rng, false, true);
  auto a = solve(lp), b = solve(lp);
  CHECK(a.values == b.values);
  CHECK(a.iterations == b.iterations);
  CHECK(!to_text(lp).empty());
  CHECK(std::string(to_string(LpStatus::unbounded)) == "unbounded");
}

TEST_CASE("badly scaled rows") {
  // magnitudes in the spread seen by rate allocation
  LinearProgram lp(3);
  lp.objective = {0.9, 0.5, 0.99};
  lp.add_constraint({{0, 1.0}, {1, 1.0}}, 1200.0);
  lp.add_constraint(std::vector<std::pair<int, double>>{{2, 1.0}}, 0.013);
  lp.add_constraint({{0, 1.0}, {2, 1.0}}, 350.0);
  auto s = solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  auto o = oracle::lp_vertex_enumeration(lp);
  CHECK(s.objective_value == doctest::Approx(o.objective));
  CHECK(certify(lp, s).holds());
}

}  // TEST_SUITE
