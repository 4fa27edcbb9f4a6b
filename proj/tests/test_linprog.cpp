#include <catch2/catch_amalgamated.hpp>

#include "propeff/linprog.hpp"

using namespace propeff;

TEST_CASE("single-constraint optimum") {
  std::vector<LinearConstraint> cons{{make_vec({1.0}), Rel::Ge, 2.0}};
  LpResult r = lp_solve(make_vec({1.0}), cons, Sense::Min);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Catch::Approx(2.0));
  CHECK(r.point[0] == Catch::Approx(2.0));
}

TEST_CASE("box maximum at corner") {
  std::vector<LinearConstraint> cons{
      {make_vec({1.0, 0.0}), Rel::Ge, 0.0}, {make_vec({1.0, 0.0}), Rel::Le, 1.0},
      {make_vec({0.0, 1.0}), Rel::Ge, 0.0}, {make_vec({0.0, 1.0}), Rel::Le, 1.0}};
  LpResult r = lp_solve(make_vec({1.0, 1.0}), cons, Sense::Max);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Catch::Approx(2.0));
  CHECK(r.point[0] == Catch::Approx(1.0));
  CHECK(r.point[1] == Catch::Approx(1.0));
}

TEST_CASE("contradictory bounds are infeasible") {
  std::vector<LinearConstraint> cons{{make_vec({1.0}), Rel::Ge, 1.0},
                                     {make_vec({1.0}), Rel::Le, 0.0}};
  LpResult r = lp_solve(make_vec({0.0}), cons, Sense::Min);
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded detection") {
  std::vector<LinearConstraint> cons{{make_vec({1.0, 0.0}), Rel::Ge, 0.0}};
  LpResult r = lp_solve(make_vec({-1.0, 0.0}), cons, Sense::Min);
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("equality system feasibility returns a nonnegative solution") {
  // x1 + x2 = 1, x1 - x2 = 0  ->  x = (1/2, 1/2)
  Mat A(2, 2);
  A << 1, 1, 1, -1;
  Vec b = make_vec({1.0, 0.0});
  auto x = lp_feasible_point(A, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Catch::Approx(0.5));
  CHECK((*x)[1] == Catch::Approx(0.5));
}

TEST_CASE("redundant rows are tolerated") {
  Mat A(3, 2);
  A << 1, 1, 2, 2, 1, 0;
  Vec b = make_vec({1.0, 2.0, 0.25});
  auto x = lp_feasible_point(A, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Catch::Approx(0.25));
  CHECK((*x)[1] == Catch::Approx(0.75));
}

TEST_CASE("primal and dual objectives agree on random bounded LPs") {
  SplitMix64 rng(20240917ULL);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 4));
    const int m = static_cast<int>(rng.uniform_int(1, 5));
    std::vector<LinearConstraint> cons;
    for (int i = 0; i < m; ++i) {
      Vec a(n);
      for (int j = 0; j < n; ++j) a[j] = rng.uniform_int(-4, 4);
      const Rel rel = static_cast<Rel>(rng.uniform_int(0, 2));
      cons.push_back({a, rel, static_cast<double>(rng.uniform_int(-4, 4))});
    }
    // Box to keep the problem bounded.
    for (int j = 0; j < n; ++j) {
      Vec e = Vec::Zero(n);
      e[j] = 1.0;
      cons.push_back({e, Rel::Le, 10.0});
      cons.push_back({e, Rel::Ge, -10.0});
    }
    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = rng.uniform_int(-3, 3);
    LpResult r = lp_solve(c, cons, Sense::Min);
    if (r.status != LpStatus::Optimal) continue;
    ++solved;
    CHECK(std::abs(r.value - r.dual_value) < 1e-8);
    // Primal feasibility of the returned vertex.
    for (const auto& con : cons) {
      const double lhs = con.coeffs.dot(r.point);
      if (con.rel == Rel::Le) CHECK(lhs <= con.rhs + 1e-7);
      if (con.rel == Rel::Ge) CHECK(lhs >= con.rhs - 1e-7);
      if (con.rel == Rel::Eq) CHECK(lhs == Catch::Approx(con.rhs).margin(1e-7));
    }
  }
  CHECK(solved > 100);
}
