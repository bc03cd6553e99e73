#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "caa/aggregate.hpp"
#include "caa/hull.hpp"
#include "caa/lp.hpp"
#include "caa/rng.hpp"
#include "oracles.hpp"

using namespace caa;

TEST_CASE("simplex solves small programs") {
  // min x0 + x1 s.t. x0 + x1 = 1
  lp::Result r = lp::minimize({{1, 1}}, {1}, {1, 1});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == Catch::Approx(1.0));

  // min -x0 s.t. x0 - x1 = 0 is unbounded below
  r = lp::minimize({{1, -1}}, {0}, {-1, 0});
  CHECK(r.status == lp::Status::Unbounded);

  // x0 + x1 = -1 has no nonnegative solution
  r = lp::minimize({{1, 1}, {1, 1}}, {1, 2}, {0, 0});
  CHECK(r.status == lp::Status::Infeasible);
  CHECK(r.feasibility_gap > 0.4);

  // redundant rows are tolerated
  r = lp::minimize({{1, 1}, {2, 2}}, {1, 2}, {1, 2});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == Catch::Approx(1.0));

  // transportation-style program with a known optimum:
  // min 2a + 3b s.t. a + b = 4, a <= 3 (slack c): a + c = 3
  r = lp::minimize({{1, 1, 0}, {1, 0, 1}}, {4, 3}, {2, 3, 0});
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.z[0] == Catch::Approx(3.0));
  CHECK(r.z[1] == Catch::Approx(1.0));
  CHECK(r.objective == Catch::Approx(9.0));
}

TEST_CASE("simplex handles degenerate pivots") {
  // many identical columns force ties; Bland's rule must terminate
  std::vector<std::vector<double>> a(3, std::vector<double>(8, 1.0));
  a[1] = {1, 1, 1, 1, 0, 0, 0, 0};
  a[2] = {0, 0, 0, 0, 1, 1, 1, 1};
  lp::Result r = lp::minimize(a, {2, 1, 1}, std::vector<double>(8, 1.0));
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == Catch::Approx(2.0));
}

TEST_CASE("convex hull membership") {
  PointSet tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(in_convex_hull({0.3, 0.3}, tri));
  CHECK_FALSE(in_convex_hull({0.6, 0.6}, tri));
  CHECK(in_convex_hull({0, 0}, tri));

  Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    PointSet pts;
    const std::size_t n = 3 + rng.below(5);
    for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    CHECK(in_convex_hull(centroid(pts), pts));
    // anything outside the bounding box is outside the hull
    Box bb = bounding_box(pts);
    CHECK_FALSE(in_convex_hull({bb[0].hi + 1.0, bb[1].hi + 1.0}, pts));
  }
}

TEST_CASE("safe point in one dimension matches interval intersection") {
  PointSet m{{0}, {1}, {2}, {9}};
  std::optional<Vec> x = safe_point(m, 3);
  REQUIRE(x);
  CHECK((*x)[0] == Catch::Approx(1.5).margin(1e-6));

  Rng rng(12);
  for (int iter = 0; iter < 25; ++iter) {
    const std::size_t n = 4 + rng.below(4);
    const std::size_t ss = 2 + rng.below(n - 2);
    std::vector<double> vals;
    PointSet pts;
    for (std::size_t i = 0; i < n; ++i) {
      vals.push_back(rng.uniform(-3, 3));
      pts.push_back({vals.back()});
    }
    const auto [lo, hi] = oracles::safe_interval_1d(vals, ss);
    std::optional<Vec> p = safe_point(pts, ss);
    if (lo <= hi + 1e-9) {
      REQUIRE(p);
      CHECK((*p)[0] >= lo - 1e-6);
      CHECK((*p)[0] <= hi + 1e-6);
    } else {
      CHECK_FALSE(p);
    }
  }
}

TEST_CASE("safe point is in every subset hull") {
  Rng rng(13);
  for (int iter = 0; iter < 20; ++iter) {
    PointSet pts;
    for (int i = 0; i < 5; ++i) pts.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    std::optional<Vec> x = safe_point(pts, 4);
    REQUIRE(x);
    Combinations comb(5, 4);
    do {
      PointSet subset;
      for (std::size_t i : comb.indices()) subset.push_back(pts[i]);
      CHECK(in_convex_hull(*x, subset));
    } while (comb.next());
  }
}

TEST_CASE("safe point collapses to the pivot of the hyperplane construction") {
  // d=2, t=1: one node at the origin, two perturbed groups, byzantine at the
  // origin; the intersection of all 3-subset hulls is the origin alone.
  const double delta = 1e-6;
  PointSet m{{0, 0}, {1 + delta, 0}, {1, delta}, {0, 0}};
  std::optional<Vec> x = safe_point(m, 3);
  REQUIRE(x);
  CHECK(std::abs((*x)[0]) < 1e-5);
  CHECK(std::abs((*x)[1]) < 1e-5);
}

TEST_CASE("safe point on identical vectors returns that vector") {
  PointSet m{{2, 3}, {2, 3}, {2, 3}, {2, 3}};
  std::optional<Vec> x = safe_point(m, 3);
  REQUIRE(x);
  CHECK(approx_equal(*x, {2, 3}, 1e-9));
}

TEST_CASE("empty safe area is reported") {
  // subsets of size 1 of two distinct points have disjoint hulls
  CHECK_FALSE(safe_point({{0}, {1}}, 1));
}
