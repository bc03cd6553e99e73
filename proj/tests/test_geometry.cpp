#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "caa/aggregate.hpp"
#include "caa/ball.hpp"
#include "caa/box.hpp"
#include "caa/hull.hpp"
#include "caa/rng.hpp"
#include "caa/vec.hpp"
#include "oracles.hpp"

using namespace caa;

namespace {
PointSet random_points(Rng& rng, std::size_t n, std::size_t d, double lo = -5.0, double hi = 5.0) {
  PointSet pts;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(d);
    for (double& x : v) x = rng.uniform(lo, hi);
    pts.push_back(v);
  }
  return pts;
}
}  // namespace

TEST_CASE("euclidean distance") {
  CHECK(dist({0, 0}, {3, 4}) == Catch::Approx(5.0));
  CHECK(dist({1.5}, {1.5}) == 0.0);
  CHECK(dist({1, 1, 1}, {0, 0, 0}) == Catch::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(dist({1, 2}, {1}), std::invalid_argument);

  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    PointSet p = random_points(rng, 3, 3);
    CHECK(dist(p[0], p[1]) == dist(p[1], p[0]));
    CHECK(dist(p[0], p[2]) <= dist(p[0], p[1]) + dist(p[1], p[2]) + 1e-12);
  }
}

TEST_CASE("centroid") {
  CHECK(centroid({{0, 0}, {2, 0}, {1, 3}}) == Vec{1, 1});
  CHECK(centroid({{2.5, -1}, {2.5, -1}, {2.5, -1}}) == Vec{2.5, -1});
  CHECK(centroid({{0}, {1}}) == Vec{0.5});
  CHECK_THROWS_AS(centroid({}), std::invalid_argument);
}

TEST_CASE("enumerate_centroids is lexicographic") {
  PointSet s{{0}, {1}, {2}};
  PointSet cents = enumerate_centroids(s, 2);
  REQUIRE(cents.size() == 3);
  CHECK(cents[0] == Vec{0.5});
  CHECK(cents[1] == Vec{1.0});
  CHECK(cents[2] == Vec{1.5});

  // n-t of n inputs where n-t vectors are zero
  PointSet lb{{0}, {0}, {0}, {1}};
  PointSet c = enumerate_centroids(lb, 3);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == Vec{0.0});
  CHECK(c[1][0] == Catch::Approx(1.0 / 3.0));
  CHECK(c[2][0] == Catch::Approx(1.0 / 3.0));
  CHECK(c[3][0] == Catch::Approx(1.0 / 3.0));

  PointSet same{{2, 2}, {2, 2}, {2, 2}};
  for (const Vec& v : enumerate_centroids(same, 2)) CHECK(v == Vec{2, 2});

  CHECK_THROWS_AS(enumerate_centroids(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_centroids(s, 4), std::invalid_argument);
}

TEST_CASE("bounding box") {
  Box b = bounding_box({{0, 0}, {1, 2}});
  CHECK(b[0].lo == 0.0);
  CHECK(b[0].hi == 1.0);
  CHECK(b[1].lo == 0.0);
  CHECK(b[1].hi == 2.0);
  Box degenerate = bounding_box({{3, -1}});
  CHECK(degenerate[0].lo == degenerate[0].hi);
  CHECK_THROWS_AS(bounding_box({}), std::invalid_argument);
}

TEST_CASE("centroid box formula matches subset enumeration") {
  Box b = centroid_box({{0}, {1}, {2}, {9}}, 3);
  CHECK(b[0].lo == Catch::Approx(1.0));
  CHECK(b[0].hi == Catch::Approx(4.0));

  Box same = centroid_box({{4, 4}, {4, 4}, {4, 4}}, 2);
  CHECK(same[0].lo == same[0].hi);

  Rng rng(2);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 2 + rng.below(11);
    const std::size_t m = 1 + rng.below(n);
    const std::size_t d = 1 + rng.below(3);
    PointSet pts = random_points(rng, n, d);
    Box impl = centroid_box(pts, m);
    Box oracle = oracles::centroid_box_bruteforce(pts, m);
    for (std::size_t k = 0; k < d; ++k) {
      CHECK(impl[k].lo == Catch::Approx(oracle[k].lo).margin(1e-12));
      CHECK(impl[k].hi == Catch::Approx(oracle[k].hi).margin(1e-12));
    }
  }
}

TEST_CASE("trimmed box") {
  Box b = trimmed_box({{0}, {1}, {2}, {9}}, 1);
  CHECK(b[0].lo == 1.0);
  CHECK(b[0].hi == 2.0);

  PointSet pts{{3, 0}, {1, 5}, {2, 2}};
  Box untrimmed = trimmed_box(pts, 0);
  Box bb = bounding_box(pts);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(untrimmed[k].lo == bb[k].lo);
    CHECK(untrimmed[k].hi == bb[k].hi);
  }
  CHECK_THROWS_AS(trimmed_box(pts, 2), std::invalid_argument);
}

TEST_CASE("box intersection, midpoint, longest edge") {
  Box a({{0, 2}, {0, 2}});
  Box b({{1, 3}, {1, 3}});
  Box i = box_intersection(a, b);
  CHECK(i[0].lo == 1.0);
  CHECK(i[0].hi == 2.0);

  Box far({{5, 6}, {5, 6}});
  CHECK(box_intersection(a, far).is_empty());

  Box self = box_intersection(a, a);
  CHECK(self[0].lo == a[0].lo);
  CHECK(self[1].hi == a[1].hi);

  // one-ulp inversions collapse instead of reporting empty
  Box lo({{1.0, 1.0}});
  Box hi({{1.0 + 1e-12, 2.0}});
  CHECK_FALSE(box_intersection(lo, hi, 1e-9).is_empty());
  CHECK(box_intersection(lo, hi).is_empty());

  CHECK(midpoint(Box({{1, 2}, {0, 4}})) == Vec{1.5, 2.0});
  CHECK(midpoint(Box({{3, 3}})) == Vec{3});
  CHECK(Box({{1, 2}}).contains(midpoint(Box({{1, 2}}))));
  CHECK_THROWS_AS(midpoint(Box::empty(2)), std::invalid_argument);

  CHECK(longest_edge(Box({{0, 1}, {0, 3}})) == 3.0);
  CHECK(longest_edge(Box({{2, 2}})) == 0.0);
  CHECK_THROWS_AS(longest_edge(Box::empty(1)), std::invalid_argument);
}

TEST_CASE("smallest enclosing ball basics") {
  Ball two = smallest_enclosing_ball({{0}, {1}});
  CHECK(two.center[0] == Catch::Approx(0.5));
  CHECK(two.radius == Catch::Approx(0.5));

  Ball one = smallest_enclosing_ball({{2, 7}});
  CHECK(one.center == Vec{2, 7});
  CHECK(one.radius == 0.0);

  Ball dup = smallest_enclosing_ball({{1, 2}, {1, 2}, {1, 2}});
  CHECK(dup.radius == 0.0);
}

TEST_CASE("smallest enclosing ball matches the subset-circumball oracle") {
  Rng rng(3);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 2 + rng.below(9);
    const std::size_t d = 1 + rng.below(4);
    PointSet pts = random_points(rng, n, d);
    Ball impl = smallest_enclosing_ball(pts);
    Ball oracle = oracles::miniball_bruteforce(pts);
    CHECK(std::abs(impl.radius - oracle.radius) <= 1e-9);
    for (const Vec& p : pts) CHECK(dist(impl.center, p) <= impl.radius + 1e-9);
  }
  // collinear degeneracies
  Ball col = smallest_enclosing_ball({{0, 0}, {1, 1}, {2, 2}, {1, 1}});
  CHECK(col.radius == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("mda") {
  PointSet m{{0}, {0.1}, {0.2}, {5}};
  CHECK(mda_indices(m, 3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(diameter(mda(m, 3)) == Catch::Approx(0.2));

  PointSet same{{1, 1}, {1, 1}, {1, 1}, {1, 1}};
  CHECK(mda_indices(same, 2) == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(mda(m, 5), std::invalid_argument);

  Rng rng(4);
  for (int iter = 0; iter < 80; ++iter) {
    const std::size_t n = 2 + rng.below(9);
    const std::size_t k = 1 + rng.below(n);
    const std::size_t d = 1 + rng.below(3);
    PointSet pts = random_points(rng, n, d);
    CHECK(mda_indices(pts, k) == oracles::mda_bruteforce(pts, k));
  }
}

TEST_CASE("trimmed mean") {
  CHECK(trimmed_mean({{0}, {1}, {2}, {9}}, 1, 1) == Vec{1.5});
  PointSet pts{{4, 0}, {0, 2}, {2, 7}};
  CHECK(approx_equal(trimmed_mean(pts, 0, 0), centroid(pts), 1e-12));
  CHECK_THROWS_AS(trimmed_mean(pts, 2, 1), std::invalid_argument);

  // sync-style membership: trimmed mean lies in TB_i ∩ CB_i
  Rng rng(5);
  const int n = 7, t = 2;
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t mi = static_cast<std::size_t>(n - t) + rng.below(t + 1);
    PointSet m = random_points(rng, mi, 2);
    const std::size_t trim = mi - static_cast<std::size_t>(n - t);
    Vec tm = trimmed_mean(m, trim, trim);
    Box inter = box_intersection(trimmed_box(m, trim), centroid_box(m, n - t), 1e-9);
    REQUIRE_FALSE(inter.is_empty());
    CHECK(inter.contains(tm, 1e-9));
  }
}

TEST_CASE("trusted-box containment under bounded corruption") {
  // with at most `trim` foreign values per coordinate, the trimmed box
  // stays inside the box of the genuine values
  Rng rng(6);
  for (int iter = 0; iter < 80; ++iter) {
    const std::size_t d = 1 + rng.below(3);
    PointSet correct = random_points(rng, 5, d);
    const std::size_t byz = rng.below(3);
    PointSet m = correct;
    for (std::size_t i = 0; i < byz; ++i) {
      Vec v(d);
      for (double& x : v) x = rng.uniform(-50, 50);
      m.push_back(v);
    }
    Box tb_local = trimmed_box(m, byz);
    Box tb = bounding_box(correct);
    for (std::size_t k = 0; k < d; ++k) {
      CHECK(tb_local[k].lo >= tb[k].lo - 1e-12);
      CHECK(tb_local[k].hi <= tb[k].hi + 1e-12);
    }
  }
}

TEST_CASE("centroid-box growth when the subset size shrinks by t") {
  // provable bound: edge(centroid_box(S, n-2t)) <= 2(n-t)/(n-2t) * edge(centroid_box(S, n-t))
  Rng rng(7);
  const int n = 7, t = 2;
  const double factor = 2.0 * (n - t) / (n - 2 * t);
  for (int iter = 0; iter < 60; ++iter) {
    PointSet pts = random_points(rng, n, 2);
    Box cb = centroid_box(pts, n - t);
    Box cbt = centroid_box(pts, n - 2 * t);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(cbt[k].hi - cbt[k].lo <= factor * (cb[k].hi - cb[k].lo) + 1e-9);
    }
  }
}

TEST_CASE("subset-centroid diameter ratio under t < n/7") {
  Rng rng(8);
  const int n = 8, t = 1;
  for (int iter = 0; iter < 40; ++iter) {
    PointSet pts = random_points(rng, n, 2);
    const double d1 = diameter(enumerate_centroids(pts, n - t));
    const double d2 = diameter(enumerate_centroids(pts, n - 2 * t));
    CHECK(d2 <= (14.0 / 5.0) * d1 + 1e-9);
  }
}

TEST_CASE("centroid lies in the hull of every subset-centroid cloud") {
  Rng rng(9);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 3 + rng.below(5);
    PointSet pts = random_points(rng, n, 2);
    const Vec c = centroid(pts);
    for (std::size_t m = 1; m <= n; ++m) {
      CHECK(in_convex_hull(c, enumerate_centroids(pts, m)));
    }
  }
}
