#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace caa {

/// A point in R^d.
using Vec = std::vector<double>;

/// Ordered multiset of points; duplicates are preserved because distinct
/// nodes may submit the same vector.
using PointSet = std::vector<Vec>;

inline bool is_finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

inline void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector dimension mismatch");
  }
}

inline double dist_sq(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double dx = a[k] - b[k];
    s += dx * dx;
  }
  return s;
}

/// Euclidean distance.
inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

/// Coordinate-wise arithmetic mean of a nonempty set.
inline Vec centroid(const PointSet& points) {
  if (points.empty()) {
    throw std::invalid_argument("centroid of an empty set");
  }
  Vec mean(points.front().size(), 0.0);
  for (const Vec& p : points) {
    require_same_dim(mean, p);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += p[k];
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (double& x : mean) x *= inv;
  return mean;
}

/// Largest pairwise Euclidean distance; 0 for fewer than two points.
inline double diameter(const PointSet& points) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, dist_sq(points[i], points[j]));
    }
  }
  return std::sqrt(best);
}

inline bool approx_equal(const Vec& a, const Vec& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) return false;
  }
  return true;
}

}  // namespace caa
