#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "caa/vec.hpp"

namespace caa {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Axis-parallel box given as d closed intervals. The empty box is a
// distinguished value so intersections compose without preconditions.
class Box {
 public:
  explicit Box(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
    for (const Interval& i : iv_) {
      if (!(i.lo <= i.hi)) throw std::invalid_argument("inverted box interval");
    }
  }

  static Box empty(std::size_t dim) {
    Box b;
    b.iv_.resize(dim);
    b.empty_ = true;
    return b;
  }

  bool is_empty() const { return empty_; }
  std::size_t dim() const { return iv_.size(); }

  const Interval& operator[](std::size_t k) const { return iv_[k]; }

  bool contains(const Vec& x, double tol = 0.0) const {
    if (empty_ || x.size() != iv_.size()) return false;
    for (std::size_t k = 0; k < iv_.size(); ++k) {
      if (x[k] < iv_[k].lo - tol || x[k] > iv_[k].hi + tol) return false;
    }
    return true;
  }

 private:
  Box() = default;
  std::vector<Interval> iv_;
  bool empty_ = false;
};

/// Smallest box containing every point of a nonempty set.
inline Box bounding_box(const PointSet& points) {
  if (points.empty()) throw std::invalid_argument("bounding box of an empty set");
  const std::size_t d = points.front().size();
  std::vector<Interval> iv(d);
  for (std::size_t k = 0; k < d; ++k) iv[k] = {points.front()[k], points.front()[k]};
  for (const Vec& p : points) {
    require_same_dim(points.front(), p);
    for (std::size_t k = 0; k < d; ++k) {
      iv[k].lo = std::min(iv[k].lo, p[k]);
      iv[k].hi = std::max(iv[k].hi, p[k]);
    }
  }
  return Box(iv);
}

namespace detail {
inline std::vector<double> sorted_coordinate(const PointSet& points, std::size_t k) {
  std::vector<double> vals;
  vals.reserve(points.size());
  for (const Vec& p : points) vals.push_back(p[k]);
  std::sort(vals.begin(), vals.end());
  return vals;
}
}  // namespace detail

/// Per coordinate, [mean of the m smallest values, mean of the m largest
/// values]. Equals the bounding box of all m-subset centroids.
inline Box centroid_box(const PointSet& points, std::size_t m) {
  if (points.empty()) throw std::invalid_argument("centroid box of an empty set");
  if (m < 1 || m > points.size()) throw std::invalid_argument("centroid box subset size out of range");
  const std::size_t d = points.front().size();
  std::vector<Interval> iv(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::vector<double> vals = detail::sorted_coordinate(points, k);
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t j = 0; j < m; ++j) lo += vals[j];
    for (std::size_t j = vals.size() - m; j < vals.size(); ++j) hi += vals[j];
    iv[k] = {lo / static_cast<double>(m), hi / static_cast<double>(m)};
  }
  return Box(iv);
}

/// Per coordinate, drop the `trim` smallest and `trim` largest values and
/// span the rest. Requires 2*trim < |points|.
inline Box trimmed_box(const PointSet& points, std::size_t trim) {
  if (points.empty()) throw std::invalid_argument("trimmed box of an empty set");
  if (2 * trim >= points.size()) throw std::invalid_argument("trim leaves no values");
  const std::size_t d = points.front().size();
  std::vector<Interval> iv(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::vector<double> vals = detail::sorted_coordinate(points, k);
    iv[k] = {vals[trim], vals[vals.size() - 1 - trim]};
  }
  return Box(iv);
}

/// Per-coordinate [max(lo), min(hi)]; empty as soon as a coordinate inverts
/// by more than `tol`. Inversions within `tol` collapse to their midpoint,
/// which absorbs round-off on boxes that provably share a point.
inline Box box_intersection(const Box& a, const Box& b, double tol = 0.0) {
  if (a.dim() != b.dim()) throw std::invalid_argument("box dimension mismatch");
  if (a.is_empty() || b.is_empty()) return Box::empty(a.dim());
  std::vector<Interval> iv(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    iv[k] = {std::max(a[k].lo, b[k].lo), std::min(a[k].hi, b[k].hi)};
    if (iv[k].lo > iv[k].hi) {
      if (iv[k].lo - iv[k].hi > tol) return Box::empty(a.dim());
      const double mid = 0.5 * (iv[k].lo + iv[k].hi);
      iv[k] = {mid, mid};
    }
  }
  return Box(iv);
}

inline Vec midpoint(const Box& b) {
  if (b.is_empty()) throw std::invalid_argument("midpoint of the empty box");
  Vec mid(b.dim());
  for (std::size_t k = 0; k < b.dim(); ++k) mid[k] = 0.5 * (b[k].lo + b[k].hi);
  return mid;
}

inline double longest_edge(const Box& b) {
  if (b.is_empty()) throw std::invalid_argument("longest edge of the empty box");
  double best = 0.0;
  for (std::size_t k = 0; k < b.dim(); ++k) best = std::max(best, b[k].hi - b[k].lo);
  return best;
}

}  // namespace caa
