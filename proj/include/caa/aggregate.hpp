#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "caa/combinatorics.hpp"
#include "caa/vec.hpp"

namespace caa {

inline Vec subset_centroid(const PointSet& points, const std::vector<std::size_t>& idx) {
  PointSet sub;
  sub.reserve(idx.size());
  for (std::size_t i : idx) sub.push_back(points[i]);
  return centroid(sub);
}

/// Centroids of every m-subset, in lexicographic index-subset order.
/// Size is C(|points|, m).
inline PointSet enumerate_centroids(const PointSet& points, std::size_t m) {
  if (m < 1 || m > points.size()) {
    throw std::invalid_argument("subset size out of range");
  }
  const std::uint64_t count = binomial(points.size(), m);
  if (count > 5'000'000ULL) {
    throw std::invalid_argument("centroid enumeration too large");
  }
  PointSet out;
  out.reserve(static_cast<std::size_t>(count));
  Combinations comb(points.size(), m);
  do {
    out.push_back(subset_centroid(points, comb.indices()));
  } while (comb.next());
  return out;
}

/// Index set of the m-subset with minimum diameter; ties go to the smallest
/// lexicographic index subset. Exhaustive over C(|points|, m) subsets.
inline std::vector<std::size_t> mda_indices(const PointSet& points, std::size_t m) {
  const std::size_t n = points.size();
  if (m > n) throw std::invalid_argument("mda subset size exceeds set size");
  if (m == 0) return {};
  if (binomial(n, m) > 5'000'000ULL) {
    throw std::invalid_argument("mda enumeration too large");
  }
  // Squared distances keep the comparison exact and sqrt-free.
  std::vector<std::vector<double>> d2(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d2[i][j] = d2[j][i] = dist_sq(points[i], points[j]);
    }
  }
  Combinations comb(n, m);
  std::vector<std::size_t> best = comb.indices();
  double best_diam = -1.0;
  do {
    const std::vector<std::size_t>& idx = comb.indices();
    double diam = 0.0;
    for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        diam = std::max(diam, d2[idx[a]][idx[b]]);
        if (best_diam >= 0.0 && diam > best_diam) break;
      }
      if (best_diam >= 0.0 && diam > best_diam) break;
    }
    if (best_diam < 0.0 || diam < best_diam) {
      best_diam = diam;
      best = idx;
    }
  } while (comb.next());
  return best;
}

/// Minimum-diameter m-subset of the received vectors.
inline PointSet mda(const PointSet& points, std::size_t m) {
  PointSet out;
  out.reserve(m);
  for (std::size_t i : mda_indices(points, m)) out.push_back(points[i]);
  return out;
}

/// Coordinate-wise mean after dropping the `low_trim` smallest and
/// `high_trim` largest values per coordinate.
inline Vec trimmed_mean(const PointSet& points, std::size_t low_trim, std::size_t high_trim) {
  if (points.empty()) throw std::invalid_argument("trimmed mean of an empty set");
  if (low_trim + high_trim >= points.size()) {
    throw std::invalid_argument("trims leave no values");
  }
  const std::size_t d = points.front().size();
  const std::size_t keep = points.size() - low_trim - high_trim;
  Vec out(d, 0.0);
  std::vector<double> vals(points.size());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < points.size(); ++i) vals[i] = points[i][k];
    std::sort(vals.begin(), vals.end());
    double s = 0.0;
    for (std::size_t i = low_trim; i < points.size() - high_trim; ++i) s += vals[i];
    out[k] = s / static_cast<double>(keep);
  }
  return out;
}

}  // namespace caa
