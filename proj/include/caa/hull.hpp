#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "caa/aggregate.hpp"
#include "caa/combinatorics.hpp"
#include "caa/lp.hpp"
#include "caa/vec.hpp"

namespace caa {

/// True iff x is a convex combination of the points, decided by LP
/// feasibility with tolerance 1e-8 on the equality constraints.
inline bool in_convex_hull(const Vec& x, const PointSet& points) {
  if (points.empty()) throw std::invalid_argument("hull of an empty set");
  const std::size_t d = x.size();
  require_same_dim(x, points.front());
  const std::size_t n = points.size();
  std::vector<std::vector<double>> a(d + 1, std::vector<double>(n, 0.0));
  std::vector<double> b(d + 1, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < n; ++i) a[k][i] = points[i][k];
    b[k] = x[k];
  }
  for (std::size_t i = 0; i < n; ++i) a[d][i] = 1.0;
  b[d] = 1.0;
  return lp::equality_gap(a, b) <= 1e-8;
}

// A point inside the intersection of the convex hulls of every
// subset_size-subset of the received vectors, or nothing when that
// intersection is empty. One joint LP: a shared point variable, one
// barycentric block per subset, objective = L1 distance from the point to
// the symmetric trimmed mean of the received vectors. Deterministic, and
// the result is always an element of the intersection when one exists.
inline std::optional<Vec> safe_point(const PointSet& points, std::size_t subset_size) {
  const std::size_t n = points.size();
  if (subset_size == 0 || subset_size > n) {
    throw std::invalid_argument("safe point subset size out of range");
  }
  const std::size_t d = points.front().size();
  const std::uint64_t blocks64 = binomial(n, subset_size);
  if (blocks64 > 20000ULL) throw std::invalid_argument("safe point enumeration too large");
  const std::size_t blocks = static_cast<std::size_t>(blocks64);

  // Anchor: symmetric trimmed mean with trim n - subset_size per side.
  // Small subset sizes would trim everything away; clamp so the anchor
  // stays defined (protocol callers always satisfy 2(n-ss) < n).
  const std::size_t trim = std::min(n - subset_size, (n - 1) / 2);
  const Vec anchor = trimmed_mean(points, trim, trim);

  // Variables: x+ (d), x- (d), u (d), w (d), then one lambda block per subset.
  const std::size_t xp = 0, xm = d, uu = 2 * d, ww = 3 * d;
  const std::size_t lambda0 = 4 * d;
  const std::size_t cols = lambda0 + blocks * subset_size;
  const std::size_t rows = blocks * (d + 1) + d;

  std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
  std::vector<double> b(rows, 0.0);

  Combinations comb(n, subset_size);
  std::size_t row = 0;
  for (std::size_t bi = 0; bi < blocks; ++bi) {
    const std::vector<std::size_t>& idx = comb.indices();
    const std::size_t base = lambda0 + bi * subset_size;
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t s = 0; s < subset_size; ++s) a[row][base + s] = points[idx[s]][k];
      a[row][xp + k] = -1.0;
      a[row][xm + k] = 1.0;
      b[row] = 0.0;
      ++row;
    }
    for (std::size_t s = 0; s < subset_size; ++s) a[row][base + s] = 1.0;
    b[row] = 1.0;
    ++row;
    comb.next();
  }
  for (std::size_t k = 0; k < d; ++k) {
    a[row][xp + k] = 1.0;
    a[row][xm + k] = -1.0;
    a[row][uu + k] = -1.0;
    a[row][ww + k] = 1.0;
    b[row] = anchor[k];
    ++row;
  }

  std::vector<double> c(cols, 0.0);
  for (std::size_t k = 0; k < d; ++k) c[uu + k] = c[ww + k] = 1.0;

  const lp::Result res = lp::minimize(a, b, c);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  Vec x(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) x[k] = res.z[xp + k] - res.z[xm + k];
  return x;
}

}  // namespace caa
