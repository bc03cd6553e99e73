#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "caa/rng.hpp"
#include "caa/vec.hpp"

namespace caa {

struct Ball {
  Vec center;
  double radius = 0.0;  // radius 0 is a legal degenerate ball

  bool contains(const Vec& p, double tol = 1e-9) const {
    return dist(center, p) <= radius + tol;
  }
};

namespace detail {

// Ball with all support points on its boundary, restricted to their affine
// hull. Solves the Gram system sum_j a_j (e_i . e_j) = |e_i|^2 / 2 with
// e_i = q_i - q_0; the support stays affinely independent along Welzl's
// recursion, so a vanishing pivot only appears for near-duplicate points,
// in which case the offending point adds no constraint and is dropped.
inline Ball circumball(const PointSet& support, std::size_t dim) {
  if (support.empty()) {
    return Ball{Vec(dim, 0.0), -1.0};  // contains nothing
  }
  if (support.size() == 1) {
    return Ball{support[0], 0.0};
  }
  const std::size_t m = support.size() - 1;
  const Vec& q0 = support[0];
  std::vector<Vec> e(m, Vec(dim, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < dim; ++k) e[i][k] = support[i + 1][k] - q0[k];
  }
  std::vector<std::vector<double>> g(m, std::vector<double>(m + 1, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dot += e[i][k] * e[j][k];
      g[i][j] = dot;
      if (i == j) scale = std::max(scale, dot);
    }
    g[i][m] = 0.5 * g[i][i];
  }
  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[best][col])) best = r;
    }
    if (std::abs(g[best][col]) <= 1e-12 * std::max(1.0, scale)) {
      PointSet reduced(support.begin(), support.end() - 1);
      return circumball(reduced, dim);
    }
    std::swap(g[col], g[best]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::vector<double> alpha(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = g[i][m];
    for (std::size_t j = i + 1; j < m; ++j) s -= g[i][j] * alpha[j];
    alpha[i] = s / g[i][i];
  }
  Vec center = q0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < dim; ++k) center[k] += alpha[i] * e[i][k];
  }
  return Ball{center, dist(center, q0)};
}

inline Ball welzl(const PointSet& pts, std::size_t limit, PointSet& support,
                  std::size_t dim) {
  if (limit == 0 || support.size() == dim + 1) {
    return circumball(support, dim);
  }
  Ball b = welzl(pts, limit - 1, support, dim);
  const Vec& p = pts[limit - 1];
  if (b.radius >= 0.0 && b.contains(p, 1e-10 * (1.0 + b.radius))) {
    return b;
  }
  support.push_back(p);
  b = welzl(pts, limit - 1, support, dim);
  support.pop_back();
  return b;
}

}  // namespace detail

/// Unique minimum-radius ball containing every point of a nonempty set
/// (Welzl's algorithm; the input order is canonicalized and reshuffled with
/// a fixed seed, so the result is a pure function of the point multiset).
inline Ball smallest_enclosing_ball(const PointSet& points) {
  if (points.empty()) throw std::invalid_argument("enclosing ball of an empty set");
  const std::size_t dim = points.front().size();
  PointSet pts = points;
  for (const Vec& p : pts) require_same_dim(points.front(), p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rng rng(0x5eb0f00dULL ^ (0x9e37ULL * pts.size()));
  rng.shuffle(pts);
  PointSet support;
  support.reserve(dim + 1);
  return detail::welzl(pts, pts.size(), support, dim);
}

}  // namespace caa
