#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace caa::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<double> z;        // structural variable values (valid when Optimal)
  double objective = 0.0;       // c.z at the optimum
  double feasibility_gap = 0.0; // phase-1 optimum: minimal L1 violation of Az=b
};

// Dense two-phase primal simplex for
//     minimize c.z   subject to   A z = b,  z >= 0.
// Bland's entering/leaving rule throughout (no cycling); pivot tolerance
// 1e-9. Problem sizes in this project stay in the low hundreds of rows.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b)
      : m_(a.size()), n_(m_ ? a[0].size() : 0) {
    tab_.assign(m_, std::vector<double>(n_ + m_, 0.0));
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("ragged constraint matrix");
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sign * a[i][j];
      tab_[i][n_ + i] = 1.0;
      rhs_[i] = sign * b[i];
      basis_[i] = n_ + i;
    }
  }

  /// Runs phase 1; returns the minimal total constraint violation.
  double phase1() {
    obj_.assign(n_ + m_, 0.0);
    obj_rhs_ = 0.0;
    for (std::size_t j = n_; j < n_ + m_; ++j) obj_[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) subtract_row(i, 1.0);
    iterate(/*allow_artificial=*/false);
    const double gap = -obj_rhs_;
    return gap < 0.0 ? 0.0 : gap;
  }

  Result solve(const std::vector<double>& c) {
    if (c.size() != n_) throw std::invalid_argument("cost size mismatch");
    Result res;
    res.feasibility_gap = phase1();
    if (res.feasibility_gap > kTol) {
      res.status = Status::Infeasible;
      return res;
    }
    purge_artificials();
    obj_.assign(n_ + m_, 0.0);
    obj_rhs_ = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ && c[basis_[i]] != 0.0) subtract_row(i, c[basis_[i]]);
    }
    if (!iterate(/*allow_artificial=*/false)) {
      res.status = Status::Unbounded;
      return res;
    }
    res.status = Status::Optimal;
    res.z.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) res.z[basis_[i]] = rhs_[i];
    }
    res.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) res.objective += c[j] * res.z[j];
    return res;
  }

 private:
  static constexpr double kTol = 1e-9;

  void subtract_row(std::size_t row, double factor) {
    for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] -= factor * tab_[row][j];
    obj_rhs_ -= factor * rhs_[row];
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = tab_[row][col];
    for (double& x : tab_[row]) x /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0.0) continue;
      const double f = tab_[i][col];
      for (std::size_t j = 0; j < n_ + m_; ++j) tab_[i][j] -= f * tab_[row][j];
      tab_[i][col] = 0.0;
      rhs_[i] -= f * rhs_[row];
    }
    subtract_row_into_obj(row, col);
    basis_[row] = col;
  }

  void subtract_row_into_obj(std::size_t row, std::size_t col) {
    const double f = obj_[col];
    if (f == 0.0) return;
    for (std::size_t j = 0; j < n_ + m_; ++j) obj_[j] -= f * tab_[row][j];
    obj_[col] = 0.0;
    obj_rhs_ -= f * rhs_[row];
  }

  // Bland's rule; returns false on an unbounded direction.
  bool iterate(bool allow_artificial) {
    const std::size_t cols = allow_artificial ? n_ + m_ : n_;
    const std::size_t cap = 50000 + 2000 * (m_ + n_);
    for (std::size_t it = 0; it < cap; ++it) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (obj_[j] < -kTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;  // optimal
      std::size_t leave = m_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= kTol) continue;
        const double ratio = rhs_[i] / tab_[i][enter];
        if (leave == m_ || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;  // unbounded
      pivot(leave, enter);
      if (rhs_[leave] < 0.0) rhs_[leave] = 0.0;  // clamp pivot round-off
    }
    throw std::runtime_error("simplex iteration cap exceeded");
  }

  // Pivot zero-level artificial variables out of the basis; rows that have
  // no structural coefficient left are redundant equalities and get cleared.
  void purge_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(tab_[i][j]) > 1e-7) {
          col = j;
          break;
        }
      }
      if (col < n_) {
        pivot(i, col);
      } else {
        for (std::size_t j = 0; j < n_ + m_; ++j) tab_[i][j] = 0.0;
        tab_[i][basis_[i]] = 1.0;
        rhs_[i] = 0.0;
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<double>> tab_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> obj_;
  double obj_rhs_ = 0.0;
};

inline Result minimize(const std::vector<std::vector<double>>& a,
                       const std::vector<double>& b, const std::vector<double>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("constraint count mismatch");
  Simplex s(a, b);
  return s.solve(c);
}

/// Minimal total violation of Az = b over z >= 0 (phase-1 optimum).
inline double equality_gap(const std::vector<std::vector<double>>& a,
                           const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("constraint count mismatch");
  Simplex s(a, b);
  return s.phase1();
}

}  // namespace caa::lp
