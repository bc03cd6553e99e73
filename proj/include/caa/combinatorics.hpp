#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace caa {

/// C(n, k), saturating at 2^63-1 so feasibility caps stay cheap to check.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (result > kMax / (n - k + i)) return kMax;
    result = result * (n - k + i) / i;
  }
  return result;
}

// Lexicographic enumeration of k-subsets of {0, ..., n-1}.
class Combinations {
 public:
  Combinations(std::size_t n, std::size_t k) : n_(n), idx_(k) {
    if (k > n) throw std::invalid_argument("subset size exceeds set size");
    std::iota(idx_.begin(), idx_.end(), std::size_t{0});
  }

  const std::vector<std::size_t>& indices() const { return idx_; }

  /// Advance to the next subset; false once the last one has been consumed.
  bool next() {
    const std::size_t k = idx_.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
      if (idx_[i] != i + n_ - k) {
        ++idx_[i];
        for (std::size_t j = i + 1; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> idx_;
};

}  // namespace caa
