#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace caa {

// Deterministic 64-bit stream (splitmix64). Every seeded choice in the
// simulator goes through this class so that runs replay bit-exactly on any
// platform; the standard <random> engines/distributions are avoided because
// their outputs are not pinned across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  bool coin() { return (next() & 1ULL) != 0; }

  // Fisher-Yates; std::shuffle is not reproducible across standard libraries.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  /// Independent substream keyed by `tag`; does not disturb this stream.
  Rng fork(std::uint64_t tag) const {
    return Rng(state_ ^ (0xd1b54a32d192ed03ULL * (tag + 1)));
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_tag(std::uint64_t a, std::uint64_t b) {
  return a * 0x100000001b3ULL + b;
}

}  // namespace caa
