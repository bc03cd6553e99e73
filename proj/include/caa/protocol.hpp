#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "caa/aggregate.hpp"
#include "caa/ball.hpp"
#include "caa/box.hpp"
#include "caa/hull.hpp"
#include "caa/vec.hpp"

namespace caa {

enum class ProtocolKind {
  SyncCentroidSafe,
  SyncMDA,
  SyncBox,
  SyncTrimmedMean,
  AsyncTwoApprox,
  AsyncMDA,
  AsyncBox,
  AsyncTrimmedMean,
};

enum class Schedule { Synchronous, Asynchronous };

inline Schedule schedule_of(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::SyncCentroidSafe:
    case ProtocolKind::SyncMDA:
    case ProtocolKind::SyncBox:
    case ProtocolKind::SyncTrimmedMean:
      return Schedule::Synchronous;
    default:
      return Schedule::Asynchronous;
  }
}

inline bool is_safe_area_kind(ProtocolKind kind) {
  return kind == ProtocolKind::SyncCentroidSafe || kind == ProtocolKind::AsyncTwoApprox;
}

inline bool is_mda_kind(ProtocolKind kind) {
  return kind == ProtocolKind::SyncMDA || kind == ProtocolKind::AsyncMDA;
}

inline bool is_box_family(ProtocolKind kind) {
  return kind == ProtocolKind::SyncBox || kind == ProtocolKind::SyncTrimmedMean ||
         kind == ProtocolKind::AsyncBox || kind == ProtocolKind::AsyncTrimmedMean;
}

/// Per-kind admissible fault bound.
inline bool resilience_holds(ProtocolKind kind, int n, int t, int d) {
  switch (kind) {
    case ProtocolKind::SyncCentroidSafe:
      return 3 * t < n && (d + 1) * t < n;
    case ProtocolKind::SyncMDA:
      return 4 * t < n;
    case ProtocolKind::AsyncTwoApprox:
      return (d + 2) * t < n;
    case ProtocolKind::AsyncMDA:
      return 7 * t < n;
    default:
      return 3 * t < n;  // box and trimmed-mean kinds
  }
}

inline const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::SyncCentroidSafe: return "SyncCentroidSafe";
    case ProtocolKind::SyncMDA: return "SyncMDA";
    case ProtocolKind::SyncBox: return "SyncBox";
    case ProtocolKind::SyncTrimmedMean: return "SyncTrimmedMean";
    case ProtocolKind::AsyncTwoApprox: return "AsyncTwoApprox";
    case ProtocolKind::AsyncMDA: return "AsyncMDA";
    case ProtocolKind::AsyncBox: return "AsyncBox";
    case ProtocolKind::AsyncTrimmedMean: return "AsyncTrimmedMean";
  }
  return "?";
}

inline ProtocolKind kind_from_string(const std::string& s) {
  if (s == "SyncCentroidSafe") return ProtocolKind::SyncCentroidSafe;
  if (s == "SyncMDA") return ProtocolKind::SyncMDA;
  if (s == "SyncBox") return ProtocolKind::SyncBox;
  if (s == "SyncTrimmedMean") return ProtocolKind::SyncTrimmedMean;
  if (s == "AsyncTwoApprox") return ProtocolKind::AsyncTwoApprox;
  if (s == "AsyncMDA") return ProtocolKind::AsyncMDA;
  if (s == "AsyncBox") return ProtocolKind::AsyncBox;
  if (s == "AsyncTrimmedMean") return ProtocolKind::AsyncTrimmedMean;
  throw std::invalid_argument("unknown protocol kind: " + s);
}

inline const char* to_string(Schedule s) {
  return s == Schedule::Synchronous ? "Synchronous" : "Asynchronous";
}

enum class Phase { Preprocessing, Converging, Decided };

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::Preprocessing: return "preprocessing";
    case Phase::Converging: return "converging";
    case Phase::Decided: return "decided";
  }
  return "?";
}

struct ProtocolParams {
  int n = 0;
  int t = 0;
  int d = 1;
  double epsilon = 0.0;
  int safe_round_cap = 64;   // budget for the safe-area kinds
  int mda_round_factor = 6;  // multiplier on the MDA halving count
};

struct NodeState {
  int node_id = 0;
  Vec current_vector;
  int round = 0;
  int round_budget = 0;  // 0 until the first receive fixes it
  Phase phase = Phase::Converging;
  std::optional<Vec> decided_vector;
};

/// A step function hit a state the protocol guarantees can never occur
/// under its resilience bound.
struct ProtocolViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Total number of rounds a node runs, fixed from its first receive.
/// `initial_extent` is the locally observed longest trusted-box edge (box
/// kinds) or received diameter (MDA kinds); at least one round always runs.
inline int round_budget(ProtocolKind kind, const ProtocolParams& p, double initial_extent) {
  if (p.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (initial_extent < 0.0) throw std::invalid_argument("negative extent");
  if (is_safe_area_kind(kind)) return std::max(p.safe_round_cap, 1);
  const double spread = std::max(initial_extent, p.epsilon);
  const int halvings =
      std::max(0, static_cast<int>(std::ceil(std::log2(spread / p.epsilon) - 1e-12)));
  if (is_mda_kind(kind)) return std::max(p.mda_round_factor * halvings, 1);
  return halvings + 1;
}

/// Midpoint of (locally trusted box) ∩ (local centroid box), trimming
/// m_i-(n-t) extremes per coordinate.
inline Vec step_sync_box(const PointSet& m, const ProtocolParams& p) {
  const std::size_t floor_sz = static_cast<std::size_t>(p.n - p.t);
  if (m.size() < floor_sz) throw std::invalid_argument("fewer than n-t messages");
  const std::size_t trim = m.size() - floor_sz;
  const Box inter = box_intersection(trimmed_box(m, trim), centroid_box(m, floor_sz), 1e-9);
  if (inter.is_empty()) {
    throw ProtocolViolation("empty trusted/centroid box intersection");
  }
  return midpoint(inter);
}

/// Symmetric trimmed mean with trim m_i-(n-t); lands in the same box
/// intersection the box step uses.
inline Vec step_sync_trimmed_mean(const PointSet& m, const ProtocolParams& p) {
  const std::size_t floor_sz = static_cast<std::size_t>(p.n - p.t);
  if (m.size() < floor_sz) throw std::invalid_argument("fewer than n-t messages");
  const std::size_t trim = m.size() - floor_sz;
  const Vec v = trimmed_mean(m, trim, trim);
  const Box inter = box_intersection(trimmed_box(m, trim), centroid_box(m, floor_sz), 1e-9);
  if (!inter.contains(v, 1e-9)) {
    throw ProtocolViolation("trimmed mean left the box intersection");
  }
  return v;
}

inline Vec step_sync_mda(const PointSet& m, const ProtocolParams& p) {
  const std::size_t floor_sz = static_cast<std::size_t>(p.n - p.t);
  if (m.size() < floor_sz) throw std::invalid_argument("fewer than n-t messages");
  return centroid(mda(m, floor_sz));
}

/// Round 1: center of the smallest ball enclosing all locally possible
/// centroids. Later rounds: a point of the local safe area (nullopt when
/// that area is empty).
inline std::optional<Vec> step_sync_centroid_safe(const NodeState& state, const PointSet& m,
                                                  const ProtocolParams& p) {
  const std::size_t floor_sz = static_cast<std::size_t>(p.n - p.t);
  if (m.size() < floor_sz) throw std::invalid_argument("fewer than n-t messages");
  if (state.phase == Phase::Preprocessing) {
    return smallest_enclosing_ball(enumerate_centroids(m, floor_sz)).center;
  }
  return safe_point(m, floor_sz);
}

inline std::optional<Vec> step_async_two_approx(const NodeState& state, const PointSet& m,
                                                const ProtocolParams& p) {
  if (m.size() != static_cast<std::size_t>(p.n - p.t)) {
    throw std::invalid_argument("async step expects exactly n-t messages");
  }
  if (state.phase == Phase::Preprocessing) return centroid(m);
  return safe_point(m, static_cast<std::size_t>(p.n - 2 * p.t));
}

inline Vec step_async_mda(const PointSet& m, const ProtocolParams& p) {
  if (m.size() != static_cast<std::size_t>(p.n - p.t)) {
    throw std::invalid_argument("async step expects exactly n-t messages");
  }
  return centroid(mda(m, static_cast<std::size_t>(p.n - 2 * p.t)));
}

inline Vec step_async_box(const PointSet& m, const ProtocolParams& p) {
  if (m.size() != static_cast<std::size_t>(p.n - p.t)) {
    throw std::invalid_argument("async step expects exactly n-t messages");
  }
  if (p.n <= 3 * p.t) throw std::invalid_argument("async box needs n > 3t");
  const std::size_t trim = static_cast<std::size_t>(p.t);
  const Box inter = box_intersection(trimmed_box(m, trim),
                                     centroid_box(m, static_cast<std::size_t>(p.n - 2 * p.t)), 1e-9);
  if (inter.is_empty()) {
    throw ProtocolViolation("empty trusted/centroid box intersection");
  }
  return midpoint(inter);
}

inline Vec step_async_trimmed_mean(const PointSet& m, const ProtocolParams& p) {
  if (m.size() != static_cast<std::size_t>(p.n - p.t)) {
    throw std::invalid_argument("async step expects exactly n-t messages");
  }
  if (p.n <= 3 * p.t) throw std::invalid_argument("async trimmed mean needs n > 3t");
  return trimmed_mean(m, static_cast<std::size_t>(p.t), static_cast<std::size_t>(p.t));
}

/// Dispatch one local round. nullopt means the safe area came up empty;
/// the caller decides between fallback and abort based on the scenario.
inline std::optional<Vec> protocol_step(ProtocolKind kind, const NodeState& state,
                                        const PointSet& m, const ProtocolParams& p) {
  switch (kind) {
    case ProtocolKind::SyncCentroidSafe: return step_sync_centroid_safe(state, m, p);
    case ProtocolKind::SyncMDA: return step_sync_mda(m, p);
    case ProtocolKind::SyncBox: return step_sync_box(m, p);
    case ProtocolKind::SyncTrimmedMean: return step_sync_trimmed_mean(m, p);
    case ProtocolKind::AsyncTwoApprox: return step_async_two_approx(state, m, p);
    case ProtocolKind::AsyncMDA: return step_async_mda(m, p);
    case ProtocolKind::AsyncBox: return step_async_box(m, p);
    case ProtocolKind::AsyncTrimmedMean: return step_async_trimmed_mean(m, p);
  }
  throw std::invalid_argument("unknown protocol kind");
}

/// The locally observed extent that seeds the round budget. Box kinds use
/// the longest trusted-box edge; asynchronously that is the box of all n-t
/// received vectors (the trimmed box can degenerate to a point at n = 3t+1
/// and would cut the run short of convergence).
inline double initial_extent(ProtocolKind kind, const PointSet& m, const ProtocolParams& p) {
  if (is_safe_area_kind(kind)) return 0.0;
  if (is_mda_kind(kind)) return diameter(m);
  if (schedule_of(kind) == Schedule::Synchronous) {
    return longest_edge(trimmed_box(m, m.size() - static_cast<std::size_t>(p.n - p.t)));
  }
  return longest_edge(bounding_box(m));
}

}  // namespace caa
