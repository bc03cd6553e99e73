#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caa/box.hpp"
#include "caa/rng.hpp"
#include "caa/scenario.hpp"
#include "caa/vec.hpp"

namespace caa {

/// What one Byzantine sender commits for one round. Consistency is
/// structural: there is a single vector per (sender, round).
struct ByzMessage {
  Vec vector;
  std::vector<int> recipients;  // correct ids that may accept it
};

/// sender id -> message; senders absent from the map stay silent.
using ByzRound = std::map<int, ByzMessage>;

struct AdversaryFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interprets an AdversaryStrategy round by round. Free choices (recipient
// subsets, Byzantine vectors) are resolved from a per-(round, sender)
// substream of the scenario seed, so runs replay exactly.
class AdversaryEngine {
 public:
  AdversaryEngine(const Scenario& sc, Rng rng) : sc_(sc), rng_(rng) {
    correct_ = sc.correct_ids();
  }

  /// The correct senders whose messages this adversary delays (async only).
  const std::vector<int>& victims() const { return sc_.adversary.victims; }

  ByzRound round_messages(int round, const std::map<int, Vec>& correct_current) {
    ByzRound out;
    const AdversaryStrategy& adv = sc_.adversary;
    switch (adv.kind) {
      case AdversaryKind::Silent:
        break;
      case AdversaryKind::FixedVector:
      case AdversaryKind::ConvexLB:
      case AdversaryKind::StrongValidityLB: {
        Vec v = adv.vector.empty() ? Vec(static_cast<std::size_t>(sc_.d), 0.0) : adv.vector;
        for (int b : sc_.byz_ids) out[b] = ByzMessage{v, correct_};
        break;
      }
      case AdversaryKind::RoundScript: {
        for (const ScriptedMessage& msg : adv.script) {
          if (msg.round != round) continue;
          if (out.count(msg.sender)) {
            throw AdversaryFault("two vectors scripted for one (sender, round)");
          }
          out[msg.sender] = ByzMessage{msg.vector, msg.recipients};
        }
        break;
      }
      case AdversaryKind::MdaBoxBreaker: {
        // Off-axis vector rescaled by the live correct spread, so the MDA
        // keeps absorbing it while the spread shrinks.
        PointSet cur;
        for (const auto& [id, v] : correct_current) cur.push_back(v);
        Vec v(static_cast<std::size_t>(sc_.d), 0.0);
        v[1] = 0.999 * diameter(cur);
        for (int b : sc_.byz_ids) out[b] = ByzMessage{v, correct_};
        break;
      }
      case AdversaryKind::AsyncHider: {
        for (int b : sc_.byz_ids) {
          Vec v = adv.vector;
          if (v.empty()) v = seeded_vector(round, b, correct_current);
          out[b] = ByzMessage{v, correct_};
        }
        break;
      }
      case AdversaryKind::Seeded: {
        for (int b : sc_.byz_ids) {
          Vec v = seeded_vector(round, b, correct_current);
          std::vector<int> to;
          if (sc_.schedule == Schedule::Synchronous) {
            Rng r = rng_.fork(mix_tag(static_cast<std::uint64_t>(round) * 2 + 1,
                                      static_cast<std::uint64_t>(b)));
            for (int id : correct_) {
              if (r.coin()) to.push_back(id);
            }
          } else {
            to = correct_;  // the per-receiver quota does the hiding
          }
          if (!to.empty()) out[b] = ByzMessage{v, to};
        }
        break;
      }
    }
    for (auto& [sender, msg] : out) {
      if (msg.vector.size() != static_cast<std::size_t>(sc_.d) || !is_finite(msg.vector)) {
        throw AdversaryFault("byzantine vector invalid");
      }
      (void)sender;
    }
    return out;
  }

 private:
  Vec seeded_vector(int round, int sender, const std::map<int, Vec>& correct_current) {
    Rng r = rng_.fork(mix_tag(static_cast<std::uint64_t>(round) * 2,
                              static_cast<std::uint64_t>(sender)));
    Vec v(static_cast<std::size_t>(sc_.d), 0.0);
    if (sc_.adversary.value_range) {
      for (double& x : v) x = r.uniform(sc_.adversary.value_range->first,
                                        sc_.adversary.value_range->second);
    } else {
      PointSet cur;
      for (const auto& [id, vec] : correct_current) cur.push_back(vec);
      const Box live = bounding_box(cur);
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = r.uniform(live[k].lo, live[k].hi);
      }
    }
    return v;
  }

  const Scenario& sc_;
  Rng rng_;
  std::vector<int> correct_;
};

// ---------------------------------------------------------------------------
// Ready-made lower-bound scenarios.

/// One correct node at the origin, d groups of t correct nodes clustered at
/// (x,0,...,0) + delta * unit vectors, and t Byzantine nodes that keep
/// playing the origin; n = (d+1)t + 1. For any delta > 0 the safe area of
/// the full input set collapses to the origin.
inline Scenario build_convex_lb_scenario(int d, int t, double x, double delta) {
  if (d < 2) throw std::invalid_argument("construction needs d >= 2");
  if (t < 1) throw std::invalid_argument("construction needs t >= 1");
  if (x <= 0.0) throw std::invalid_argument("construction needs x > 0");
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  Scenario sc;
  sc.name = "convex-lb-d" + std::to_string(d);
  sc.kind = ProtocolKind::SyncCentroidSafe;
  sc.schedule = Schedule::Synchronous;
  sc.d = d;
  sc.t = t;
  sc.f = t;
  sc.n = (d + 1) * t + 1;
  sc.epsilon = 1e-3;
  sc.seed = 1;
  sc.inputs.assign(static_cast<std::size_t>(sc.n), Vec(static_cast<std::size_t>(d), 0.0));
  std::size_t node = 1;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < t; ++i) {
      Vec v(static_cast<std::size_t>(d), 0.0);
      v[0] = x;
      v[static_cast<std::size_t>(j)] += delta;
      sc.inputs[node++] = v;
    }
  }
  for (int i = 0; i < t; ++i) sc.byz_ids.push_back(sc.n - t + i);
  sc.adversary.kind = AdversaryKind::ConvexLB;
  sc.adversary.vector = Vec(static_cast<std::size_t>(d), 0.0);
  return sc;
}

/// Worst case for strong validity: correct nodes split between the origin
/// and the first unit vector while the Byzantine nodes also play the
/// origin. Any strong-validity algorithm must output the origin here.
inline Scenario build_strong_validity_lb_scenario(int n, int t, int d, Schedule model) {
  if (d < 1 || t < 1 || n <= 3 * t) throw std::invalid_argument("needs n > 3t, t >= 1");
  Scenario sc;
  sc.d = d;
  sc.t = t;
  sc.f = t;
  sc.n = n;
  sc.epsilon = 0.01;
  sc.seed = 1;
  sc.schedule = model;
  Vec e1(static_cast<std::size_t>(d), 0.0);
  e1[0] = 1.0;
  const Vec zero(static_cast<std::size_t>(d), 0.0);
  sc.inputs.assign(static_cast<std::size_t>(n), zero);
  if (model == Schedule::Synchronous) {
    sc.name = "strong-lb-sync";
    sc.kind = ProtocolKind::SyncBox;
    // n-2t correct at 0, t correct at e1, t Byzantine at 0
    for (int i = n - 2 * t; i < n - t; ++i) sc.inputs[static_cast<std::size_t>(i)] = e1;
    for (int i = n - t; i < n; ++i) sc.byz_ids.push_back(i);
    sc.adversary.kind = AdversaryKind::StrongValidityLB;
    sc.adversary.vector = zero;
  } else {
    sc.name = "strong-lb-async";
    sc.kind = ProtocolKind::AsyncBox;
    // n-3t correct at 0, 2t correct at e1, t Byzantine at 0; the adversary
    // hides t of the e1 holders so each node sees only t of them.
    const int e1_first = n - 3 * t;
    for (int i = e1_first; i < n - t; ++i) sc.inputs[static_cast<std::size_t>(i)] = e1;
    for (int i = n - t; i < n; ++i) sc.byz_ids.push_back(i);
    sc.adversary.kind = AdversaryKind::AsyncHider;
    sc.adversary.vector = zero;
    for (int i = 0; i < t; ++i) sc.adversary.victims.push_back(e1_first + i);
  }
  return sc;
}

/// The box-validity counterexample for minimum-diameter averaging: n-2t
/// correct nodes at the origin, t at e1, and the Byzantine nodes just off
/// the segment, close enough that the MDA absorbs them.
inline Scenario build_mda_box_breaker_scenario(int n, int t, int d) {
  if (d < 2) throw std::invalid_argument("needs d >= 2");
  if (n <= 4 * t) throw std::invalid_argument("needs n > 4t");
  Scenario sc;
  sc.name = "mda-box-break";
  sc.kind = ProtocolKind::SyncMDA;
  sc.schedule = Schedule::Synchronous;
  sc.n = n;
  sc.t = t;
  sc.f = t;
  sc.d = d;
  sc.epsilon = 0.05;
  sc.seed = 1;
  Vec e1(static_cast<std::size_t>(d), 0.0);
  e1[0] = 1.0;
  sc.inputs.assign(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(d), 0.0));
  for (int i = n - 2 * t; i < n - t; ++i) sc.inputs[static_cast<std::size_t>(i)] = e1;
  for (int i = n - t; i < n; ++i) sc.byz_ids.push_back(i);
  sc.adversary.kind = AdversaryKind::MdaBoxBreaker;
  return sc;
}

}  // namespace caa
