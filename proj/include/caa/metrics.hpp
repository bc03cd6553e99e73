#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caa/aggregate.hpp"
#include "caa/ball.hpp"
#include "caa/box.hpp"
#include "caa/hull.hpp"
#include "caa/simnet.hpp"

namespace caa {

enum class TriState { Holds, Violated, NotApplicable };

inline const char* to_string(TriState s) {
  switch (s) {
    case TriState::Holds: return "holds";
    case TriState::Violated: return "violated";
    case TriState::NotApplicable: return "na";
  }
  return "?";
}

struct RunReport {
  int rounds_used = 0;
  double max_pairwise_final_dist = 0.0;
  Vec true_centroid;
  double opt_radius = 0.0;
  double approx_ratio = 0.0;  // +infinity when the yardstick degenerates
  std::optional<bool> eps_agreement;
  TriState weak_valid = TriState::NotApplicable;
  TriState strong_valid = TriState::NotApplicable;
  TriState box_valid = TriState::NotApplicable;
  TriState convex_valid = TriState::NotApplicable;
  bool aborted = false;
};

/// Centroid of the correct input vectors.
inline Vec true_centroid(const Scenario& sc) {
  if (sc.f >= sc.n) throw std::invalid_argument("no correct nodes");
  return centroid(sc.correct_inputs());
}

/// The n (or fewer) vectors actually committed in round 1: correct inputs
/// plus whatever each Byzantine sender broadcast; silent senders are absent.
inline PointSet committed_inputs(const Transcript& tr) {
  PointSet out;
  for (const std::optional<Vec>& v : tr.round1_broadcasts) {
    if (v) out.push_back(*v);
  }
  return out;
}

/// Radius of the smallest ball enclosing every possible (n-t)-subset
/// centroid of the committed inputs: the yardstick any algorithm is
/// measured against.
inline double opt_radius(const Transcript& tr) {
  const PointSet committed = committed_inputs(tr);
  const std::size_t m = static_cast<std::size_t>(tr.scenario.n - tr.scenario.t);
  return smallest_enclosing_ball(enumerate_centroids(committed, m)).radius;
}

/// Ratio achieved by agreeing at a safe-area point of the committed inputs;
/// finite only when the optimal radius is positive.
inline double safe_area_ratio(const Transcript& tr) {
  const PointSet committed = committed_inputs(tr);
  const std::size_t m = static_cast<std::size_t>(tr.scenario.n - tr.scenario.t);
  const std::optional<Vec> point = safe_point(committed, m);
  if (!point) return std::numeric_limits<double>::infinity();
  const double rad = opt_radius(tr);
  const double num = dist(*point, true_centroid(tr.scenario));
  if (rad <= 0.0) return num <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / rad;
}

/// Every correct node's vector after each round; index 0 holds the inputs,
/// decided nodes carry their final vector forward.
inline std::vector<std::map<int, Vec>> correct_vector_timeline(const Transcript& tr) {
  std::vector<std::map<int, Vec>> timeline;
  std::map<int, Vec> cur;
  for (int id : tr.scenario.correct_ids()) {
    cur[id] = tr.scenario.inputs[static_cast<std::size_t>(id)];
  }
  timeline.push_back(cur);
  for (int round = 1; round <= tr.rounds_used; ++round) {
    for (const RoundRecord& rec : tr.records) {
      if (rec.round == round) cur[rec.node] = rec.computed;
    }
    timeline.push_back(cur);
  }
  return timeline;
}

/// True iff all decided vectors are pairwise within eps.
inline bool eps_agreement(const Transcript& tr, double eps) {
  PointSet finals;
  for (const auto& [id, v] : tr.decided) finals.push_back(v);
  return diameter(finals) <= eps;
}

namespace detail {
inline bool all_equal(const PointSet& points) {
  for (const Vec& p : points) {
    if (p != points.front()) return false;
  }
  return true;
}
}  // namespace detail

struct ValidityChecks {
  TriState weak = TriState::NotApplicable;
  TriState strong = TriState::NotApplicable;
  TriState box = TriState::NotApplicable;
  TriState convex = TriState::NotApplicable;
};

/// Weak and strong validity apply only when their hypothesis holds in the
/// scenario; box and convex apply to every completed run.
inline ValidityChecks validity_checks(const Scenario& sc, const Transcript& tr) {
  ValidityChecks out;
  if (!tr.all_correct_decided()) return out;
  PointSet finals;
  for (const auto& [id, v] : tr.decided) finals.push_back(v);

  const PointSet correct = sc.correct_inputs();
  if (sc.f == 0 && detail::all_equal(sc.inputs)) {
    out.weak = TriState::Holds;
    for (const Vec& v : finals) {
      if (!approx_equal(v, sc.inputs.front(), 1e-9)) out.weak = TriState::Violated;
    }
  }
  if (detail::all_equal(correct)) {
    out.strong = TriState::Holds;
    for (const Vec& v : finals) {
      if (!approx_equal(v, correct.front(), 1e-9)) out.strong = TriState::Violated;
    }
  }
  const Box trusted = bounding_box(correct);
  out.box = TriState::Holds;
  out.convex = TriState::Holds;
  for (const Vec& v : finals) {
    if (!trusted.contains(v, 1e-9)) out.box = TriState::Violated;
    if (!in_convex_hull(v, correct)) out.convex = TriState::Violated;
  }
  return out;
}

inline RunReport evaluate(const Transcript& tr) {
  const Scenario& sc = tr.scenario;
  RunReport rep;
  rep.aborted = tr.aborted;
  rep.rounds_used = tr.rounds_used;
  rep.true_centroid = true_centroid(sc);
  rep.opt_radius = opt_radius(tr);

  PointSet finals;
  for (const auto& [id, v] : tr.decided) finals.push_back(v);
  rep.max_pairwise_final_dist = diameter(finals);

  if (finals.empty()) {
    rep.approx_ratio = std::numeric_limits<double>::infinity();
    return rep;
  }
  double worst = 0.0;
  for (const Vec& v : finals) worst = std::max(worst, dist(v, rep.true_centroid));
  if (rep.opt_radius > 0.0) {
    rep.approx_ratio = worst / rep.opt_radius;
  } else {
    rep.approx_ratio = worst <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
  }

  if (!tr.all_correct_decided()) return rep;  // remaining fields stay n/a

  rep.eps_agreement = eps_agreement(tr, sc.epsilon);
  const ValidityChecks checks = validity_checks(sc, tr);
  rep.weak_valid = checks.weak;
  rep.strong_valid = checks.strong;
  rep.box_valid = checks.box;
  rep.convex_valid = checks.convex;
  return rep;
}

}  // namespace caa
