#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "caa/combinatorics.hpp"
#include "caa/protocol.hpp"
#include "caa/vec.hpp"

namespace caa {

enum class AdversaryKind {
  Silent,
  FixedVector,
  RoundScript,
  ConvexLB,
  MdaBoxBreaker,
  StrongValidityLB,
  AsyncHider,
  Seeded,
};

inline const char* to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::Silent: return "Silent";
    case AdversaryKind::FixedVector: return "FixedVector";
    case AdversaryKind::RoundScript: return "RoundScript";
    case AdversaryKind::ConvexLB: return "ConvexLB";
    case AdversaryKind::MdaBoxBreaker: return "MdaBoxBreaker";
    case AdversaryKind::StrongValidityLB: return "StrongValidityLB";
    case AdversaryKind::AsyncHider: return "AsyncHider";
    case AdversaryKind::Seeded: return "Seeded";
  }
  return "?";
}

inline AdversaryKind adversary_from_string(const std::string& s) {
  if (s == "Silent") return AdversaryKind::Silent;
  if (s == "FixedVector") return AdversaryKind::FixedVector;
  if (s == "RoundScript") return AdversaryKind::RoundScript;
  if (s == "ConvexLB") return AdversaryKind::ConvexLB;
  if (s == "MdaBoxBreaker") return AdversaryKind::MdaBoxBreaker;
  if (s == "StrongValidityLB") return AdversaryKind::StrongValidityLB;
  if (s == "AsyncHider") return AdversaryKind::AsyncHider;
  if (s == "Seeded") return AdversaryKind::Seeded;
  throw std::invalid_argument("unknown adversary: " + s);
}

/// One scripted broadcast: what a Byzantine sender commits in a round and
/// who may accept it. An entry that is absent from the script means the
/// sender stays silent that round.
struct ScriptedMessage {
  int round = 0;
  int sender = 0;
  Vec vector;
  std::vector<int> recipients;
};

struct AdversaryStrategy {
  AdversaryKind kind = AdversaryKind::Silent;
  Vec vector;                        // FixedVector / StrongValidityLB / AsyncHider override
  std::vector<ScriptedMessage> script;
  std::vector<int> victims;          // correct senders an async adversary delays
  std::optional<std::pair<double, double>> value_range;  // Seeded per-coordinate range
};

struct Scenario {
  std::string name;  // optional preset or config label
  ProtocolKind kind = ProtocolKind::SyncBox;
  Schedule schedule = Schedule::Synchronous;
  int n = 0;
  int t = 0;
  int f = 0;  // actual number of Byzantine nodes, f <= t
  int d = 1;
  double epsilon = 0.0;
  PointSet inputs;            // n vectors; Byzantine entries are advisory
  std::vector<int> byz_ids;   // exactly f ids
  AdversaryStrategy adversary;
  std::uint64_t seed = 0;
  int round_cap = 64;
  int mda_round_factor = 6;     // the constant in the MDA round count
  bool counterexample = false;  // waives the resilience predicate on purpose

  ProtocolParams params() const {
    return ProtocolParams{n, t, d, epsilon, round_cap, mda_round_factor};
  }

  bool is_byzantine(int id) const {
    return std::find(byz_ids.begin(), byz_ids.end(), id) != byz_ids.end();
  }

  std::vector<int> correct_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
      if (!is_byzantine(i)) ids.push_back(i);
    }
    return ids;
  }

  PointSet correct_inputs() const {
    PointSet out;
    for (int i : correct_ids()) out.push_back(inputs[static_cast<std::size_t>(i)]);
    return out;
  }
};

inline bool resilience_ok(const Scenario& sc) {
  return resilience_holds(sc.kind, sc.n, sc.t, sc.d);
}

/// Structural validation; throws std::invalid_argument with a reason.
inline void validate(const Scenario& sc) {
  if (sc.n < 1) throw std::invalid_argument("n must be positive");
  if (sc.t < 0 || sc.f < 0) throw std::invalid_argument("negative fault count");
  if (sc.f > sc.t) throw std::invalid_argument("f exceeds t");
  if (sc.t >= sc.n) throw std::invalid_argument("t must be below n");
  if (sc.d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (sc.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (sc.round_cap < 1) throw std::invalid_argument("round cap must be positive");
  if (sc.mda_round_factor < 1) throw std::invalid_argument("mda round factor must be positive");
  if (sc.schedule != schedule_of(sc.kind)) {
    throw std::invalid_argument("schedule does not match the protocol kind");
  }
  if (!sc.counterexample && !resilience_ok(sc)) {
    throw std::invalid_argument("resilience predicate violated (flag the scenario as a counterexample to run anyway)");
  }
  if (sc.inputs.size() != static_cast<std::size_t>(sc.n)) {
    throw std::invalid_argument("expected one input vector per node");
  }
  for (const Vec& v : sc.inputs) {
    if (v.size() != static_cast<std::size_t>(sc.d)) {
      throw std::invalid_argument("input vector dimension mismatch");
    }
    if (!is_finite(v)) throw std::invalid_argument("input vector not finite");
  }
  std::set<int> byz(sc.byz_ids.begin(), sc.byz_ids.end());
  if (byz.size() != sc.byz_ids.size()) throw std::invalid_argument("duplicate byzantine ids");
  if (byz.size() != static_cast<std::size_t>(sc.f)) {
    throw std::invalid_argument("expected exactly f byzantine ids");
  }
  for (int id : byz) {
    if (id < 0 || id >= sc.n) throw std::invalid_argument("byzantine id out of range");
  }
  // Exhaustive subset work is capped to keep desk-scale runtime bounded.
  if (binomial(static_cast<std::uint64_t>(sc.n), static_cast<std::uint64_t>(sc.n - sc.t)) >
      1'000'000ULL) {
    throw std::invalid_argument("C(n, n-t) exceeds the enumeration cap");
  }
  if (is_safe_area_kind(sc.kind)) {
    const std::uint64_t blocks =
        sc.schedule == Schedule::Synchronous
            ? binomial(static_cast<std::uint64_t>(sc.n), static_cast<std::uint64_t>(sc.n - sc.t))
            : binomial(static_cast<std::uint64_t>(sc.n - sc.t),
                       static_cast<std::uint64_t>(sc.n - 2 * sc.t));
    if (blocks > 1000ULL) {
      throw std::invalid_argument("safe-area subset count exceeds the joint-LP cap");
    }
  }
  const AdversaryStrategy& adv = sc.adversary;
  if (adv.kind == AdversaryKind::FixedVector || adv.kind == AdversaryKind::StrongValidityLB) {
    if (!adv.vector.empty() && adv.vector.size() != static_cast<std::size_t>(sc.d)) {
      throw std::invalid_argument("adversary vector dimension mismatch");
    }
  }
  if (adv.kind == AdversaryKind::MdaBoxBreaker && sc.d < 2) {
    throw std::invalid_argument("MdaBoxBreaker needs d >= 2");
  }
  if (!adv.victims.empty()) {
    if (sc.schedule != Schedule::Asynchronous) {
      throw std::invalid_argument("victim delays only exist in the asynchronous model");
    }
    if (adv.victims.size() > static_cast<std::size_t>(sc.t)) {
      throw std::invalid_argument("at most t victims can be delayed");
    }
    for (int v : adv.victims) {
      if (v < 0 || v >= sc.n || byz.count(v)) {
        throw std::invalid_argument("victims must be correct node ids");
      }
    }
  }
  for (const ScriptedMessage& msg : adv.script) {
    if (msg.round < 1) throw std::invalid_argument("scripted round must be >= 1");
    if (!byz.count(msg.sender)) throw std::invalid_argument("scripted sender is not byzantine");
    if (msg.vector.size() != static_cast<std::size_t>(sc.d) || !is_finite(msg.vector)) {
      throw std::invalid_argument("scripted vector invalid");
    }
    for (int r : msg.recipients) {
      if (r < 0 || r >= sc.n) throw std::invalid_argument("scripted recipient out of range");
    }
  }
}

}  // namespace caa
