#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "caa/adversary.hpp"
#include "caa/protocol.hpp"
#include "caa/rng.hpp"
#include "caa/scenario.hpp"
#include "caa/vec.hpp"

namespace caa {

struct RoundRecord {
  int round = 0;
  int node = 0;
  std::vector<int> accepted_senders;  // ascending; parallel to accepted_vectors
  PointSet accepted_vectors;
  Vec computed;
  Phase phase_after = Phase::Converging;
};

struct Transcript {
  Scenario scenario;
  std::vector<RoundRecord> records;
  // Per node: the vector it committed in round 1. Correct nodes commit their
  // input; a Byzantine entry is absent when the adversary sent nothing.
  std::vector<std::optional<Vec>> round1_broadcasts;
  std::map<int, Vec> decided;
  int rounds_used = 0;
  bool aborted = false;
  std::string abort_reason;
  int abort_round = -1;
  int abort_node = -1;

  bool all_correct_decided() const {
    return !aborted &&
           decided.size() + static_cast<std::size_t>(scenario.f) ==
               static_cast<std::size_t>(scenario.n);
  }
};

/// Synchronous delivery: every correct sender reaches every correct node;
/// a Byzantine message reaches exactly its recipient subset.
inline std::vector<std::pair<int, Vec>> deliver_sync(int receiver,
                                                     const std::map<int, Vec>& correct_msgs,
                                                     const ByzRound& byz) {
  std::vector<std::pair<int, Vec>> got(correct_msgs.begin(), correct_msgs.end());
  for (const auto& [sender, msg] : byz) {
    if (std::find(msg.recipients.begin(), msg.recipients.end(), receiver) !=
        msg.recipients.end()) {
      got.emplace_back(sender, msg.vector);
    }
  }
  std::sort(got.begin(), got.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return got;
}

/// Asynchronous delivery: of all candidate messages for this local round,
/// exactly quota (= n-t) "arrive first". Victims' messages are delayed
/// whenever enough other candidates exist; remaining ties are broken by the
/// seeded stream, standing in for adversarial timing.
inline std::vector<std::pair<int, Vec>> deliver_async(int receiver,
                                                      const std::map<int, Vec>& correct_msgs,
                                                      const ByzRound& byz,
                                                      const std::vector<int>& victims,
                                                      std::size_t quota, Rng rng) {
  std::vector<std::pair<int, Vec>> preferred;
  std::vector<std::pair<int, Vec>> delayed;
  for (const auto& [sender, vec] : correct_msgs) {
    const bool hidden =
        std::find(victims.begin(), victims.end(), sender) != victims.end();
    (hidden ? delayed : preferred).emplace_back(sender, vec);
  }
  for (const auto& [sender, msg] : byz) {
    if (std::find(msg.recipients.begin(), msg.recipients.end(), receiver) !=
        msg.recipients.end()) {
      preferred.emplace_back(sender, msg.vector);
    }
  }
  rng.shuffle(preferred);
  std::vector<std::pair<int, Vec>> got;
  for (const auto& m : preferred) {
    if (got.size() == quota) break;
    got.push_back(m);
  }
  if (got.size() < quota) {
    rng.shuffle(delayed);
    for (const auto& m : delayed) {
      if (got.size() == quota) break;
      got.push_back(m);
    }
  }
  if (got.size() != quota) {
    throw AdversaryFault("asynchronous quota cannot be met");
  }
  std::sort(got.begin(), got.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return got;
}

/// Executes a scenario to completion. Deterministic in the scenario
/// (seed included); a protocol invariant violation ends the run early with
/// a diagnostic in the transcript.
inline Transcript run(const Scenario& sc) {
  validate(sc);
  Transcript tr;
  tr.scenario = sc;
  tr.round1_broadcasts.assign(static_cast<std::size_t>(sc.n), std::nullopt);

  const ProtocolParams params = sc.params();
  const bool safe_kind = is_safe_area_kind(sc.kind);
  Rng master(sc.seed);
  AdversaryEngine adversary(sc, master.fork(1));
  const Rng sched_rng = master.fork(2);

  std::map<int, NodeState> states;
  for (int id : sc.correct_ids()) {
    NodeState st;
    st.node_id = id;
    st.current_vector = sc.inputs[static_cast<std::size_t>(id)];
    st.phase = safe_kind ? Phase::Preprocessing : Phase::Converging;
    states.emplace(id, st);
  }

  auto alive = [&](const NodeState& st) { return st.phase != Phase::Decided; };
  const std::size_t quota = static_cast<std::size_t>(sc.n - sc.t);

  for (int round = 1; round <= sc.round_cap; ++round) {
    bool any_alive = false;
    for (const auto& [id, st] : states) any_alive |= alive(st);
    if (!any_alive) break;
    tr.rounds_used = round;

    // Snapshot of what every correct node broadcasts this round; decided
    // nodes replay their last sent vector.
    std::map<int, Vec> correct_msgs;
    for (const auto& [id, st] : states) correct_msgs[id] = st.current_vector;

    const ByzRound byz = adversary.round_messages(round, correct_msgs);

    if (round == 1) {
      for (const auto& [id, st] : states) {
        tr.round1_broadcasts[static_cast<std::size_t>(id)] = st.current_vector;
      }
      for (const auto& [sender, msg] : byz) {
        bool reaches_correct = false;
        for (int r : msg.recipients) reaches_correct |= states.count(r) > 0;
        if (reaches_correct) {
          tr.round1_broadcasts[static_cast<std::size_t>(sender)] = msg.vector;
        }
      }
    }

    for (auto& [id, st] : states) {
      if (!alive(st)) continue;
      std::vector<std::pair<int, Vec>> delivery;
      if (sc.schedule == Schedule::Synchronous) {
        delivery = deliver_sync(id, correct_msgs, byz);
      } else {
        delivery = deliver_async(id, correct_msgs, byz, adversary.victims(), quota,
                                 sched_rng.fork(mix_tag(static_cast<std::uint64_t>(round),
                                                        static_cast<std::uint64_t>(id))));
      }
      PointSet received;
      received.reserve(delivery.size());
      for (const auto& [sender, vec] : delivery) received.push_back(vec);

      Vec next;
      try {
        if (st.round_budget == 0) {
          st.round_budget =
              round_budget(sc.kind, params, initial_extent(sc.kind, received, params));
        }
        const std::optional<Vec> stepped = protocol_step(sc.kind, st, received, params);
        if (stepped) {
          next = *stepped;
        } else if (resilience_ok(sc) && !sc.counterexample) {
          throw ProtocolViolation("safe area empty under valid resilience");
        } else {
          next = st.current_vector;  // counterexample runs fall back
        }
      } catch (const ProtocolViolation& violation) {
        tr.aborted = true;
        tr.abort_reason = violation.what();
        tr.abort_round = round;
        tr.abort_node = id;
        return tr;
      } catch (const std::invalid_argument& precondition) {
        // Step preconditions only break on counterexample scenarios; record
        // the diagnostic instead of tearing the harness down.
        tr.aborted = true;
        tr.abort_reason = precondition.what();
        tr.abort_round = round;
        tr.abort_node = id;
        return tr;
      }

      const Phase ran_in = st.phase;
      st.current_vector = next;
      st.round = round;
      if (st.phase == Phase::Preprocessing) st.phase = Phase::Converging;

      const bool budget_done = round >= st.round_budget;
      const bool eps_exit = safe_kind && diameter(received) <= sc.epsilon;
      if (budget_done || eps_exit) {
        st.phase = Phase::Decided;
        st.decided_vector = next;
        tr.decided[id] = next;
      }

      RoundRecord rec;
      rec.round = round;
      rec.node = id;
      for (const auto& [sender, vec] : delivery) {
        rec.accepted_senders.push_back(sender);
        rec.accepted_vectors.push_back(vec);
      }
      rec.computed = next;
      rec.phase_after = st.phase == Phase::Decided ? Phase::Decided : ran_in;
      tr.records.push_back(std::move(rec));
    }
  }
  return tr;
}

/// Checks the reliable-broadcast consistency condition over a transcript:
/// all accepted copies of one (sender, round) broadcast are identical.
inline bool consistent_broadcasts(const Transcript& tr) {
  std::map<std::pair<int, int>, Vec> seen;
  for (const RoundRecord& rec : tr.records) {
    for (std::size_t i = 0; i < rec.accepted_senders.size(); ++i) {
      const std::pair<int, int> key{rec.round, rec.accepted_senders[i]};
      auto [it, inserted] = seen.emplace(key, rec.accepted_vectors[i]);
      if (!inserted && it->second != rec.accepted_vectors[i]) return false;
    }
  }
  return true;
}

}  // namespace caa
