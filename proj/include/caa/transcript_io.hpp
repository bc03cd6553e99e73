#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "caa/metrics.hpp"
#include "caa/simnet.hpp"
#include "caa/version.hpp"

namespace caa {

/// Decimal with 17 significant digits; round-trips IEEE doubles exactly.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_vector(const Vec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ';';
    out += format_double(v[k]);
  }
  return out;
}

inline Vec parse_vector(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    v.push_back(std::stod(tok));
  }
  return v;
}

namespace detail {

inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json j;
  j["name"] = sc.name;
  j["kind"] = to_string(sc.kind);
  j["schedule"] = sc.schedule == Schedule::Synchronous ? "Synchronous" : "Asynchronous";
  j["n"] = sc.n;
  j["t"] = sc.t;
  j["f"] = sc.f;
  j["d"] = sc.d;
  j["epsilon"] = sc.epsilon;
  j["inputs"] = sc.inputs;
  j["byz_ids"] = sc.byz_ids;
  j["seed"] = sc.seed;
  j["round_cap"] = sc.round_cap;
  j["mda_round_factor"] = sc.mda_round_factor;
  j["counterexample"] = sc.counterexample;
  nlohmann::json adv;
  adv["kind"] = to_string(sc.adversary.kind);
  adv["vector"] = sc.adversary.vector;
  adv["victims"] = sc.adversary.victims;
  if (sc.adversary.value_range) {
    adv["range"] = {sc.adversary.value_range->first, sc.adversary.value_range->second};
  }
  nlohmann::json script = nlohmann::json::array();
  for (const ScriptedMessage& m : sc.adversary.script) {
    script.push_back({{"round", m.round},
                      {"sender", m.sender},
                      {"vector", m.vector},
                      {"recipients", m.recipients}});
  }
  adv["script"] = script;
  j["adversary"] = adv;
  return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario sc;
  sc.name = j.value("name", std::string{});
  sc.kind = kind_from_string(j.at("kind").get<std::string>());
  sc.schedule = j.at("schedule").get<std::string>() == "Synchronous"
                    ? Schedule::Synchronous
                    : Schedule::Asynchronous;
  sc.n = j.at("n").get<int>();
  sc.t = j.at("t").get<int>();
  sc.f = j.at("f").get<int>();
  sc.d = j.at("d").get<int>();
  sc.epsilon = j.at("epsilon").get<double>();
  sc.inputs = j.at("inputs").get<PointSet>();
  sc.byz_ids = j.at("byz_ids").get<std::vector<int>>();
  sc.seed = j.at("seed").get<std::uint64_t>();
  sc.round_cap = j.at("round_cap").get<int>();
  sc.mda_round_factor = j.value("mda_round_factor", 6);
  sc.counterexample = j.at("counterexample").get<bool>();
  const nlohmann::json& adv = j.at("adversary");
  sc.adversary.kind = adversary_from_string(adv.at("kind").get<std::string>());
  sc.adversary.vector = adv.at("vector").get<Vec>();
  sc.adversary.victims = adv.at("victims").get<std::vector<int>>();
  if (adv.contains("range")) {
    sc.adversary.value_range = {adv["range"][0].get<double>(), adv["range"][1].get<double>()};
  }
  for (const nlohmann::json& m : adv.at("script")) {
    ScriptedMessage msg;
    msg.round = m.at("round").get<int>();
    msg.sender = m.at("sender").get<int>();
    msg.vector = m.at("vector").get<Vec>();
    msg.recipients = m.at("recipients").get<std::vector<int>>();
    sc.adversary.script.push_back(msg);
  }
  return sc;
}

}  // namespace detail

/// One header line with the scenario, then one line per node-round record.
inline void write_transcript(std::ostream& os, const std::string& run_id, const Transcript& tr) {
  nlohmann::json header;
  header["type"] = "header";
  header["version"] = kToolVersion;
  header["run_id"] = run_id;
  header["scenario"] = detail::scenario_to_json(tr.scenario);
  header["aborted"] = tr.aborted;
  os << header.dump() << '\n';
  for (const RoundRecord& rec : tr.records) {
    nlohmann::json j;
    j["run_id"] = run_id;
    j["round"] = rec.round;
    j["node"] = rec.node;
    j["accepted_senders"] = rec.accepted_senders;
    j["vector"] = format_vector(rec.computed);
    j["phase"] = to_string(rec.phase_after);
    os << j.dump() << '\n';
  }
}

struct ReplayResult {
  int exit_code = 0;  // 0 match, 2 refuse (version/parse), 4 divergence
  std::string message;
};

/// Re-executes each recorded run and compares every node-round vector
/// bit-exactly against the stream.
inline ReplayResult replay_transcripts(std::istream& is) {
  std::string line;
  std::vector<nlohmann::json> pending;  // record lines of the current run
  nlohmann::json header;
  bool have_header = false;
  int line_no = 0;

  auto verify = [&]() -> ReplayResult {
    if (!have_header) return {0, ""};
    const std::string run_id = header.at("run_id").get<std::string>();
    Scenario sc;
    try {
      sc = detail::scenario_from_json(header.at("scenario"));
    } catch (const std::exception& e) {
      return {2, std::string("bad scenario in header: ") + e.what()};
    }
    const Transcript tr = run(sc);
    if (tr.records.size() != pending.size()) {
      return {4, "run " + run_id + ": record count differs"};
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const RoundRecord& rec = tr.records[i];
      const nlohmann::json& j = pending[i];
      const bool same = j.at("round").get<int>() == rec.round &&
                        j.at("node").get<int>() == rec.node &&
                        j.at("accepted_senders").get<std::vector<int>>() == rec.accepted_senders &&
                        j.at("vector").get<std::string>() == format_vector(rec.computed);
      if (!same) {
        return {4, "run " + run_id + ": divergence at round " +
                       std::to_string(j.at("round").get<int>()) + ", node " +
                       std::to_string(j.at("node").get<int>())};
      }
    }
    return {0, ""};
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      return {2, "line " + std::to_string(line_no) + ": " + e.what()};
    }
    if (j.contains("type") && j["type"] == "header") {
      const ReplayResult res = verify();
      if (res.exit_code != 0) return res;
      if (j.at("version").get<std::string>() != kToolVersion) {
        return {2, "transcript written by tool version " +
                       j.at("version").get<std::string>() + ", this is " + kToolVersion};
      }
      header = j;
      have_header = true;
      pending.clear();
    } else {
      if (!have_header) return {2, "record before any header"};
      pending.push_back(j);
    }
  }
  return verify();
}

}  // namespace caa
