#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "caa/adversary.hpp"
#include "caa/rng.hpp"
#include "caa/scenario.hpp"
#include "caa/transcript_io.hpp"

namespace caa {

struct ConfigParseError {
  int line = 0;
  int col = 0;
  std::string message;

  std::string what() const {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message;
  }
};

// One parsed right-hand side. Raw text is preserved so that a config
// round-trips byte-for-byte through serialize().
struct ConfigValue {
  enum class Type { Scalar, List, VectorList };
  Type type = Type::Scalar;
  std::string scalar;
  std::vector<std::string> list;
  std::vector<Vec> vectors;
  int line = 0;
  int col = 0;

  bool operator==(const ConfigValue& o) const {
    return type == o.type && scalar == o.scalar && list == o.list && vectors == o.vectors;
  }
};

struct ScenarioSection {
  std::map<std::string, ConfigValue> entries;
  int line = 0;

  bool operator==(const ScenarioSection& o) const { return entries == o.entries; }
};

struct ExperimentConfig {
  std::map<std::string, ConfigValue> globals;  // seeds, out, transcripts, jobs
  std::vector<ScenarioSection> sections;

  bool operator==(const ExperimentConfig& o) const {
    return globals == o.globals && sections == o.sections;
  }
};

namespace detail {

inline const std::vector<std::string>& global_keys() {
  static const std::vector<std::string> keys{"seeds", "out", "transcripts", "jobs"};
  return keys;
}

inline const std::vector<std::string>& section_keys() {
  static const std::vector<std::string> keys{
      "preset", "name", "kind", "n", "t", "f", "d", "epsilon", "adversary",
      "adversary_vector", "adversary_range", "victims", "inputs", "input_range",
      "byz_ids", "script", "round_cap", "mda_factor", "counterexample"};
  return keys;
}

inline bool known_key(const std::vector<std::string>& keys, const std::string& k) {
  for (const std::string& key : keys) {
    if (key == k) return true;
  }
  return false;
}

// Parses "[a, b, c]" or "[[x, y], [u, v]]"; pos/col track the original line.
inline ConfigValue parse_bracket_value(const std::string& text, int line, int col_base) {
  ConfigValue v;
  v.line = line;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ConfigParseError {
    return ConfigParseError{line, col_base + static_cast<int>(pos), msg};
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_scalar_token = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ']' && text[pos] != '[') ++pos;
    std::string tok = text.substr(start, pos - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    if (tok.empty()) throw fail("empty list element");
    return tok;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '[') throw fail("expected '['");
  ++pos;
  bool saw_vector = false;
  bool saw_scalar = false;
  while (true) {
    skip_ws();
    if (pos >= text.size()) throw fail("unterminated list");
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    if (text[pos] == '[') {
      ++pos;
      saw_vector = true;
      Vec vec;
      while (true) {
        skip_ws();
        if (pos >= text.size()) throw fail("unterminated vector");
        if (text[pos] == ']') {
          ++pos;
          break;
        }
        const std::string tok = parse_scalar_token();
        try {
          vec.push_back(std::stod(tok));
        } catch (...) {
          throw fail("expected a number, got '" + tok + "'");
        }
        skip_ws();
        if (pos < text.size() && text[pos] == ',') ++pos;
      }
      v.vectors.push_back(vec);
    } else {
      saw_scalar = true;
      v.list.push_back(parse_scalar_token());
    }
    skip_ws();
    if (pos < text.size() && text[pos] == ',') ++pos;
  }
  skip_ws();
  if (pos != text.size()) throw fail("trailing characters after list");
  if (saw_vector && saw_scalar) throw fail("cannot mix scalars and vectors in one list");
  v.type = saw_vector ? ConfigValue::Type::VectorList : ConfigValue::Type::List;
  return v;
}

}  // namespace detail

/// Flat key = value format with one [scenario] section per scenario
/// template; '#' starts a comment, lists use bracketed comma syntax.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  ScenarioSection* current = nullptr;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const std::size_t end = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(begin, end - begin + 1);
    if (body.front() == '[') {
      if (body == "[scenario]") {
        cfg.sections.push_back(ScenarioSection{{}, line_no});
        current = &cfg.sections.back();
        continue;
      }
      throw ConfigParseError{line_no, static_cast<int>(begin) + 1,
                             "unknown section '" + body + "'"};
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError{line_no, static_cast<int>(begin) + 1, "expected 'key = value'"};
    }
    std::string key = body.substr(0, eq);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    if (key.empty()) {
      throw ConfigParseError{line_no, static_cast<int>(begin) + 1, "empty key"};
    }
    std::size_t vstart = eq + 1;
    while (vstart < body.size() && std::isspace(static_cast<unsigned char>(body[vstart]))) ++vstart;
    const std::string value_text = body.substr(vstart);
    const int value_col = static_cast<int>(begin + vstart) + 1;
    if (value_text.empty()) {
      throw ConfigParseError{line_no, value_col, "missing value for '" + key + "'"};
    }
    ConfigValue value;
    if (value_text.front() == '[') {
      value = detail::parse_bracket_value(value_text, line_no, value_col);
    } else {
      value.type = ConfigValue::Type::Scalar;
      value.scalar = value_text;
      value.line = line_no;
      value.col = value_col;
    }
    const auto& allowed = current ? detail::section_keys() : detail::global_keys();
    if (!detail::known_key(allowed, key)) {
      throw ConfigParseError{line_no, static_cast<int>(begin) + 1,
                             "unknown key '" + key + "'"};
    }
    auto& target = current ? current->entries : cfg.globals;
    if (target.count(key)) {
      throw ConfigParseError{line_no, static_cast<int>(begin) + 1,
                             "duplicate key '" + key + "'"};
    }
    value.line = line_no;
    target[key] = value;
  }
  return cfg;
}

inline std::string serialize_value(const ConfigValue& v) {
  switch (v.type) {
    case ConfigValue::Type::Scalar:
      return v.scalar;
    case ConfigValue::Type::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.list.size(); ++i) {
        if (i) out += ", ";
        out += v.list[i];
      }
      return out + "]";
    }
    case ConfigValue::Type::VectorList: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.vectors.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t k = 0; k < v.vectors[i].size(); ++k) {
          if (k) out += ", ";
          out += format_double(v.vectors[i][k]);
        }
        out += "]";
      }
      return out + "]";
    }
  }
  return "";
}

inline std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  for (const auto& [key, value] : cfg.globals) {
    os << key << " = " << serialize_value(value) << '\n';
  }
  for (const ScenarioSection& sec : cfg.sections) {
    os << "\n[scenario]\n";
    for (const auto& [key, value] : sec.entries) {
      os << key << " = " << serialize_value(value) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets

inline Scenario make_fig2_style_scenario(std::uint64_t seed) {
  Scenario sc;
  sc.name = "fig2-style-random";
  sc.kind = ProtocolKind::SyncBox;
  sc.schedule = Schedule::Synchronous;
  sc.n = 7;
  sc.t = 2;
  sc.f = 2;
  sc.d = 2;
  sc.epsilon = 0.05;
  sc.seed = seed;
  Rng rng(Rng(seed).fork(0xA11CE).next());
  for (int i = 0; i < sc.n; ++i) {
    Vec v(2);
    v[0] = rng.uniform(0.0, 8.0);
    v[1] = rng.uniform(0.0, 8.0);
    sc.inputs.push_back(v);
  }
  sc.byz_ids = {5, 6};
  sc.adversary.kind = AdversaryKind::Seeded;
  sc.adversary.value_range = {0.0, 8.0};
  return sc;
}

inline std::vector<std::string> preset_names() {
  return {"convex-lb-d2", "convex-lb-d3",  "strong-lb-sync",
          "strong-lb-async", "mda-box-break", "fig2-style-random"};
}

inline Scenario preset_scenario(const std::string& name) {
  if (name == "convex-lb-d2") return build_convex_lb_scenario(2, 1, 1.0, 1e-6);
  if (name == "convex-lb-d3") return build_convex_lb_scenario(3, 1, 1.0, 1e-6);
  if (name == "strong-lb-sync") {
    return build_strong_validity_lb_scenario(4, 1, 2, Schedule::Synchronous);
  }
  if (name == "strong-lb-async") {
    return build_strong_validity_lb_scenario(7, 2, 2, Schedule::Asynchronous);
  }
  if (name == "mda-box-break") return build_mda_box_breaker_scenario(5, 1, 2);
  if (name == "fig2-style-random") return make_fig2_style_scenario(1);
  throw std::invalid_argument("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// Expansion of a parsed config into concrete runs

namespace detail {

inline double scalar_as_double(const ConfigValue& v) {
  try {
    return std::stod(v.scalar);
  } catch (...) {
    throw ConfigParseError{v.line, v.col, "expected a number, got '" + v.scalar + "'"};
  }
}

inline long long scalar_as_int(const ConfigValue& v) {
  try {
    return std::stoll(v.scalar);
  } catch (...) {
    throw ConfigParseError{v.line, v.col, "expected an integer, got '" + v.scalar + "'"};
  }
}

inline bool scalar_as_bool(const ConfigValue& v) {
  if (v.scalar == "true") return true;
  if (v.scalar == "false") return false;
  throw ConfigParseError{v.line, v.col, "expected true/false"};
}

// Grid axis: the scalar or every list element as raw strings.
inline std::vector<std::string> axis_values(const ConfigValue& v) {
  if (v.type == ConfigValue::Type::Scalar) return {v.scalar};
  if (v.type == ConfigValue::Type::List) return v.list;
  throw ConfigParseError{v.line, v.col, "vectors cannot form a grid axis"};
}

inline std::vector<int> int_list(const ConfigValue& v) {
  std::vector<int> out;
  if (v.type != ConfigValue::Type::List) {
    throw ConfigParseError{v.line, v.col, "expected a bracketed list"};
  }
  for (const std::string& s : v.list) {
    try {
      out.push_back(std::stoi(s));
    } catch (...) {
      throw ConfigParseError{v.line, v.col, "expected an integer, got '" + s + "'"};
    }
  }
  return out;
}

struct ScenarioTemplate {
  Scenario sc;
  double input_lo = 0.0;
  double input_hi = 8.0;  // inputs drawn per seed when none are given
};

inline ScenarioTemplate scenario_from_section(const ScenarioSection& sec,
                                              const std::map<std::string, std::string>& axis) {
  auto get = [&](const char* key) -> const ConfigValue* {
    auto it = sec.entries.find(key);
    return it == sec.entries.end() ? nullptr : &it->second;
  };
  auto axis_or = [&](const char* key) -> std::optional<std::string> {
    auto it = axis.find(key);
    if (it != axis.end()) return it->second;
    return std::nullopt;
  };
  auto int_field = [&](const char* key, std::optional<long long> def) -> long long {
    if (auto ax = axis_or(key)) return std::stoll(*ax);
    if (const ConfigValue* v = get(key)) return scalar_as_int(*v);
    if (def) return *def;
    throw ConfigParseError{sec.line, 1, std::string("missing required key '") + key + "'"};
  };

  Scenario sc;
  if (const ConfigValue* name = get("name")) sc.name = name->scalar;
  std::string kind_text;
  if (auto ax = axis_or("kind")) {
    kind_text = *ax;
  } else if (const ConfigValue* v = get("kind")) {
    kind_text = v->scalar;
  } else {
    throw ConfigParseError{sec.line, 1, "missing required key 'kind'"};
  }
  sc.kind = kind_from_string(kind_text);
  sc.schedule = schedule_of(sc.kind);
  sc.n = static_cast<int>(int_field("n", std::nullopt));
  sc.t = static_cast<int>(int_field("t", std::nullopt));
  sc.f = static_cast<int>(int_field("f", sc.t));
  sc.d = static_cast<int>(int_field("d", std::nullopt));
  if (auto ax = axis_or("epsilon")) {
    sc.epsilon = std::stod(*ax);
  } else if (const ConfigValue* v = get("epsilon")) {
    sc.epsilon = scalar_as_double(*v);
  } else {
    throw ConfigParseError{sec.line, 1, "missing required key 'epsilon'"};
  }
  sc.round_cap = static_cast<int>(int_field("round_cap", 64));
  sc.mda_round_factor = static_cast<int>(int_field("mda_factor", 6));
  if (const ConfigValue* v = get("counterexample")) sc.counterexample = scalar_as_bool(*v);

  if (const ConfigValue* v = get("byz_ids")) {
    sc.byz_ids = int_list(*v);
  } else {
    for (int i = sc.n - sc.f; i < sc.n; ++i) sc.byz_ids.push_back(i);
  }

  if (const ConfigValue* v = get("adversary")) {
    sc.adversary.kind = adversary_from_string(v->scalar);
  }
  if (const ConfigValue* v = get("adversary_vector")) {
    if (v->type != ConfigValue::Type::VectorList || v->vectors.size() != 1) {
      throw ConfigParseError{v->line, v->col, "adversary_vector takes one vector, e.g. [[0, 0]]"};
    }
    sc.adversary.vector = v->vectors.front();
  }
  if (const ConfigValue* v = get("adversary_range")) {
    if (v->type != ConfigValue::Type::List || v->list.size() != 2) {
      throw ConfigParseError{v->line, v->col, "adversary_range takes [lo, hi]"};
    }
    sc.adversary.value_range = {std::stod(v->list[0]), std::stod(v->list[1])};
  }
  if (const ConfigValue* v = get("victims")) sc.adversary.victims = int_list(*v);

  ScenarioTemplate tpl;
  if (const ConfigValue* v = get("input_range")) {
    if (v->type != ConfigValue::Type::List || v->list.size() != 2) {
      throw ConfigParseError{v->line, v->col, "input_range takes [lo, hi]"};
    }
    tpl.input_lo = std::stod(v->list[0]);
    tpl.input_hi = std::stod(v->list[1]);
  }
  const ConfigValue* inputs = get("inputs");
  if (inputs && inputs->type == ConfigValue::Type::VectorList) {
    sc.inputs = inputs->vectors;
  } else if (!inputs || inputs->scalar == "random") {
    // materialized per expanded scenario once the seed is known
  } else {
    throw ConfigParseError{inputs->line, inputs->col,
                           "inputs must be 'random' or a list of vectors"};
  }
  tpl.sc = std::move(sc);
  return tpl;
}

}  // namespace detail

struct PlannedRun {
  std::string run_id;
  Scenario scenario;
};

/// Expands grid axes and seeds into the concrete, validated run list.
inline std::vector<PlannedRun> expand_runs(const ExperimentConfig& cfg,
                                           std::uint64_t seed_base = 0) {
  std::vector<std::uint64_t> seeds;
  if (auto it = cfg.globals.find("seeds"); it != cfg.globals.end()) {
    for (const std::string& s : detail::axis_values(it->second)) {
      try {
        seeds.push_back(std::stoull(s));
      } catch (...) {
        throw ConfigParseError{it->second.line, it->second.col, "bad seed '" + s + "'"};
      }
    }
  }
  if (seeds.empty()) seeds.push_back(1);

  std::vector<detail::ScenarioTemplate> templates;
  for (const ScenarioSection& sec : cfg.sections) {
    if (auto it = sec.entries.find("preset"); it != sec.entries.end()) {
      detail::ScenarioTemplate tpl;
      tpl.sc = preset_scenario(it->second.scalar);
      if (auto eps = sec.entries.find("epsilon"); eps != sec.entries.end()) {
        tpl.sc.epsilon = detail::scalar_as_double(eps->second);
      }
      templates.push_back(tpl);
      continue;
    }
    // Cartesian product over the list-valued grid axes.
    static const char* axes[] = {"kind", "n", "t", "f", "d", "epsilon"};
    std::vector<std::pair<std::string, std::vector<std::string>>> grid;
    for (const char* key : axes) {
      auto it = sec.entries.find(key);
      if (it != sec.entries.end() && it->second.type == ConfigValue::Type::List) {
        grid.emplace_back(key, detail::axis_values(it->second));
      }
    }
    std::vector<std::map<std::string, std::string>> combos{{}};
    for (const auto& [key, values] : grid) {
      std::vector<std::map<std::string, std::string>> next;
      for (const auto& combo : combos) {
        for (const std::string& v : values) {
          auto extended = combo;
          extended[key] = v;
          next.push_back(std::move(extended));
        }
      }
      combos = std::move(next);
    }
    for (const auto& combo : combos) {
      templates.push_back(detail::scenario_from_section(sec, combo));
    }
  }

  if (templates.size() * seeds.size() > 100000) {
    throw std::invalid_argument("grid expansion exceeds 1e5 runs");
  }

  std::vector<PlannedRun> runs;
  int index = 0;
  for (const detail::ScenarioTemplate& tpl : templates) {
    for (std::uint64_t seed : seeds) {
      Scenario sc = tpl.sc;
      sc.seed = seed + seed_base;
      if (sc.inputs.empty()) {
        Rng rng(Rng(sc.seed).fork(0xA11CE).next());
        for (int i = 0; i < sc.n; ++i) {
          Vec v(static_cast<std::size_t>(sc.d));
          for (double& x : v) x = rng.uniform(tpl.input_lo, tpl.input_hi);
          sc.inputs.push_back(v);
        }
      }
      validate(sc);
      char id[16];
      std::snprintf(id, sizeof(id), "r%05d", index);
      runs.push_back(PlannedRun{id, std::move(sc)});
      ++index;
    }
  }
  return runs;
}

}  // namespace caa
