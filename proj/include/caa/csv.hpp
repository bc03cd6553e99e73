#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "caa/metrics.hpp"
#include "caa/transcript_io.hpp"

namespace caa {

inline const char* csv_header() {
  return "run_id,kind,schedule,n,t,f,d,epsilon,adversary,seed,rounds,"
         "max_pairwise_final_dist,true_centroid,opt_radius,approx_ratio,"
         "eps_agreement,weak_valid,strong_valid,box_valid,convex_valid";
}

inline std::string csv_row(const std::string& run_id, const Scenario& sc, const RunReport& rep) {
  std::ostringstream os;
  os << run_id << ',' << to_string(sc.kind) << ',' << to_string(sc.schedule) << ',' << sc.n
     << ',' << sc.t << ',' << sc.f << ',' << sc.d << ',' << format_double(sc.epsilon) << ','
     << to_string(sc.adversary.kind) << ',' << sc.seed << ',' << rep.rounds_used << ','
     << format_double(rep.max_pairwise_final_dist) << ',' << format_vector(rep.true_centroid)
     << ',' << format_double(rep.opt_radius) << ',';
  if (std::isinf(rep.approx_ratio)) {
    os << "inf";
  } else {
    os << format_double(rep.approx_ratio);
  }
  os << ',';
  if (rep.eps_agreement) {
    os << (*rep.eps_agreement ? "true" : "false");
  } else {
    os << "na";
  }
  os << ',' << to_string(rep.weak_valid) << ',' << to_string(rep.strong_valid) << ','
     << to_string(rep.box_valid) << ',' << to_string(rep.convex_valid);
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct TableRow {
  int runs = 0;
  double max_ratio = 0.0;
  bool ratio_inf = false;
  long long rounds_sum = 0;
  // holds/violated/na counts per validity column
  std::map<std::string, std::array<int, 3>> validity;
};

inline void count_state(std::array<int, 3>& slot, const std::string& s) {
  if (s == "holds") ++slot[0];
  else if (s == "violated") ++slot[1];
  else ++slot[2];
}

inline std::string aggregate_state(const std::array<int, 3>& slot) {
  if (slot[1] > 0) return "violated";
  if (slot[0] > 0) return "holds";
  return "na";
}

}  // namespace detail

struct TableError {
  std::string message;
};

/// Summarizes a results CSV per (kind, schedule): worst observed ratio,
/// aggregated validity, mean rounds. Returns the table text or an error.
inline std::pair<std::string, std::optional<TableError>> summarize_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    return {"", std::nullopt};  // empty input, empty table
  }
  const std::vector<std::string> header = detail::split_csv_line(line);
  const std::vector<std::string> expected = detail::split_csv_line(csv_header());
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const std::string& name : expected) {
    if (!col.count(name)) {
      return {"", TableError{"missing column: " + name}};
    }
  }
  std::map<std::pair<std::string, std::string>, detail::TableRow> rows;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() < header.size()) {
      return {"", TableError{"short row at line " + std::to_string(line_no)}};
    }
    detail::TableRow& row = rows[{f[col["kind"]], f[col["schedule"]]}];
    ++row.runs;
    const std::string ratio = f[col["approx_ratio"]];
    if (ratio == "inf") {
      row.ratio_inf = true;
    } else {
      row.max_ratio = std::max(row.max_ratio, std::stod(ratio));
    }
    row.rounds_sum += std::stoll(f[col["rounds"]]);
    for (const char* name : {"weak_valid", "strong_valid", "box_valid", "convex_valid"}) {
      detail::count_state(row.validity[name], f[col[name]]);
    }
  }
  std::ostringstream os;
  os << std::left << std::setw(18) << "kind" << std::setw(14) << "schedule" << std::setw(6)
     << "runs" << std::setw(12) << "max_ratio" << std::setw(12) << "mean_rounds"
     << std::setw(10) << "weak" << std::setw(10) << "strong" << std::setw(10) << "box"
     << std::setw(10) << "convex" << '\n';
  for (const auto& [key, row] : rows) {
    os << std::left << std::setw(18) << key.first << std::setw(14) << key.second
       << std::setw(6) << row.runs;
    std::ostringstream ratio;
    if (row.ratio_inf) {
      ratio << "inf";
    } else {
      ratio << std::setprecision(4) << row.max_ratio;
    }
    std::ostringstream rounds;
    rounds << std::setprecision(4)
           << static_cast<double>(row.rounds_sum) / std::max(row.runs, 1);
    os << std::setw(12) << ratio.str() << std::setw(12) << rounds.str();
    for (const char* name : {"weak_valid", "strong_valid", "box_valid", "convex_valid"}) {
      os << std::setw(10) << detail::aggregate_state(row.validity.at(name));
    }
    os << '\n';
  }
  return {os.str(), std::nullopt};
}

}  // namespace caa
