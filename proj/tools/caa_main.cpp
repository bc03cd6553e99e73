// Command-line front end: expands experiment configs into runs, executes
// them, and emits the results CSV plus optional replayable transcripts.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "caa/config.hpp"
#include "caa/csv.hpp"
#include "caa/metrics.hpp"
#include "caa/simnet.hpp"
#include "caa/transcript_io.hpp"
#include "caa/version.hpp"

namespace {

int log_level() {
  const char* env = std::getenv("SIM_LOG");
  return env ? std::atoi(env) : 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[caa] " << msg << '\n';
}

struct RunOutput {
  std::string csv_row;
  std::string transcript;
  bool violated = false;
};

int cmd_run(const std::string& config_path, std::string out_path,
            std::string transcripts_path, int jobs, std::uint64_t seed_base) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config: " << config_path << '\n';
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  std::vector<caa::PlannedRun> runs;
  caa::ExperimentConfig cfg;
  try {
    cfg = caa::parse_config(buffer.str());
    runs = caa::expand_runs(cfg, seed_base);
  } catch (const caa::ConfigParseError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return 2;
  }
  if (out_path.empty()) {
    if (auto it = cfg.globals.find("out"); it != cfg.globals.end()) out_path = it->second.scalar;
  }
  if (out_path.empty()) out_path = "results.csv";
  if (transcripts_path.empty()) {
    if (auto it = cfg.globals.find("transcripts"); it != cfg.globals.end()) {
      transcripts_path = it->second.scalar;
    }
  }
  if (jobs <= 0) {
    jobs = 1;
    if (auto it = cfg.globals.find("jobs"); it != cfg.globals.end()) {
      jobs = std::max(1, std::atoi(it->second.scalar.c_str()));
    }
  }
  log_info("executing " + std::to_string(runs.size()) + " runs with " + std::to_string(jobs) +
           " worker(s)");

  std::vector<RunOutput> outputs(runs.size());
  const bool want_transcripts = !transcripts_path.empty();
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < runs.size(); i += stride) {
      const caa::Transcript tr = caa::run(runs[i].scenario);
      const caa::RunReport rep = caa::evaluate(tr);
      outputs[i].csv_row = caa::csv_row(runs[i].run_id, runs[i].scenario, rep);
      outputs[i].violated = tr.aborted;
      if (want_transcripts) {
        std::ostringstream ts;
        caa::write_transcript(ts, runs[i].run_id, tr);
        outputs[i].transcript = ts.str();
      }
    }
  };
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back(work, static_cast<std::size_t>(w), static_cast<std::size_t>(jobs));
    }
    for (std::thread& th : pool) th.join();
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << '\n';
    return 2;
  }
  out << caa::csv_header() << '\n';
  for (const RunOutput& o : outputs) out << o.csv_row << '\n';
  log_info("wrote " + out_path);

  if (want_transcripts) {
    std::ofstream ts(transcripts_path);
    if (!ts) {
      std::cerr << "cannot write " << transcripts_path << '\n';
      return 2;
    }
    for (const RunOutput& o : outputs) ts << o.transcript;
    log_info("wrote " + transcripts_path);
  }

  std::vector<std::string> violated;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (outputs[i].violated) violated.push_back(runs[i].run_id);
  }
  if (!violated.empty()) {
    std::cerr << "protocol invariant violations in:";
    for (const std::string& id : violated) std::cerr << ' ' << id;
    std::cerr << '\n';
    return 3;
  }
  return 0;
}

int cmd_table(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) {
    std::cerr << "cannot open " << csv_path << '\n';
    return 2;
  }
  const auto [text, err] = caa::summarize_csv(in);
  if (err) {
    std::cerr << err->message << '\n';
    return 2;
  }
  std::cout << text;
  return 0;
}

int cmd_replay(const std::string& transcript_path) {
  std::ifstream in(transcript_path);
  if (!in) {
    std::cerr << "cannot open " << transcript_path << '\n';
    return 2;
  }
  const caa::ReplayResult res = caa::replay_transcripts(in);
  if (res.exit_code != 0) {
    std::cerr << res.message << '\n';
  } else {
    std::cout << "replay ok\n";
  }
  return res.exit_code;
}

int cmd_presets() {
  for (const std::string& name : caa::preset_names()) {
    const caa::Scenario sc = caa::preset_scenario(name);
    std::cout << name << ": kind=" << caa::to_string(sc.kind) << " n=" << sc.n << " t=" << sc.t
              << " d=" << sc.d << " adversary=" << caa::to_string(sc.adversary.kind) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine centroid-agreement simulator"};
  app.set_version_flag("--version", std::string(caa::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string transcripts_path;
  std::string input_path;
  int jobs = 0;
  std::uint64_t seed_base = 0;

  CLI::App* run = app.add_subcommand("run", "execute the runs described by a config file");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_path, "results CSV path");
  run->add_option("--transcripts", transcripts_path, "JSONL transcript path");
  run->add_option("--jobs", jobs, "parallel runs");
  run->add_option("--seed-base", seed_base, "offset added to every seed");

  CLI::App* table = app.add_subcommand("table", "summarize a results CSV per kind");
  table->add_option("csv", input_path, "results CSV from `run`")->required();

  CLI::App* replay = app.add_subcommand("replay", "re-execute and verify a transcript stream");
  replay->add_option("transcript", input_path, "JSONL transcript from `run`")->required();

  app.add_subcommand("presets", "list the built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_path, transcripts_path, jobs, seed_base);
    if (table->parsed()) return cmd_table(input_path);
    if (replay->parsed()) return cmd_replay(input_path);
    return cmd_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
