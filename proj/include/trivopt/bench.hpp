#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trivopt/engine.hpp"

namespace trivopt {

/// One experiment as described by a config file plus CLI overrides.
/// `k = 0` denotes the infinite horizon (a single fixed chart); `out` may be
/// empty to skip writing the per-iteration trace.
struct ExperimentConfig {
  std::string problem = "procrustes";
  int n = 8;
  std::string algo = "atriv";
  int k = 1;
  std::string opt = "adam";
  double lr = 1e-2;
  double mu = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double eps = 1e-8;
  std::string retraction = "exp";
  std::int64_t iters = 1000;
  std::uint64_t seed = 1;
  std::string out = "trace.csv";
};

/// Parses `key = value` lines ('#' comments, blank lines allowed).  Unknown
/// keys and malformed values raise ConfigError; missing file raises IoError.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies one `key=value` override in place (same key set as the file).
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Cross-field validation (known problem/algo/opt names, positive counts,
/// horizon/algorithm compatibility).  Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// One line of the aggregate results table.
struct SummaryRow {
  std::string problem;
  int n = 0;
  std::string algo;
  int k = 0;
  std::string opt;
  double lr = 0.0;
  std::int64_t iters = 0;
  std::uint64_t seed = 0;
  std::string status;
  double final_f = 0.0;
  double best_f = 0.0;
  double gap = 0.0;
  std::int64_t iters_to_gap = -1;  ///< first row with f - f* <= 1e-6; -1 if never
  std::int64_t restarts = 0;
  double wall_time_s = 0.0;
};

/// Deterministic starting point for (problem instance, seed).
Point starting_point(const Problem& problem, std::uint64_t seed);

/// Builds the problem, runs the configured algorithm, writes the trace CSV
/// (unless `out` is empty), and returns the summary.  The returned record is
/// also exposed for callers that need the full trajectory.
SummaryRow run_experiment(const ExperimentConfig& cfg, RunRecord* record = nullptr);

/// Runs every config, each isolated so one failure doesn't sink the batch
/// (a failed run becomes a `status = "error:..."` row), and returns rows in a
/// deterministic order independent of completion timing.
std::vector<SummaryRow> run_grid(const std::vector<ExperimentConfig>& configs);

/// Reads every *.cfg under `dir` (lexicographic order), runs the grid, and
/// writes `<dir>/summary.csv`.  Returns the rows.
std::vector<SummaryRow> run_grid_dir(const std::string& dir);

void write_trace_csv(const std::string& path, const RunRecord& record);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

/// Shortest round-trippable decimal rendering used in every CSV cell.
std::string format_double(double x);

/// Small built-in invariant suite for `bench selftest`; returns the number of
/// failed checks and prints one line per check.
int selftest();

/// Full CLI entry point (subcommands run / grid / selftest).  Returns the
/// process exit code: 0 success, 1 runtime failure, 2 I/O failure, 3 usage.
int bench_main(const std::vector<std::string>& args);

}  // namespace trivopt
