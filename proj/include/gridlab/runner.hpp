#pragma once

/**
 * @file runner.hpp
 * @brief Sweeps over strategy x grid size x architecture x seed, CSV I/O and chart output.
 *
 * Each run derives all randomness from its own seed ("weights",
 * "points-x", "points-y", "boundary-e0".."boundary-e3"), so results do not
 * depend on worker count or completion order.
 */

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridlab/config.hpp"
#include "gridlab/metrics.hpp"
#include "gridlab/optimizer.hpp"

namespace gridlab {

struct ResultRecord {
  std::string problem;
  std::string strategy;
  int depth = 1;
  std::string widths;
  std::string grid;  // "400" or "20x20"
  int boundary_n = 0;
  std::uint64_t seed = 0;
  long epochs = 0;
  double final_loss = 0.0;
  double mae = 0.0;
  double wall_time_s = 0.0;
  std::string status = "ok";  // "ok" or "nonfinite_epoch_<k>"

  bool ok() const { return status == "ok"; }
  bool operator==(const ResultRecord&) const = default;
};

struct RunSpec {
  std::size_t index;
  Strategy strategy;
  int grid;
  NetLayout layout;
  std::uint64_t seed;
};

/// Runs in configuration order: strategies outermost, seeds innermost.
std::vector<RunSpec> enumerate_runs(const ExperimentConfig& cfg);

struct RunOutput {
  ResultRecord record;
  TrainReport report;  // empty on failure
};

/// Generates data, initialises, trains and evaluates one configuration.
/// Non-finite losses produce a flagged record instead of an exception.
RunOutput execute_run(const ExperimentConfig& cfg, const RunSpec& run);

struct SweepOptions {
  int workers = 1;
  /// When set, each run's loss history goes to history_dir/loss_<index>.csv.
  std::filesystem::path history_dir;
  int log_every = 100;
};

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, const SweepOptions& options = {});

/// epoch,loss every `log_every` epochs plus the last one.
void write_loss_history(std::ostream& os, const std::vector<double>& history, int log_every);

struct StrategySummary {
  std::string strategy;
  Aggregate stats;
  int failures = 0;
};

/// Groups records sharing problem/architecture/grid by strategy (first-seen order).
/// Failed runs are counted but excluded; strategies with no successful run are omitted.
/// Throws std::invalid_argument if records mix problems, architectures or grids.
std::vector<StrategySummary> summarize(const std::vector<ResultRecord>& records);

struct SummaryRow {
  std::string problem;
  int depth = 1;
  std::string widths;
  std::string grid;
  StrategySummary summary;
};

/// summarize() applied to every (problem, architecture, grid) group.
std::vector<SummaryRow> summarize_all(const std::vector<ResultRecord>& records);

inline constexpr const char* kResultsHeader =
    "problem,strategy,depth,widths,grid,boundary_n,seed,epochs,final_loss,mae,wall_time_s,status";

void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records);
/// Throws ConfigError on a malformed file.
std::vector<ResultRecord> read_results_csv(std::istream& is);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

/// Writes results.csv, summary.csv and SVG charts into outdir; returns the chart paths.
/// Throws IoError when a file cannot be written.
std::vector<std::filesystem::path> emit_outputs(const std::vector<ResultRecord>& records,
                                                const std::vector<SummaryRow>& summary,
                                                const std::filesystem::path& outdir);

}  // namespace gridlab
