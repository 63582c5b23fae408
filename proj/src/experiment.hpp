#ifndef DCOPLAB_EXPERIMENT_HPP
#define DCOPLAB_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diversity.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "runner.hpp"

namespace dcop {

/// Batch driver configuration. File format is flat `section.key = value`
/// lines ('#' comments); the CLI overrides individual keys.
struct ExperimentConfig {
  std::vector<std::string> problems;    // default: all 22
  std::vector<std::string> mechanisms;  // default: all 6 (cli names)
  int runs = 30;
  std::uint64_t base_seed = 42;  // run r uses base_seed + r
  DynamicParams dynamics;
  DEConfig de;
  MechanismConfig mechanism;
  double epsilon = 0.10;
  std::string out_dir = "out";
  std::string optima_path;     // empty: compute into out_dir/optima.csv
  int optima_resolution = 2001;
  int workers = 0;             // 0: hardware concurrency

  ExperimentConfig();
  void validate() const;

  /// Applies one `section.key = value` assignment. Throws ConfigError for
  /// unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);

  /// Parses a config file and applies every assignment in order.
  void load_file(const std::string& path);
};

struct CellFailure {
  std::string problem;
  std::string mechanism;
  int run = 0;
  std::string error;
};

struct ExperimentOutcome {
  long cells_total = 0;
  long cells_failed = 0;
  std::vector<CellFailure> failures;
};

/// Runs the full cross product problems x mechanisms x runs. Writes, under
/// config.out_dir: manifest.json (first), optima.csv (when computed),
/// traces/*.csv, metrics.csv, cv_trajectories.csv, nfe_boxplot.csv, and the
/// rendered report files. Cells may execute on parallel workers; outputs are
/// written in canonical order regardless of scheduling. Individual cell
/// failures are recorded and do not abort the batch.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Computes reference optima for the given instances and persists the table
/// (CSV plus a .checksum side file).
void compute_optima_table(const std::vector<std::string>& instances,
                          int grid_resolution, const DynamicParams& dynamics,
                          const std::string& out_file);

/// Regenerates table1.txt, table2.txt, stats.csv and sr_bands.csv from the
/// metrics CSV already present in dir. Pure function of the CSV inputs.
void render_reports(const std::string& dir);

/// Stable worker-count resolution: config value, capped by the
/// DCOP_LAB_WORKERS environment variable when set.
int resolve_worker_count(int configured);

}  // namespace dcop

#endif
