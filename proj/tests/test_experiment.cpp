#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace dcop;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig tiny_config(const fs::path& out) {
  ExperimentConfig config;
  config.problems = {"G24_uf"};
  config.mechanisms = {"nodiv"};
  config.runs = 2;
  config.base_seed = 7;
  config.dynamics.change_frequency = 300;
  config.dynamics.num_periods = 3;
  config.optima_resolution = 101;
  config.out_dir = out.string();
  config.workers = 2;
  return config;
}

}  // namespace

TEST_CASE("config files parse and unknown keys fail") {
  const fs::path dir = fresh_dir("dcoplab_cfg");
  const fs::path file = dir / "lab.cfg";
  {
    std::ofstream out(file);
    out << "# comment\n";
    out << "experiment.problems = G24_uf, G24_1\n";
    out << "experiment.mechanisms = nodiv,ri\n";
    out << "experiment.runs = 5\n";
    out << "experiment.seed = 99\n";
    out << "dynamics.fc = 500\n";
    out << "de.cr = 0.3\n";
    out << "ri.rate = 0.2\n";
    out << "cls.steps = 7\n";
    out << "metric.epsilon = 0.15\n";
  }
  ExperimentConfig config;
  config.load_file(file.string());
  CHECK(config.problems == std::vector<std::string>{"G24_uf", "G24_1"});
  CHECK(config.mechanisms == std::vector<std::string>{"nodiv", "ri"});
  CHECK(config.runs == 5);
  CHECK(config.base_seed == 99);
  CHECK(config.dynamics.change_frequency == 500);
  CHECK(config.de.crossover_rate == 0.3);
  CHECK(config.mechanism.ri_replacement_rate == 0.2);
  CHECK(config.mechanism.cls_steps_per_generation == 7);
  CHECK(config.epsilon == 0.15);

  CHECK_THROWS_AS(config.set("experiment.warp", "9"), ConfigError);
  CHECK_THROWS_AS(config.set("experiment.runs", "many"), ConfigError);
  CHECK_THROWS_AS(config.load_file((dir / "missing.cfg").string()), IoError);

  config.set("experiment.problems", "all");
  CHECK(config.problems.size() == 22);
}

TEST_CASE("config validation rejects bad selections") {
  ExperimentConfig config;
  config.problems = {"G24_x"};
  CHECK_THROWS_AS(config.validate(), UnknownInstance);
  config = ExperimentConfig{};
  config.mechanisms = {"sharing"};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.runs = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.dynamics.change_frequency = 5;  // below np
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("a tiny experiment produces the documented outputs") {
  const fs::path out = fresh_dir("dcoplab_tiny");
  const ExperimentConfig config = tiny_config(out);
  const ExperimentOutcome outcome = run_experiment(config);
  CHECK(outcome.cells_total == 2);
  CHECK(outcome.cells_failed == 0);

  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "optima.csv"));
  CHECK(fs::exists(out / "optima.csv.checksum"));
  CHECK(fs::exists(out / "metrics.csv"));
  CHECK(fs::exists(out / "cv_trajectories.csv"));
  CHECK(fs::exists(out / "nfe_boxplot.csv"));
  CHECK(fs::exists(out / "table1.txt"));
  CHECK(fs::exists(out / "table2.txt"));
  CHECK(fs::exists(out / "stats.csv"));
  CHECK(fs::exists(out / "sr_bands.csv"));
  CHECK(fs::exists(out / "traces" / "G24_uf__nodiv__run000.csv"));
  CHECK(fs::exists(out / "traces" / "G24_uf__nodiv__run001.csv"));

  // trace completeness: one file per non-failed cell
  long traces = 0;
  for (const auto& entry : fs::directory_iterator(out / "traces")) {
    traces += entry.path().extension() == ".csv";
  }
  CHECK(traces == outcome.cells_total - outcome.cells_failed);

  // metrics rows: header + one per cell
  const std::string metrics = slurp(out / "metrics.csv");
  CHECK(std::count(metrics.begin(), metrics.end(), '\n') == 3);
  CHECK(metrics.rfind("instance,mechanism,run,mof,te,nfe_mean,sr\n", 0) == 0);

  // seed lineage: run r recorded with seed base+r
  const std::string trace0 = slurp(out / "traces" / "G24_uf__nodiv__run000.csv");
  CHECK(trace0.rfind("# seed=7\n", 0) == 0);
  const std::string trace1 = slurp(out / "traces" / "G24_uf__nodiv__run001.csv");
  CHECK(trace1.rfind("# seed=8\n", 0) == 0);

  // single mechanism: stats need at least two groups
  const std::string table2 = slurp(out / "table2.txt");
  CHECK(table2.find("needs at least two mechanisms") != std::string::npos);

  // manifest carries the optima checksum actually used
  const std::string manifest = slurp(out / "manifest.json");
  const std::string checksum = slurp(out / "optima.csv.checksum");
  CHECK(manifest.find(checksum.substr(0, 16)) != std::string::npos);
}

TEST_CASE("identical configs reproduce byte-identical metric files") {
  const fs::path out_a = fresh_dir("dcoplab_rep_a");
  const fs::path out_b = fresh_dir("dcoplab_rep_b");
  ExperimentConfig config = tiny_config(out_a);
  config.problems = {"G24_uf", "G24_1"};
  config.mechanisms = {"nodiv", "ri"};
  run_experiment(config);
  config.out_dir = out_b.string();
  run_experiment(config);
  CHECK(slurp(out_a / "metrics.csv") == slurp(out_b / "metrics.csv"));
  CHECK(slurp(out_a / "cv_trajectories.csv") ==
        slurp(out_b / "cv_trajectories.csv"));
  CHECK(slurp(out_a / "nfe_boxplot.csv") == slurp(out_b / "nfe_boxplot.csv"));
  CHECK(slurp(out_a / "optima.csv") == slurp(out_b / "optima.csv"));
}

TEST_CASE("render_reports is idempotent over existing outputs") {
  const fs::path out = fresh_dir("dcoplab_idem");
  ExperimentConfig config = tiny_config(out);
  config.mechanisms = {"nodiv", "crowding", "ri"};
  run_experiment(config);
  const std::string table1 = slurp(out / "table1.txt");
  const std::string table2 = slurp(out / "table2.txt");
  const std::string stats = slurp(out / "stats.csv");
  render_reports(out.string());
  CHECK(slurp(out / "table1.txt") == table1);
  CHECK(slurp(out / "table2.txt") == table2);
  CHECK(slurp(out / "stats.csv") == stats);
}

TEST_CASE("reports include starred best means and numbered relations") {
  const fs::path out = fresh_dir("dcoplab_report");
  ExperimentConfig config = tiny_config(out);
  config.problems = {"G24_uf"};
  config.mechanisms = {"nodiv", "crowding"};
  config.runs = 3;
  run_experiment(config);
  const std::string table1 = slurp(out / "table1.txt");
  CHECK(table1.find("*") != std::string::npos);
  CHECK(table1.find("No-div") != std::string::npos);
  const std::string stats = slurp(out / "stats.csv");
  CHECK(stats.rfind("instance,pair,direction,z,p_corrected,significant\n", 0) ==
        0);
  const std::string bands = slurp(out / "sr_bands.csv");
  CHECK(bands.find("G24_uf,crowding") != std::string::npos);
}

TEST_CASE("a configured optima path must exist") {
  const fs::path out = fresh_dir("dcoplab_missing_optima");
  ExperimentConfig config = tiny_config(out);
  config.optima_path = (out / "nowhere.csv").string();
  CHECK_THROWS_WITH_AS(run_experiment(config),
                       doctest::Contains("dcop-lab optima"), IoError);
}

TEST_CASE("an optima table that does not cover the problems is rejected") {
  const fs::path out = fresh_dir("dcoplab_short_optima");
  ExperimentConfig config = tiny_config(out);
  compute_optima_table({"G24_uf"}, 51, config.dynamics,
                       (out / "short.csv").string());
  config.problems = {"G24_uf", "G24_1"};
  config.optima_path = (out / "short.csv").string();
  CHECK_THROWS_AS(run_experiment(config), IoError);
}

TEST_CASE("worker resolution respects the environment cap") {
  setenv("DCOP_LAB_WORKERS", "2", 1);
  CHECK(resolve_worker_count(8) == 2);
  CHECK(resolve_worker_count(1) == 1);
  setenv("DCOP_LAB_WORKERS", "notanumber", 1);
  CHECK_THROWS_AS(resolve_worker_count(4), ConfigError);
  unsetenv("DCOP_LAB_WORKERS");
  CHECK(resolve_worker_count(3) == 3);
}
