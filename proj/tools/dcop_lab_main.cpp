// dcop-lab: batch driver for the dynamic constrained optimization lab.
//
// Subcommands:
//   run     execute problems x mechanisms x runs and write traces/reports
//   optima  compute the reference-optima table
//   report  regenerate report files from an existing output directory
//
// Talks to the solver core exclusively through the C API (dcoplab.h).
// Exit codes: 0 success, 1 configuration/usage error, 2 partial cell failure.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcoplab.h"

namespace {

int fail_with(dcoplab_status status) {
  std::fprintf(stderr, "dcop-lab: %s: %s\n", dcoplab_status_string(status),
               dcoplab_last_error());
  return status == DCOPLAB_PARTIAL_FAILURE ? 2 : 1;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ",";
    out += item;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcop-lab: dynamic constrained optimization laboratory"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "run a batch experiment");
  std::string config_path, out_dir, optima_path;
  std::vector<std::string> problems, mechanisms;
  int runs = -1, workers = -1;
  long long seed = -1;
  run->add_option("--config", config_path, "config file (section.key = value)");
  run->add_option("--problems", problems, "instance ids (or 'all')");
  run->add_option("--mechanisms", mechanisms,
                  "mechanisms: nodiv cls crowding fitnessdiv opp ri (or 'all')");
  run->add_option("--runs", runs, "independent runs per cell");
  run->add_option("--seed", seed, "base seed (run r uses seed + r)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--optima", optima_path, "precomputed optima table CSV");
  run->add_option("--workers", workers, "max parallel workers");

  // ---- optima ----
  auto* optima = app.add_subcommand("optima", "compute reference optima");
  std::vector<std::string> optima_instances;
  int resolution = 2001;
  std::string optima_out = "optima.csv";
  double k = 0.5, s = 20.0;
  int fc = 1000, periods = 10;
  optima->add_option("--instances", optima_instances,
                     "instance ids (or 'all')");
  optima->add_option("--resolution", resolution, "grid points per axis");
  optima->add_option("--out", optima_out, "output CSV file");
  optima->add_option("--k", k, "objective severity");
  optima->add_option("--s", s, "constraint severity");
  optima->add_option("--fc", fc, "evaluations per period");
  optima->add_option("--periods", periods, "number of periods");

  // ---- report ----
  auto* report = app.add_subcommand("report", "regenerate report files");
  std::string report_dir;
  report->add_option("--dir", report_dir, "experiment output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    dcoplab_config* config = nullptr;
    dcoplab_status status = dcoplab_config_create(&config);
    if (status != DCOPLAB_OK) return fail_with(status);
    std::unique_ptr<dcoplab_config, void (*)(dcoplab_config*)> guard(
        config, dcoplab_config_destroy);

    if (!config_path.empty()) {
      status = dcoplab_config_load_file(config, config_path.c_str());
      if (status != DCOPLAB_OK) return fail_with(status);
    }
    auto set = [&](const char* key, const std::string& value) {
      if (status == DCOPLAB_OK) {
        status = dcoplab_config_set(config, key, value.c_str());
      }
    };
    if (!problems.empty()) set("experiment.problems", join(problems));
    if (!mechanisms.empty()) set("experiment.mechanisms", join(mechanisms));
    if (runs >= 0) set("experiment.runs", std::to_string(runs));
    if (seed >= 0) set("experiment.seed", std::to_string(seed));
    if (!out_dir.empty()) set("experiment.out", out_dir);
    if (!optima_path.empty()) set("optima.path", optima_path);
    if (workers >= 0) set("experiment.workers", std::to_string(workers));
    if (status != DCOPLAB_OK) return fail_with(status);

    int cells_failed = 0;
    status = dcoplab_run_experiment(config, nullptr, &cells_failed);
    if (status == DCOPLAB_PARTIAL_FAILURE) {
      std::fprintf(stderr, "dcop-lab: %d cell(s) failed; see manifest.json\n",
                   cells_failed);
      return 2;
    }
    if (status != DCOPLAB_OK) return fail_with(status);
    std::printf("experiment complete\n");
    return 0;
  }

  if (optima->parsed()) {
    const std::string instances =
        optima_instances.empty() ? "all" : join(optima_instances);
    const dcoplab_status status = dcoplab_compute_optima_table(
        instances.c_str(), resolution, k, s, fc, periods, optima_out.c_str());
    if (status != DCOPLAB_OK) return fail_with(status);
    std::printf("optima table written to %s\n", optima_out.c_str());
    return 0;
  }

  if (report->parsed()) {
    const dcoplab_status status = dcoplab_render_reports(report_dir.c_str());
    if (status != DCOPLAB_OK) return fail_with(status);
    std::printf("reports regenerated in %s\n", report_dir.c_str());
    return 0;
  }

  return 1;
}
