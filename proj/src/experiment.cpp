#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "stats.hpp"

namespace fs = std::filesystem;

namespace dcop {
namespace {

std::vector<std::string> default_mechanism_names() {
  std::vector<std::string> names;
  for (MechanismKind kind : all_mechanisms()) {
    names.emplace_back(mechanism_name(kind));
  }
  return names;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    // trim
    const auto begin = item.find_first_not_of(" \t");
    const auto end = item.find_last_not_of(" \t");
    if (begin == std::string::npos) continue;
    items.push_back(item.substr(begin, end - begin + 1));
  }
  return items;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int parsed = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + key + ": " + value);
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + key + ": " + value);
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("expected a seed integer for " + key + ": " + value);
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw IoError("failed writing: " + tmp);
  }
  fs::rename(tmp, path);
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct CellKey {
  std::string problem;
  std::string mechanism;
  int run = 0;
};

struct CellResult {
  bool ok = false;
  std::string error;
  MetricsReport report;
  std::vector<std::pair<long, double>> cv_by_generation;
};

nlohmann::json config_snapshot(const ExperimentConfig& cfg,
                               const std::string& optima_path,
                               const std::string& optima_checksum) {
  nlohmann::json j;
  j["experiment"] = {{"problems", cfg.problems},
                     {"mechanisms", cfg.mechanisms},
                     {"runs", cfg.runs},
                     {"seed", cfg.base_seed},
                     {"seed_rule", "run r uses seed = experiment.seed + r"},
                     {"out", cfg.out_dir},
                     {"workers", resolve_worker_count(cfg.workers)}};
  j["dynamics"] = {{"k", cfg.dynamics.objective_severity_k},
                   {"s", cfg.dynamics.constraint_severity_s},
                   {"fc", cfg.dynamics.change_frequency},
                   {"periods", cfg.dynamics.num_periods}};
  j["de"] = {{"np", cfg.de.population_size},
             {"cr", cfg.de.crossover_rate},
             {"f_min", cfg.de.scale_factor_min},
             {"f_max", cfg.de.scale_factor_max}};
  j["mechanism"] = {{"ri.rate", cfg.mechanism.ri_replacement_rate},
                    {"cls.z0", cfg.mechanism.cls_chaos_seed},
                    {"cls.radius", cfg.mechanism.cls_initial_radius_fraction},
                    {"cls.steps", cfg.mechanism.cls_steps_per_generation},
                    {"cls.decay", cfg.mechanism.cls_decay}};
  j["metric"] = {{"epsilon", cfg.epsilon}};
  j["optima"] = {{"path", optima_path},
                 {"checksum", optima_checksum},
                 {"resolution", cfg.optima_resolution}};
  return j;
}

std::string trace_filename(const CellKey& cell) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run%03d", cell.run);
  return cell.problem + "__" + cell.mechanism + "__" + buf + ".csv";
}

/// Conventional numbering: canonical index within the six mechanisms, 1-based.
int mechanism_number(const std::string& name) {
  const auto& kinds = all_mechanisms();
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (mechanism_name(kinds[i]) == name) return static_cast<int>(i) + 1;
  }
  throw ConfigError("unknown mechanism: " + name);
}

}  // namespace

ExperimentConfig::ExperimentConfig()
    : problems(instance_ids()), mechanisms(default_mechanism_names()) {}

void ExperimentConfig::validate() const {
  if (problems.empty()) throw ConfigError("no problems selected");
  for (const auto& id : problems) {
    if (!is_known_instance(id)) throw UnknownInstance(id);
  }
  if (mechanisms.empty()) throw ConfigError("no mechanisms selected");
  for (const auto& name : mechanisms) parse_mechanism(name);
  if (runs < 1) throw ConfigError("experiment.runs must be >= 1");
  dynamics.validate();
  de.validate();
  mechanism.validate(de.population_size);
  MetricConfig{epsilon}.validate();
  if (optima_resolution < 2) throw ConfigError("optima.resolution too small");
  if (workers < 0) throw ConfigError("experiment.workers must be >= 0");
  if (dynamics.change_frequency < de.population_size) {
    throw ConfigError("dynamics.fc must be at least de.np");
  }
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "experiment.problems") {
    problems = value == "all" ? instance_ids() : split_list(value);
  } else if (key == "experiment.mechanisms") {
    mechanisms = value == "all" ? default_mechanism_names() : split_list(value);
  } else if (key == "experiment.runs") {
    runs = parse_int(key, value);
  } else if (key == "experiment.seed") {
    base_seed = parse_seed(key, value);
  } else if (key == "experiment.out") {
    out_dir = value;
  } else if (key == "experiment.workers") {
    workers = parse_int(key, value);
  } else if (key == "dynamics.k") {
    dynamics.objective_severity_k = parse_double(key, value);
  } else if (key == "dynamics.s") {
    dynamics.constraint_severity_s = parse_double(key, value);
  } else if (key == "dynamics.fc") {
    dynamics.change_frequency = parse_int(key, value);
  } else if (key == "dynamics.periods") {
    dynamics.num_periods = parse_int(key, value);
  } else if (key == "de.np") {
    de.population_size = parse_int(key, value);
  } else if (key == "de.cr") {
    de.crossover_rate = parse_double(key, value);
  } else if (key == "de.f_min") {
    de.scale_factor_min = parse_double(key, value);
  } else if (key == "de.f_max") {
    de.scale_factor_max = parse_double(key, value);
  } else if (key == "ri.rate") {
    mechanism.ri_replacement_rate = parse_double(key, value);
  } else if (key == "cls.z0") {
    mechanism.cls_chaos_seed = parse_double(key, value);
  } else if (key == "cls.radius") {
    mechanism.cls_initial_radius_fraction = parse_double(key, value);
  } else if (key == "cls.steps") {
    mechanism.cls_steps_per_generation = parse_int(key, value);
  } else if (key == "cls.decay") {
    mechanism.cls_decay = parse_double(key, value);
  } else if (key == "metric.epsilon") {
    epsilon = parse_double(key, value);
  } else if (key == "optima.path") {
    optima_path = value;
  } else if (key == "optima.resolution") {
    optima_resolution = parse_int(key, value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string()
                                    : s.substr(b, e - b + 1);
    };
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

int resolve_worker_count(int configured) {
  int workers = configured > 0
                    ? configured
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* cap_env = std::getenv("DCOP_LAB_WORKERS")) {
    try {
      const int cap = std::stoi(cap_env);
      if (cap >= 1) workers = std::min(workers, cap);
    } catch (const std::exception&) {
      throw ConfigError(std::string("DCOP_LAB_WORKERS is not an integer: ") +
                        cap_env);
    }
  }
  return workers;
}

void compute_optima_table(const std::vector<std::string>& instances,
                          int grid_resolution, const DynamicParams& dynamics,
                          const std::string& out_file) {
  OptimaTable table;
  for (const auto& id : instances) {
    const Problem problem = make_instance(id, dynamics);
    table[id] = compute_reference_optima(problem, grid_resolution);
  }
  if (const auto parent = fs::path(out_file).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  write_optima_table(table, out_file);
  write_file_atomic(out_file + ".checksum", file_checksum(out_file) + "\n");
}

namespace {

struct MetricsRow {
  std::string problem;
  std::string mechanism;
  int run = 0;
  double mof = 0.0;
  double te = 0.0;
  double nfe_mean = 0.0;
  bool nfe_defined = false;
  double sr = 0.0;
};

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("missing metrics CSV (" + path +
                  "); run `dcop-lab run` first");
  }
  std::string header;
  std::getline(in, header);
  if (header != "instance,mechanism,run,mof,te,nfe_mean,sr") {
    throw IoError("metrics CSV has unexpected header: " + path);
  }
  std::vector<MetricsRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    MetricsRow row;
    std::string run, mof_s, te_s, nfe_s, sr_s;
    if (!std::getline(fields, row.problem, ',') ||
        !std::getline(fields, row.mechanism, ',') ||
        !std::getline(fields, run, ',') || !std::getline(fields, mof_s, ',') ||
        !std::getline(fields, te_s, ',') ||
        !std::getline(fields, nfe_s, ',') || !std::getline(fields, sr_s)) {
      throw IoError("malformed metrics row: " + line);
    }
    row.run = std::stoi(run);
    row.mof = std::stod(mof_s);
    row.te = std::stod(te_s);
    row.nfe_defined = nfe_s != "nan";
    row.nfe_mean = row.nfe_defined ? std::stod(nfe_s)
                                   : std::numeric_limits<double>::quiet_NaN();
    row.sr = std::stod(sr_s);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GroupStats {
  std::vector<double> mofs;
  double sr_sum = 0.0;
  long count = 0;

  double mof_mean() const {
    double sum = 0.0;
    for (double v : mofs) sum += v;
    return mofs.empty() ? 0.0 : sum / static_cast<double>(mofs.size());
  }
  double mof_std() const {
    if (mofs.size() < 2) return 0.0;
    const double mean = mof_mean();
    double ss = 0.0;
    for (double v : mofs) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(mofs.size() - 1));
  }
  double sr_mean() const {
    return count > 0 ? sr_sum / static_cast<double>(count) : 0.0;
  }
};

}  // namespace

void render_reports(const std::string& dir) {
  const auto rows = read_metrics_csv((fs::path(dir) / "metrics.csv").string());

  // group: problem -> mechanism -> stats, preserving first-seen order
  std::vector<std::string> problem_order;
  std::map<std::string, std::map<std::string, GroupStats>> grouped;
  for (const auto& row : rows) {
    if (!grouped.count(row.problem)) problem_order.push_back(row.problem);
    auto& cell = grouped[row.problem][row.mechanism];
    cell.mofs.push_back(row.mof);
    cell.sr_sum += row.sr;
    ++cell.count;
  }

  // mechanisms present, in canonical 1..6 order
  std::vector<std::string> mechanisms;
  for (MechanismKind kind : all_mechanisms()) {
    const std::string name(mechanism_name(kind));
    for (const auto& row : rows) {
      if (row.mechanism == name) {
        mechanisms.push_back(name);
        break;
      }
    }
  }

  // ---- table1.txt: MOF mean (±std), best per problem starred ----
  std::ostringstream t1;
  t1 << "MOF mean(±std); best mechanism per problem marked *...*\n\n";
  t1 << "instance";
  for (const auto& m : mechanisms) {
    t1 << "," << mechanism_label(parse_mechanism(m));
  }
  t1 << "\n";
  for (const auto& problem : problem_order) {
    t1 << problem;
    // best = lowest mean MOF among mechanisms with data
    std::string best_mech;
    double best_mean = std::numeric_limits<double>::infinity();
    for (const auto& m : mechanisms) {
      const auto it = grouped[problem].find(m);
      if (it != grouped[problem].end() && it->second.mof_mean() < best_mean) {
        best_mean = it->second.mof_mean();
        best_mech = m;
      }
    }
    for (const auto& m : mechanisms) {
      const auto it = grouped[problem].find(m);
      t1 << ",";
      if (it == grouped[problem].end()) continue;
      const std::string entry = fmt(it->second.mof_mean(), "%.4f") + "(±" +
                                fmt(it->second.mof_std(), "%.4f") + ")";
      t1 << (m == best_mech && mechanisms.size() > 1 ? "*" + entry + "*"
                                                     : entry);
    }
    t1 << "\n";
  }
  write_file_atomic((fs::path(dir) / "table1.txt").string(), t1.str());

  // ---- stats.csv + table2.txt: KW omnibus + Dunn/Bonferroni pairs ----
  std::ostringstream stats_csv;
  stats_csv << "instance,pair,direction,z,p_corrected,significant\n";
  std::ostringstream t2;
  t2 << "Kruskal-Wallis (95%) + Bonferroni post-hoc on MOF values\n";
  t2 << "Numbering:";
  for (MechanismKind kind : all_mechanisms()) {
    t2 << " " << mechanism_number(std::string(mechanism_name(kind))) << "="
       << mechanism_label(kind);
  }
  t2 << "\n\n";
  for (const auto& problem : problem_order) {
    std::vector<std::string> present;
    SampleSet samples;
    for (const auto& m : mechanisms) {
      const auto it = grouped[problem].find(m);
      if (it != grouped[problem].end() && it->second.mofs.size() >= 2) {
        present.push_back(m);
        samples.push_back(it->second.mofs);
      }
    }
    if (present.size() < 2) {
      t2 << problem << ": (needs at least two mechanisms)\n";
      continue;
    }
    const ComparisonReport report = bonferroni_posthoc(samples, 0.05);
    std::string relations;
    for (const auto& pair : report.pairs) {
      const std::string& worse = present[pair.worse];
      const std::string& better = present[pair.better];
      stats_csv << problem << "," << present[std::min(pair.worse, pair.better)]
                << "-" << present[std::max(pair.worse, pair.better)] << ","
                << worse << ">" << better << "," << fmt(pair.z, "%.6g") << ","
                << fmt(pair.p_corrected, "%.6g") << ","
                << (pair.significant ? 1 : 0) << "\n";
      if (pair.significant) {
        if (!relations.empty()) relations += ",";
        relations += std::to_string(mechanism_number(worse)) + ">" +
                     std::to_string(mechanism_number(better));
      }
    }
    t2 << problem << ": " << relations << "\n";
  }
  write_file_atomic((fs::path(dir) / "stats.csv").string(), stats_csv.str());
  write_file_atomic((fs::path(dir) / "table2.txt").string(), t2.str());

  // ---- sr_bands.csv: Fig.-2-style SR color bands ----
  std::ostringstream bands;
  bands << "instance,mechanism,sr,band\n";
  for (const auto& problem : problem_order) {
    for (const auto& m : mechanisms) {
      const auto it = grouped[problem].find(m);
      if (it == grouped[problem].end()) continue;
      const double sr = it->second.sr_mean();
      bands << problem << "," << m << "," << fmt(sr, "%.10g") << ","
            << sr_band(sr) << "\n";
    }
  }
  write_file_atomic((fs::path(dir) / "sr_bands.csv").string(), bands.str());
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir / "traces");

  // Resolve the optima table: load when a path is given, compute otherwise.
  std::string optima_path;
  if (!config.optima_path.empty()) {
    optima_path = config.optima_path;
    if (!fs::exists(optima_path)) {
      throw IoError("optima table not found at " + optima_path +
                    "; generate it with `dcop-lab optima` first");
    }
  } else {
    optima_path = (out_dir / "optima.csv").string();
    compute_optima_table(config.problems, config.optima_resolution,
                         config.dynamics, optima_path);
  }
  const OptimaTable optima = read_optima_table(optima_path);
  for (const auto& id : config.problems) {
    const auto it = optima.find(id);
    if (it == optima.end() ||
        static_cast<int>(it->second.per_period.size()) <
            config.dynamics.num_periods) {
      throw IoError("optima table " + optima_path + " does not cover " + id +
                    "; regenerate it with `dcop-lab optima`");
    }
  }
  const std::string optima_checksum = file_checksum(optima_path);

  // Manifest goes out before any run output.
  nlohmann::json manifest;
  manifest["tool"] = "dcop-lab";
  manifest["version"] = "0.1.0";
  manifest["started"] = timestamp_utc();
  manifest["config"] = config_snapshot(config, optima_path, optima_checksum);
  write_file_atomic((out_dir / "manifest.json").string(), manifest.dump(2));

  // Cell list in canonical order.
  std::vector<CellKey> cells;
  for (const auto& problem : config.problems) {
    for (const auto& mechanism : config.mechanisms) {
      for (int run = 0; run < config.runs; ++run) {
        cells.push_back(CellKey{problem, mechanism, run});
      }
    }
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::min<int>(resolve_worker_count(config.workers),
                    static_cast<int>(cells.size()));

  auto worker_loop = [&]() {
    // Problems are immutable; build one per problem id per worker.
    std::map<std::string, Problem> local_problems;
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= cells.size()) return;
      const CellKey& cell = cells[index];
      CellResult& result = results[index];
      try {
        auto found = local_problems.find(cell.problem);
        if (found == local_problems.end()) {
          found = local_problems
                      .emplace(cell.problem,
                               make_instance(cell.problem, config.dynamics))
                      .first;
        }
        const Problem& problem = found->second;
        DEConfig de = config.de;
        de.rng_seed = config.base_seed + static_cast<std::uint64_t>(cell.run);
        const RunTrace trace = run_single(
            problem, parse_mechanism(cell.mechanism), config.mechanism, de);
        const std::string trace_path =
            (out_dir / "traces" / trace_filename(cell)).string();
        write_trace_csv(trace, cell.run, trace_path + ".tmp");
        fs::rename(trace_path + ".tmp", trace_path);
        result.report = compute_metrics(trace, optima.at(cell.problem),
                                        config.dynamics, config.epsilon);
        result.cv_by_generation.reserve(trace.records.size());
        for (const auto& rec : trace.records) {
          result.cv_by_generation.emplace_back(rec.generation, rec.cv);
        }
        result.ok = true;
      } catch (const std::exception& error) {
        result.ok = false;
        result.error = error.what();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
  for (auto& thread : pool) thread.join();

  // Canonical-order output files.
  std::ostringstream metrics_csv;
  metrics_csv << "instance,mechanism,run,mof,te,nfe_mean,sr\n";
  std::ostringstream cv_csv;
  cv_csv << "instance,mechanism,run,generation,cv\n";
  std::ostringstream nfe_csv;
  nfe_csv << "instance,mechanism,run,period,nfe,reached\n";

  ExperimentOutcome outcome;
  outcome.cells_total = static_cast<long>(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellKey& cell = cells[i];
    const CellResult& result = results[i];
    if (!result.ok) {
      ++outcome.cells_failed;
      outcome.failures.push_back(
          CellFailure{cell.problem, cell.mechanism, cell.run, result.error});
      continue;
    }
    const MetricsReport& rep = result.report;
    metrics_csv << cell.problem << "," << cell.mechanism << "," << cell.run
                << "," << fmt(rep.mof) << "," << fmt(rep.te) << ","
                << (rep.nfe_defined ? fmt(rep.nfe_mean) : "nan") << ","
                << fmt(rep.sr) << "\n";
    for (const auto& [generation, cv] : result.cv_by_generation) {
      cv_csv << cell.problem << "," << cell.mechanism << "," << cell.run << ","
             << generation << "," << fmt(cv) << "\n";
    }
    for (const auto& period : rep.periods) {
      nfe_csv << cell.problem << "," << cell.mechanism << "," << cell.run
              << "," << period.period << ","
              << (period.reached_vtr ? std::to_string(period.nfe) : "") << ","
              << (period.reached_vtr ? 1 : 0) << "\n";
    }
  }
  write_file_atomic((out_dir / "metrics.csv").string(), metrics_csv.str());
  write_file_atomic((out_dir / "cv_trajectories.csv").string(), cv_csv.str());
  write_file_atomic((out_dir / "nfe_boxplot.csv").string(), nfe_csv.str());

  render_reports(config.out_dir);

  manifest["finished"] = timestamp_utc();
  manifest["cells"] = {{"total", outcome.cells_total},
                       {"failed", outcome.cells_failed}};
  auto& failures = manifest["failures"] = nlohmann::json::array();
  for (const auto& failure : outcome.failures) {
    failures.push_back({{"problem", failure.problem},
                        {"mechanism", failure.mechanism},
                        {"run", failure.run},
                        {"error", failure.error}});
  }
  write_file_atomic((out_dir / "manifest.json").string(), manifest.dump(2));
  return outcome;
}

}  // namespace dcop
