#include "oracle.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace dcop {

const PeriodOptimum& ReferenceOptima::at(int period) const {
  if (period < 0 || period >= static_cast<int>(per_period.size())) {
    throw ConfigError("reference optima missing period " +
                      std::to_string(period));
  }
  return per_period[period];
}

namespace {

bool better_point(const Evaluation& candidate, bool have_best,
                  double best_f) {
  return candidate.feasible && (!have_best || candidate.objective < best_f);
}

}  // namespace

PeriodOptimum refine_local(const Problem& problem, int period,
                           std::vector<double> start, double initial_step) {
  const auto& space = problem.space();
  const int d = space.dimension();
  if (d != 2) throw ConfigError("local refinement supports 2-D only");
  double best_f = problem.evaluate_at(start, period).objective;
  std::vector<double> point = std::move(start);
  std::vector<double> probe(d);

  // Shrinking 7x7 stencil. The diagonal moves let the search slide along
  // curved constraint boundaries where single-coordinate steps stall.
  constexpr int kArm = 3;
  double scale = initial_step;
  const double min_scale = 1e-10;
  while (scale > min_scale) {
    bool improved = false;
    const double h0 = scale * space.range(0);
    const double h1 = scale * space.range(1);
    for (int i = -kArm; i <= kArm; ++i) {
      for (int j = -kArm; j <= kArm; ++j) {
        if (i == 0 && j == 0) continue;
        probe[0] = std::clamp(point[0] + i * h0, space.lower[0],
                              space.upper[0]);
        probe[1] = std::clamp(point[1] + j * h1, space.lower[1],
                              space.upper[1]);
        const Evaluation eval = problem.evaluate_at(probe, period);
        if (eval.feasible && eval.objective < best_f) {
          best_f = eval.objective;
          point = probe;
          improved = true;
        }
      }
    }
    if (!improved) scale *= 0.5;
  }
  return PeriodOptimum{point, best_f};
}

ReferenceOptima compute_reference_optima(const Problem& problem,
                                         int grid_resolution) {
  if (grid_resolution < 2) {
    throw ConfigError("grid resolution must be at least 2 points per axis");
  }
  const auto& space = problem.space();
  if (space.dimension() != 2) {
    throw ConfigError("grid oracle supports two-dimensional instances only");
  }

  ReferenceOptima result;
  result.grid_resolution = grid_resolution;
  const int n = grid_resolution;
  const double cell0 = space.range(0) / (n - 1);
  const double cell1 = space.range(1) / (n - 1);

  std::vector<double> axis0(n), axis1(n);
  for (int i = 0; i < n; ++i) {
    axis0[i] = space.lower[0] + cell0 * i;
    axis1[i] = space.lower[1] + cell1 * i;
  }
  axis0.back() = space.upper[0];
  axis1.back() = space.upper[1];

  std::vector<double> x(2);
  for (int t = 0; t < problem.dynamics().num_periods; ++t) {
    bool have_best = false;
    double best_f = 0.0;
    std::vector<double> best_x(2);
    for (int i = 0; i < n; ++i) {
      x[0] = axis0[i];
      for (int j = 0; j < n; ++j) {
        x[1] = axis1[j];
        const Evaluation eval = problem.evaluate_at(x, t);
        if (better_point(eval, have_best, best_f)) {
          have_best = true;
          best_f = eval.objective;
          best_x = x;
        }
      }
    }
    if (!have_best) throw InfeasiblePeriod(problem.id(), t);
    const double step =
        std::max(cell0 / space.range(0), cell1 / space.range(1));
    result.per_period.push_back(refine_local(problem, t, best_x, step));
  }
  return result;
}

void write_optima_table(const OptimaTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open optima table for writing: " + path);
  out << "instance,period,x1,x2,f_star\n";
  char line[160];
  for (const auto& [id, optima] : table) {
    for (std::size_t t = 0; t < optima.per_period.size(); ++t) {
      const auto& opt = optima.per_period[t];
      std::snprintf(line, sizeof(line), "%s,%zu,%.12g,%.12g,%.12g\n",
                    id.c_str(), t, opt.x[0], opt.x[1], opt.f_star);
      out << line;
    }
  }
  if (!out) throw IoError("failed writing optima table: " + path);
}

OptimaTable read_optima_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open optima table: " + path);
  std::string header;
  std::getline(in, header);
  if (header != "instance,period,x1,x2,f_star") {
    throw IoError("optima table has unexpected header: " + path);
  }
  OptimaTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id, period, x1, x2, f;
    if (!std::getline(fields, id, ',') || !std::getline(fields, period, ',') ||
        !std::getline(fields, x1, ',') || !std::getline(fields, x2, ',') ||
        !std::getline(fields, f)) {
      throw IoError("malformed optima table row: " + line);
    }
    const int t = std::stoi(period);
    auto& optima = table[id];
    if (static_cast<int>(optima.per_period.size()) != t) {
      throw IoError("optima table periods out of order for " + id);
    }
    optima.per_period.push_back(
        PeriodOptimum{{std::stod(x1), std::stod(x2)}, std::stod(f)});
  }
  return table;
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for checksum: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[1 << 14];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016" PRIx64, hash);
  return std::string(hex);
}

}  // namespace dcop
