#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcop {

void MetricConfig::validate() const {
  if (epsilon_fraction <= 0.0 || epsilon_fraction >= 1.0) {
    throw ConfigError("metric.epsilon must lie in (0,1)");
  }
}

double population_cv(const std::vector<std::vector<double>>& positions) {
  if (positions.empty()) throw ConfigError("population_cv needs members");
  const std::size_t n = positions.size();
  const std::size_t dims = positions.front().size();
  double cv = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (const auto& x : positions) mean += x[d];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& x : positions) {
      const double diff = x[d] - mean;
      var += diff * diff;
    }
    const double sigma = std::sqrt(var / static_cast<double>(n));
    const double denom = std::abs(mean);
    if (denom < 1e-12) {
      cv += sigma == 0.0 ? 0.0 : std::min(sigma / 1e-12, 10.0);
    } else {
      cv += sigma / denom;
    }
  }
  return cv;
}

double population_cv(const Population& pop) {
  std::vector<std::vector<double>> positions;
  positions.reserve(pop.members.size());
  for (const auto& m : pop.members) positions.push_back(m.position);
  return population_cv(positions);
}

namespace {

struct BestSoFar {
  double objective = 0.0;
  bool feasible = false;
  double violation = 0.0;
  bool valid = false;

  void reset() { valid = false; }

  void offer(const GenerationRecord& rec) {
    if (!valid) {
      take(rec);
      return;
    }
    // Feasibility-rules ordering on the (objective, feasible, violation)
    // digest carried by the trace.
    if (rec.best_feasible != feasible) {
      if (rec.best_feasible) take(rec);
      return;
    }
    if (feasible) {
      if (rec.best_objective < objective) take(rec);
    } else if (rec.best_total_violation < violation) {
      take(rec);
    }
  }

 private:
  void take(const GenerationRecord& rec) {
    objective = rec.best_objective;
    feasible = rec.best_feasible;
    violation = rec.best_total_violation;
    valid = true;
  }
};

}  // namespace

double mof(const RunTrace& trace, const ReferenceOptima& optima) {
  if (trace.records.empty()) throw ConfigError("mof needs a nonempty trace");
  BestSoFar best;
  int current_period = -1;
  double sum = 0.0;
  for (const auto& rec : trace.records) {
    if (rec.period != current_period) {
      best.reset();
      current_period = rec.period;
    }
    best.offer(rec);
    sum += std::abs(optima.at(rec.period).f_star - best.objective);
  }
  return sum / static_cast<double>(trace.records.size());
}

namespace {

std::vector<PeriodOutcome> period_outcomes(const RunTrace& trace,
                                           const ReferenceOptima& optima,
                                           const DynamicParams& dynamics,
                                           double epsilon) {
  std::vector<PeriodOutcome> out;
  BestSoFar best;
  int current_period = -1;
  for (const auto& rec : trace.records) {
    if (rec.period != current_period) {
      best.reset();
      current_period = rec.period;
      out.push_back(PeriodOutcome{rec.period});
    }
    best.offer(rec);
    PeriodOutcome& period = out.back();
    period.end_best_objective = best.objective;
    period.end_best_feasible = best.feasible;
    if (epsilon > 0.0 && !period.reached_vtr) {
      const double f_star = optima.at(rec.period).f_star;
      const double gap = std::abs(f_star - best.objective);
      const double denom = std::max(std::abs(f_star), 1e-12);
      if (gap / denom <= epsilon) {
        period.reached_vtr = true;
        period.nfe = rec.eval_count -
                     static_cast<long>(rec.period) * dynamics.change_frequency;
      }
    }
  }
  return out;
}

}  // namespace

double tracking_error(const RunTrace& trace, const ReferenceOptima& optima) {
  if (trace.records.empty()) {
    throw ConfigError("tracking error needs a nonempty trace");
  }
  const DynamicParams dummy;  // period windows not needed for TE
  const auto outcomes = period_outcomes(trace, optima, dummy, -1.0);
  double sum = 0.0;
  for (const auto& p : outcomes) {
    sum += std::abs(optima.at(p.period).f_star - p.end_best_objective);
  }
  return sum / static_cast<double>(outcomes.size());
}

std::pair<double, double> nfe_and_success(const RunTrace& trace,
                                          const ReferenceOptima& optima,
                                          const DynamicParams& dynamics,
                                          double epsilon) {
  const auto outcomes = period_outcomes(trace, optima, dynamics, epsilon);
  long reached = 0;
  double nfe_sum = 0.0;
  for (const auto& p : outcomes) {
    if (p.reached_vtr) {
      ++reached;
      nfe_sum += static_cast<double>(p.nfe);
    }
  }
  const double sr =
      static_cast<double>(reached) / static_cast<double>(dynamics.num_periods);
  const double nfe_mean =
      reached > 0 ? nfe_sum / static_cast<double>(reached)
                  : std::numeric_limits<double>::quiet_NaN();
  return {nfe_mean, sr};
}

MetricsReport compute_metrics(const RunTrace& trace,
                              const ReferenceOptima& optima,
                              const DynamicParams& dynamics, double epsilon) {
  MetricsReport report;
  report.mof = mof(trace, optima);
  report.te = tracking_error(trace, optima);
  report.periods = period_outcomes(trace, optima, dynamics, epsilon);
  report.te_truncated =
      static_cast<int>(report.periods.size()) < dynamics.num_periods;

  long reached = 0;
  double nfe_sum = 0.0;
  for (const auto& p : report.periods) {
    if (p.reached_vtr) {
      ++reached;
      nfe_sum += static_cast<double>(p.nfe);
    }
  }
  report.sr =
      static_cast<double>(reached) / static_cast<double>(dynamics.num_periods);
  report.nfe_defined = reached > 0;
  report.nfe_mean =
      reached > 0 ? nfe_sum / static_cast<double>(reached)
                  : std::numeric_limits<double>::quiet_NaN();
  return report;
}

const char* sr_band(double sr) {
  if (sr < 0.2) return "dark-red";
  if (sr < 0.5) return "purple";
  if (sr < 0.8) return "blue";
  return "dark-green";
}

}  // namespace dcop
