#ifndef DCOPLAB_METRICS_HPP
#define DCOPLAB_METRICS_HPP

#include <optional>
#include <vector>

#include "de_engine.hpp"
#include "oracle.hpp"

namespace dcop {

struct MetricConfig {
  double epsilon_fraction = 0.10;  // 10% value-to-reach

  void validate() const;
};

/// Genotypic diversity score: per dimension sigma_i / |mu_i| over the member
/// positions (population standard deviation), summed across dimensions.
/// Near-zero means use a 1e-12 floor with the per-dimension ratio capped
/// at 10.
double population_cv(const std::vector<std::vector<double>>& positions);
double population_cv(const Population& pop);

/// Per-period digest derived from a trace: the best-so-far at the end of the
/// period and the evaluations consumed before first reaching the
/// value-to-reach threshold.
struct PeriodOutcome {
  int period = 0;
  double end_best_objective = 0.0;
  bool end_best_feasible = false;
  bool reached_vtr = false;
  long nfe = 0;  // valid when reached_vtr
};

struct MetricsReport {
  double mof = 0.0;
  double te = 0.0;
  bool te_truncated = false;  // trace did not cover every period
  double nfe_mean = 0.0;
  bool nfe_defined = false;   // false when no period reached the VTR
  double sr = 0.0;
  std::vector<PeriodOutcome> periods;
};

/// Modified offline error: mean over generations of |f*_t - best-so-far|,
/// with the best-so-far reset at every period boundary.
double mof(const RunTrace& trace, const ReferenceOptima& optima);

/// Tracking error: mean over periods of the end-of-period gap to the
/// optimum. Truncated traces average over the covered periods.
double tracking_error(const RunTrace& trace, const ReferenceOptima& optima);

/// Per-period evaluations to the value-to-reach plus the success rate.
/// Success means relative error |f*-f|/|f*| <= epsilon (degenerate periods
/// with |f*| below 1e-12 count as reached once the absolute gap is below
/// 1e-13, which their landscape guarantees immediately).
std::pair<double, double> nfe_and_success(const RunTrace& trace,
                                          const ReferenceOptima& optima,
                                          const DynamicParams& dynamics,
                                          double epsilon);

MetricsReport compute_metrics(const RunTrace& trace,
                              const ReferenceOptima& optima,
                              const DynamicParams& dynamics, double epsilon);

/// Success-rate color band per the 20/50/80% thresholds.
const char* sr_band(double sr);

}  // namespace dcop

#endif
