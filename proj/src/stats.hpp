#ifndef DCOPLAB_STATS_HPP
#define DCOPLAB_STATS_HPP

#include <string>
#include <vector>

namespace dcop {

/// Per-mechanism observation vectors (MOF values) for one problem.
/// Group order is the caller's reporting order.
using SampleSet = std::vector<std::vector<double>>;

struct KWResult {
  double h = 0.0;
  double p = 1.0;
};

/// Kruskal-Wallis omnibus test with midrank ties and tie-corrected H;
/// p from the chi-square distribution with (groups - 1) degrees of freedom.
/// All-identical observations give H = 0, p = 1.
KWResult kruskal_wallis(const SampleSet& samples);

struct PairwiseResult {
  int worse = 0;   // group index whose values rank higher (worse when
  int better = 0;  // minimizing)
  double z = 0.0;
  double p_corrected = 1.0;
  bool significant = false;
};

struct ComparisonReport {
  double h_statistic = 0.0;
  double p_omnibus = 1.0;
  bool omnibus_significant = false;
  std::vector<PairwiseResult> pairs;  // every pair, with its verdict

  /// The significant "worse > better" relations only.
  std::vector<std::pair<int, int>> ordered_pairs() const;
};

/// Dunn-style pairwise comparison on the joint Kruskal-Wallis ranks at
/// Bonferroni-corrected level alpha / (number of pairs). Relations are only
/// flagged significant when the omnibus test rejects at alpha.
ComparisonReport bonferroni_posthoc(const SampleSet& samples,
                                    double alpha = 0.05);

/// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi_square_sf(double x, int df);

/// Upper tail of the standard normal.
double normal_sf(double z);

}  // namespace dcop

#endif
