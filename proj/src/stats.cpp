#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "errors.hpp"

namespace dcop {
namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction
// (x >= a+1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

struct RankedSamples {
  std::vector<double> mean_rank;  // per group
  std::vector<long> sizes;        // per group
  long total = 0;
  double tie_sum = 0.0;  // sum of (t^3 - t) over tie groups
};

RankedSamples joint_midranks(const SampleSet& samples) {
  RankedSamples out;
  out.sizes.reserve(samples.size());
  std::vector<std::pair<double, int>> all;  // value, group
  for (std::size_t g = 0; g < samples.size(); ++g) {
    out.sizes.push_back(static_cast<long>(samples[g].size()));
    for (double v : samples[g]) all.emplace_back(v, static_cast<int>(g));
  }
  out.total = static_cast<long>(all.size());
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> rank_sum(samples.size(), 0.0);
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double tied = static_cast<double>(j - i);
    // midrank of positions i..j-1 (1-based ranks)
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) rank_sum[all[k].second] += rank;
    if (tied > 1.0) out.tie_sum += tied * tied * tied - tied;
    i = j;
  }
  out.mean_rank.resize(samples.size());
  for (std::size_t g = 0; g < samples.size(); ++g) {
    out.mean_rank[g] =
        out.sizes[g] > 0 ? rank_sum[g] / static_cast<double>(out.sizes[g]) : 0.0;
  }
  return out;
}

void validate_samples(const SampleSet& samples) {
  if (samples.size() < 2) {
    throw ConfigError("kruskal-wallis needs at least two groups");
  }
  for (const auto& group : samples) {
    if (group.size() < 2) {
      throw ConfigError("kruskal-wallis needs at least two observations per group");
    }
    for (double v : group) {
      if (!std::isfinite(v)) {
        throw ConfigError("kruskal-wallis observations must be finite");
      }
    }
  }
}

}  // namespace

double chi_square_sf(double x, int df) {
  if (df < 1) throw ConfigError("chi-square needs df >= 1");
  if (x <= 0.0) return 1.0;
  const double a = df / 2.0;
  const double half = x / 2.0;
  if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
  return gamma_q_cf(a, half);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

KWResult kruskal_wallis(const SampleSet& samples) {
  validate_samples(samples);
  const RankedSamples ranked = joint_midranks(samples);
  const double n = static_cast<double>(ranked.total);
  const double grand_mean = (n + 1.0) / 2.0;

  double h = 0.0;
  for (std::size_t g = 0; g < samples.size(); ++g) {
    const double diff = ranked.mean_rank[g] - grand_mean;
    h += static_cast<double>(ranked.sizes[g]) * diff * diff;
  }
  h *= 12.0 / (n * (n + 1.0));

  const double tie_correction = 1.0 - ranked.tie_sum / (n * n * n - n);
  if (tie_correction <= 0.0) {
    // Every observation identical: no evidence of any difference.
    return KWResult{0.0, 1.0};
  }
  h /= tie_correction;
  const int df = static_cast<int>(samples.size()) - 1;
  return KWResult{h, chi_square_sf(h, df)};
}

ComparisonReport bonferroni_posthoc(const SampleSet& samples, double alpha) {
  validate_samples(samples);
  const KWResult omnibus = kruskal_wallis(samples);

  ComparisonReport report;
  report.h_statistic = omnibus.h;
  report.p_omnibus = omnibus.p;
  report.omnibus_significant = omnibus.p < alpha;

  const RankedSamples ranked = joint_midranks(samples);
  const double n = static_cast<double>(ranked.total);
  const int k = static_cast<int>(samples.size());
  const int num_pairs = k * (k - 1) / 2;
  // Dunn's rank variance with tie correction.
  const double base_var =
      n * (n + 1.0) / 12.0 - ranked.tie_sum / (12.0 * (n - 1.0));

  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double variance =
          base_var * (1.0 / static_cast<double>(ranked.sizes[i]) +
                      1.0 / static_cast<double>(ranked.sizes[j]));
      PairwiseResult pair;
      const double diff = ranked.mean_rank[i] - ranked.mean_rank[j];
      const double z = variance > 0.0 ? diff / std::sqrt(variance) : 0.0;
      // Higher mean rank = higher MOF = worse under minimization.
      pair.worse = diff >= 0.0 ? i : j;
      pair.better = diff >= 0.0 ? j : i;
      pair.z = std::abs(z);
      const double p_raw = 2.0 * normal_sf(pair.z);
      pair.p_corrected = std::min(1.0, p_raw * num_pairs);
      pair.significant =
          report.omnibus_significant && pair.p_corrected < alpha;
      report.pairs.push_back(pair);
    }
  }
  return report;
}

std::vector<std::pair<int, int>> ComparisonReport::ordered_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& pair : pairs) {
    if (pair.significant) out.emplace_back(pair.worse, pair.better);
  }
  return out;
}

}  // namespace dcop
