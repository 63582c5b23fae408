#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "metrics.hpp"

using namespace dcop;

namespace {

// Synthetic trace helpers: one record per generation, feasible bests.
GenerationRecord rec(long gen, long evals, int period, double best_f,
                     bool feasible = true, double violation = 0.0) {
  GenerationRecord r;
  r.generation = gen;
  r.eval_count = evals;
  r.period = period;
  r.best_objective = best_f;
  r.best_feasible = feasible;
  r.best_total_violation = violation;
  r.cv = 0.0;
  return r;
}

ReferenceOptima flat_optima(int periods, double f_star) {
  ReferenceOptima optima;
  optima.grid_resolution = 0;
  for (int t = 0; t < periods; ++t) {
    optima.per_period.push_back(PeriodOptimum{{0.0, 0.0}, f_star});
  }
  return optima;
}

}  // namespace

TEST_CASE("population cv basics") {
  using Positions = std::vector<std::vector<double>>;
  CHECK(population_cv(Positions{{1.0}, {3.0}}) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(population_cv(Positions{{2.0, 5.0}, {2.0, 5.0}, {2.0, 5.0}}) == 0.0);
  // two dimensions add their per-dimension scores
  const double one_dim = population_cv(Positions{{1.0}, {3.0}});
  CHECK(population_cv(Positions{{1.0, 1.0}, {3.0, 3.0}}) ==
        doctest::Approx(2.0 * one_dim).epsilon(1e-15));
}

TEST_CASE("population cv near-zero-mean sentinel") {
  using Positions = std::vector<std::vector<double>>;
  // mean 0 with spread: ratio floored at 1e-12 and capped at 10 per dim
  CHECK(population_cv(Positions{{-1.0}, {1.0}}) == 10.0);
  CHECK(population_cv(Positions{{0.0}, {0.0}}) == 0.0);
}

TEST_CASE("population cv is scale invariant and translation sensitive") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 4.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::vector<double>> base;
    for (int m = 0; m < 8; ++m) base.push_back({u(rng), u(rng)});
    // powers of two scale exactly in floating point
    for (double c : {2.0, 0.5, 4.0}) {
      auto scaled = base;
      for (auto& x : scaled)
        for (auto& v : x) v *= c;
      CHECK(population_cv(scaled) == population_cv(base));
    }
    auto shifted = base;
    for (auto& x : shifted)
      for (auto& v : x) v += 1.0;
    CHECK(population_cv(shifted) != population_cv(base));
  }
}

TEST_CASE("mof averages per-generation errors") {
  const ReferenceOptima optima = flat_optima(1, -5.0);
  RunTrace trace;
  trace.records = {rec(0, 22, 0, -4.0), rec(1, 44, 0, -4.5),
                   rec(2, 66, 0, -5.0)};
  CHECK(mof(trace, optima) == doctest::Approx((1.0 + 0.5 + 0.0) / 3.0));
}

TEST_CASE("mof is zero when the best equals the optimum throughout") {
  const ReferenceOptima optima = flat_optima(2, -7.0);
  RunTrace trace;
  trace.records = {rec(0, 22, 0, -7.0), rec(1, 44, 0, -7.0),
                   rec(2, 1022, 1, -7.0)};
  CHECK(mof(trace, optima) == 0.0);
}

TEST_CASE("mof uses the best-so-far within each period and resets at changes") {
  const ReferenceOptima optima = flat_optima(2, -5.0);
  RunTrace trace;
  // period 0: improves to the optimum; period 1: starts bad again
  trace.records = {rec(0, 22, 0, -4.0), rec(1, 44, 0, -5.0),
                   rec(2, 1022, 1, -3.0), rec(3, 1044, 1, -3.5)};
  // errors: 1.0, 0.0 | 2.0, 1.5
  CHECK(mof(trace, optima) == doctest::Approx((1.0 + 0.0 + 2.0 + 1.5) / 4.0));
  // within a period a worse later generation cannot raise the error
  trace.records = {rec(0, 22, 0, -5.0), rec(1, 44, 0, -3.0)};
  CHECK(mof(trace, optima) == 0.0);
}

TEST_CASE("tracking error means the end-of-period gaps") {
  const ReferenceOptima optima = flat_optima(10, -2.0);
  RunTrace trace;
  long evals = 0;
  for (int t = 0; t < 10; ++t) {
    trace.records.push_back(rec(2 * t, evals += 22, t, -1.0));
    trace.records.push_back(rec(2 * t + 1, evals += 22, t, -1.7));
  }
  CHECK(tracking_error(trace, optima) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("tracking error is zero when every period ends at the optimum") {
  const ReferenceOptima optima = flat_optima(3, -7.0);
  RunTrace trace;
  trace.records = {rec(0, 22, 0, -6.0), rec(1, 44, 0, -7.0),
                   rec(2, 1022, 1, -7.0), rec(3, 2022, 2, -7.0)};
  CHECK(tracking_error(trace, optima) == 0.0);
}

TEST_CASE("end-of-period error never exceeds the period's mean error") {
  // For elitist (non-increasing error) traces: final <= mean, per period.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const ReferenceOptima optima = flat_optima(1, 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    RunTrace trace;
    double error = 2.0 + u(rng);
    for (int g = 0; g < 30; ++g) {
      error = std::max(0.0, error - u(rng) * 0.2);
      trace.records.push_back(rec(g, 22 * (g + 1), 0, -error));
    }
    const double mean_error = mof(trace, optima);
    const double final_error = tracking_error(trace, optima);
    CHECK(final_error <= mean_error + 1e-12);
  }
}

TEST_CASE("nfe and success rate by the value-to-reach rule") {
  const DynamicParams dyn;  // fc = 1000, 10 periods
  const ReferenceOptima optima = flat_optima(10, -10.0);
  RunTrace trace;
  for (int t = 0; t < 10; ++t) {
    const long start = 1000L * t;
    // first generation of the period: error 15% (not reached)
    trace.records.push_back(rec(3 * t, start + 42, t, -8.5));
    // second: error 5% -> reached with nfe = 64
    trace.records.push_back(rec(3 * t + 1, start + 64, t, -9.5));
    trace.records.push_back(rec(3 * t + 2, start + 86, t, -9.9));
  }
  const auto [nfe_mean, sr] = nfe_and_success(trace, optima, dyn, 0.10);
  CHECK(sr == 1.0);
  CHECK(nfe_mean == doctest::Approx(64.0));
  // tighter epsilon: third generation, nfe = 86
  const auto [nfe_tight, sr_tight] = nfe_and_success(trace, optima, dyn, 0.02);
  CHECK(sr_tight == 1.0);
  CHECK(nfe_tight == doctest::Approx(86.0));
}

TEST_CASE("periods that never reach the threshold are excluded") {
  const DynamicParams dyn;
  ReferenceOptima optima = flat_optima(10, -10.0);
  RunTrace trace;
  for (int t = 0; t < 10; ++t) {
    const double best = t < 4 ? -9.95 : -5.0;  // periods 4..9 stay far
    trace.records.push_back(rec(t, 1000L * t + 50, t, best));
  }
  const auto [nfe_mean, sr] = nfe_and_success(trace, optima, dyn, 0.10);
  CHECK(sr == doctest::Approx(0.4));
  CHECK(nfe_mean == doctest::Approx(50.0));

  const MetricsReport report = compute_metrics(trace, optima, dyn, 0.10);
  CHECK(report.sr == doctest::Approx(0.4));
  CHECK(report.nfe_defined);
  // nothing reached: undefined mean
  RunTrace never;
  never.records = {rec(0, 50, 0, -1.0)};
  const MetricsReport none = compute_metrics(never, optima, dyn, 0.10);
  CHECK(!none.nfe_defined);
  CHECK(std::isnan(none.nfe_mean));
  CHECK(none.te_truncated);
}

TEST_CASE("success is monotone in epsilon") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10.0, -6.0);
  const DynamicParams dyn;
  const ReferenceOptima optima = flat_optima(10, -10.0);
  for (int trial = 0; trial < 100; ++trial) {
    RunTrace trace;
    for (int t = 0; t < 10; ++t) {
      trace.records.push_back(rec(t, 1000L * t + 40, t, u(rng)));
    }
    const auto [nfe_10, sr_10] = nfe_and_success(trace, optima, dyn, 0.10);
    const auto [nfe_20, sr_20] = nfe_and_success(trace, optima, dyn, 0.20);
    CHECK(sr_20 >= sr_10);
  }
}

TEST_CASE("degenerate optimum periods count as reached immediately") {
  const DynamicParams dyn;
  ReferenceOptima optima = flat_optima(1, 0.0);  // |f*| below the 1e-12 floor
  RunTrace trace;
  trace.records = {rec(0, 42, 0, 0.0)};
  const auto [nfe_mean, sr] = nfe_and_success(trace, optima, dyn, 0.10);
  CHECK(sr == doctest::Approx(0.1));
  CHECK(nfe_mean == doctest::Approx(42.0));
}

TEST_CASE("infeasible bests still carry objective error into mof") {
  ReferenceOptima optima = flat_optima(1, -5.0);
  RunTrace trace;
  trace.records = {rec(0, 22, 0, -2.0, false, 0.7),
                   rec(1, 44, 0, -1.0, false, 0.2)};
  // violation improved, so the best-so-far follows the second record
  CHECK(mof(trace, optima) == doctest::Approx((3.0 + 4.0) / 2.0));
}

TEST_CASE("sr color bands follow the 20/50/80 thresholds") {
  CHECK(std::string(sr_band(0.0)) == "dark-red");
  CHECK(std::string(sr_band(0.19)) == "dark-red");
  CHECK(std::string(sr_band(0.2)) == "purple");
  CHECK(std::string(sr_band(0.49)) == "purple");
  CHECK(std::string(sr_band(0.5)) == "blue");
  CHECK(std::string(sr_band(0.79)) == "blue");
  CHECK(std::string(sr_band(0.8)) == "dark-green");
  CHECK(std::string(sr_band(1.0)) == "dark-green");
}

TEST_CASE("metric computations are pure") {
  const ReferenceOptima optima = flat_optima(2, -3.0);
  RunTrace trace;
  trace.records = {rec(0, 22, 0, -2.0), rec(1, 1022, 1, -2.5)};
  const DynamicParams dyn;
  const MetricsReport a = compute_metrics(trace, optima, dyn, 0.10);
  const MetricsReport b = compute_metrics(trace, optima, dyn, 0.10);
  CHECK(a.mof == b.mof);
  CHECK(a.te == b.te);
  CHECK(a.sr == b.sr);
}
