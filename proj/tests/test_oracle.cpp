#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracle.hpp"

using namespace dcop;
namespace fs = std::filesystem;

namespace {

// Independent global oracle: pure random search over the box keeping the
// best feasible point, then the shared local polish. No grids involved.
PeriodOptimum random_search_optimum(const Problem& problem, int period,
                                    long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& space = problem.space();
  std::uniform_real_distribution<double> u1(space.lower[0], space.upper[0]);
  std::uniform_real_distribution<double> u2(space.lower[1], space.upper[1]);
  bool have = false;
  double best_f = 0.0;
  std::vector<double> best_x(2);
  std::vector<double> x(2);
  for (long i = 0; i < samples; ++i) {
    x[0] = u1(rng);
    x[1] = u2(rng);
    const Evaluation eval = problem.evaluate_at(x, period);
    if (eval.feasible && (!have || eval.objective < best_f)) {
      have = true;
      best_f = eval.objective;
      best_x = x;
    }
  }
  REQUIRE(have);
  return refine_local(problem, period, best_x, 1e-3);
}

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("fixed unconstrained instance has identical optima every period") {
  const Problem problem = make_instance("G24_uf");
  const ReferenceOptima optima = compute_reference_optima(problem, 501);
  REQUIRE(optima.per_period.size() == 10);
  for (const auto& opt : optima.per_period) {
    CHECK(opt.f_star == -7.0);
    CHECK(opt.x[0] == 3.0);
    CHECK(opt.x[1] == 4.0);
  }
}

TEST_CASE("grid oracle agrees with an independent random-search oracle") {
  const Problem problem = make_instance("G24_f");
  const ReferenceOptima grid = compute_reference_optima(problem, 501);
  const PeriodOptimum rs = random_search_optimum(problem, 0, 10000000, 2024);
  CHECK(std::abs(grid.at(0).f_star - rs.f_star) < 1e-4);
}

TEST_CASE("doubling the resolution moves optima by less than 1e-3") {
  for (const char* id : {"G24_7", "G24_3", "G24v_3", "G24_6b", "G24_8b"}) {
    CAPTURE(id);
    const Problem problem = make_instance(id);
    const ReferenceOptima coarse = compute_reference_optima(problem, 501);
    const ReferenceOptima fine = compute_reference_optima(problem, 1001);
    for (int t = 0; t < 10; ++t) {
      CHECK(std::abs(coarse.at(t).f_star - fine.at(t).f_star) < 1e-3);
    }
  }
}

TEST_CASE("every reference optimum is feasible at its period") {
  for (const auto& id : instance_ids()) {
    CAPTURE(id);
    const Problem problem = make_instance(id);
    const ReferenceOptima optima = compute_reference_optima(problem, 301);
    for (int t = 0; t < 10; ++t) {
      const Evaluation eval = problem.evaluate_at(optima.at(t).x, t);
      CHECK(eval.feasible);
      CHECK(eval.objective == optima.at(t).f_star);
    }
  }
}

TEST_CASE("an always-infeasible instance reports the offending period") {
  SearchSpace space{{0.0, 0.0}, {1.0, 1.0}};
  Problem impossible(
      "impossible", space, DynamicParams{},
      [](std::span<const double>, int) { return 0.0; },
      {[](std::span<const double>, int) { return 1.0; }}, {});
  CHECK_THROWS_AS(compute_reference_optima(impossible, 51), InfeasiblePeriod);
}

TEST_CASE("optima table round-trips through CSV") {
  OptimaTable table;
  table["G24_uf"] = compute_reference_optima(make_instance("G24_uf"), 101);
  table["G24_7"] = compute_reference_optima(make_instance("G24_7"), 101);
  const auto path = temp_file("dcoplab_test_optima.csv");
  write_optima_table(table, path.string());

  const OptimaTable loaded = read_optima_table(path.string());
  REQUIRE(loaded.size() == 2);
  for (const auto& [id, optima] : table) {
    REQUIRE(loaded.count(id) == 1);
    const auto& back = loaded.at(id);
    REQUIRE(back.per_period.size() == optima.per_period.size());
    for (std::size_t t = 0; t < optima.per_period.size(); ++t) {
      CHECK(back.per_period[t].f_star ==
            doctest::Approx(optima.per_period[t].f_star).epsilon(1e-10));
      CHECK(back.per_period[t].x[0] ==
            doctest::Approx(optima.per_period[t].x[0]).epsilon(1e-10));
    }
  }
  fs::remove(path);
}

TEST_CASE("reading a malformed table fails loudly") {
  const auto path = temp_file("dcoplab_bad_optima.csv");
  {
    std::ofstream out(path);
    out << "something,else\n";
  }
  CHECK_THROWS_AS(read_optima_table(path.string()), IoError);
  fs::remove(path);
  CHECK_THROWS_AS(read_optima_table(path.string()), IoError);
}

TEST_CASE("checksum changes iff the table content changes") {
  const auto path = temp_file("dcoplab_checksum.csv");
  {
    std::ofstream out(path, std::ios::binary);
    out << "instance,period,x1,x2,f_star\nG24_uf,0,3,4,-7\n";
  }
  const std::string first = file_checksum(path.string());
  {
    std::ofstream out(path, std::ios::binary);
    out << "instance,period,x1,x2,f_star\nG24_uf,0,3,4,-7\n";
  }
  CHECK(file_checksum(path.string()) == first);
  {
    std::ofstream out(path, std::ios::binary);
    out << "instance,period,x1,x2,f_star\nG24_uf,0,3,4,-6.9\n";
  }
  CHECK(file_checksum(path.string()) != first);
  fs::remove(path);
}
