#include "runner.hpp"

#include <cstdio>
#include <fstream>

namespace dcop {

RunTrace run_single(const Problem& problem, MechanismKind mechanism,
                    const MechanismConfig& mechanism_config,
                    const DEConfig& de) {
  de.validate();
  mechanism_config.validate(de.population_size);
  const DynamicParams& dynamics = problem.dynamics();
  if (dynamics.change_frequency < de.population_size) {
    throw ConfigError(
        "change frequency must cover at least one generation (f_c >= np)");
  }

  std::mt19937_64 rng(de.rng_seed);
  EnvironmentState env(dynamics);
  auto mech = make_mechanism(mechanism, mechanism_config);

  const auto& space = problem.space();
  Population pop;
  pop.members.reserve(de.population_size);
  for (int i = 0; i < de.population_size; ++i) {
    std::vector<double> x(space.dimension());
    for (int d = 0; d < space.dimension(); ++d) {
      std::uniform_real_distribution<double> axis(space.lower[d],
                                                  space.upper[d]);
      x[d] = axis(rng);
    }
    Individual member{std::move(x), {}, env.time_index()};
    member.eval = evaluate(problem, member.position, env);
    pop.members.push_back(std::move(member));
  }

  RunTrace trace;
  trace.seed = de.rng_seed;
  while (!env.exhausted()) {
    try {
      trace.records.push_back(
          step_generation(pop, *mech, problem, env, de, rng));
    } catch (const BudgetExhausted&) {
      break;  // partial generation discarded
    }
  }
  trace.truncated = trace.records.empty() ||
                    trace.records.back().period != dynamics.num_periods - 1;
  return trace;
}

void write_trace_csv(const RunTrace& trace, int run_index,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open trace file for writing: " + path);
  char line[256];
  std::snprintf(line, sizeof(line), "# seed=%llu\n",
                static_cast<unsigned long long>(trace.seed));
  out << line;
  out << "run,generation,eval_count,period,best_f,best_feasible,"
         "total_violation_best,cv\n";
  for (const auto& rec : trace.records) {
    std::snprintf(line, sizeof(line), "%d,%ld,%ld,%d,%.12g,%d,%.12g,%.12g\n",
                  run_index, rec.generation, rec.eval_count, rec.period,
                  rec.best_objective, rec.best_feasible ? 1 : 0,
                  rec.best_total_violation, rec.cv);
    out << line;
  }
  if (!out) throw IoError("failed writing trace file: " + path);
}

}  // namespace dcop
