#include "de_engine.hpp"

#include <algorithm>
#include <cmath>

#include "diversity.hpp"
#include "metrics.hpp"

namespace dcop {

void DEConfig::validate() const {
  if (population_size < 4) {
    throw ConfigError("rand/1 mutation needs a population of at least 4");
  }
  if (crossover_rate < 0.0 || crossover_rate > 1.0) {
    throw ConfigError("crossover rate must lie in [0,1]");
  }
  if (!(scale_factor_min > 0.0) || scale_factor_max > 2.0 ||
      scale_factor_min > scale_factor_max) {
    throw ConfigError("scale factor range must lie within (0,2]");
  }
}

bool feasibility_better(const Evaluation& a, const Evaluation& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return a.objective <= b.objective;
  return a.total_violation <= b.total_violation;
}

int best_index(const Population& pop) {
  int best = 0;
  for (int i = 1; i < pop.size(); ++i) {
    if (strictly_better(pop.members[i].eval, pop.members[best].eval)) {
      best = i;
    }
  }
  return best;
}

std::vector<double> mutate_rand1(const Population& pop, int target_index,
                                 double scale_factor, std::mt19937_64& rng) {
  const int np = pop.size();
  if (np < 4) {
    throw ConfigError("rand/1 mutation needs a population of at least 4");
  }
  std::uniform_int_distribution<int> pick(0, np - 1);
  int r0 = target_index, r1 = target_index, r2 = target_index;
  while (r0 == target_index) r0 = pick(rng);
  while (r1 == target_index || r1 == r0) r1 = pick(rng);
  while (r2 == target_index || r2 == r0 || r2 == r1) r2 = pick(rng);

  const auto& base = pop.members[r0].position;
  const auto& d1 = pop.members[r1].position;
  const auto& d2 = pop.members[r2].position;
  std::vector<double> mutant(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    mutant[i] = base[i] + scale_factor * (d1[i] - d2[i]);
  }
  return mutant;
}

std::vector<double> crossover_bin(const std::vector<double>& target,
                                  const std::vector<double>& mutant,
                                  double crossover_rate,
                                  std::mt19937_64& rng) {
  if (target.size() != mutant.size()) {
    throw ConfigError("crossover requires vectors of equal length");
  }
  const int d = static_cast<int>(target.size());
  std::uniform_int_distribution<int> pick_forced(0, d - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int forced = pick_forced(rng);
  std::vector<double> trial(target);
  for (int i = 0; i < d; ++i) {
    const double u = unit(rng);
    if (u < crossover_rate || i == forced) trial[i] = mutant[i];
  }
  return trial;
}

std::vector<double> repair_bounds(std::vector<double> x,
                                  const SearchSpace& space) {
  for (int i = 0; i < space.dimension(); ++i) {
    x[i] = std::clamp(x[i], space.lower[i], space.upper[i]);
  }
  return x;
}

namespace {

bool evaluation_differs(const Evaluation& a, const Evaluation& b) {
  constexpr double tol = 1e-12;
  if (std::abs(a.objective - b.objective) > tol) return true;
  if (a.violations.size() != b.violations.size()) return true;
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    if (std::abs(a.violations[i] - b.violations[i]) > tol) return true;
  }
  return false;
}

}  // namespace

bool detect_change(Population& pop, const Problem& problem,
                   EnvironmentState& env) {
  if (pop.size() == 0) throw ConfigError("change detection needs a population");
  const int sentinels[2] = {0, pop.size() / 2};
  bool changed = false;
  for (int s = 0; s < 2; ++s) {
    const int idx = sentinels[s];
    if (s == 1 && idx == sentinels[0]) break;
    Individual& member = pop.members[idx];
    const int t = env.time_index();
    const Evaluation fresh = evaluate(problem, member.position, env);
    if (evaluation_differs(fresh, member.eval)) changed = true;
    member.eval = fresh;
    member.evaluated_at = t;
  }
  return changed;
}

void reevaluate_population(Population& pop, const Problem& problem,
                           EnvironmentState& env) {
  for (auto& member : pop.members) {
    const int t = env.time_index();
    member.eval = evaluate(problem, member.position, env);
    member.evaluated_at = t;
  }
}

GenerationRecord make_record(const Population& pop,
                             const EnvironmentState& env, int period) {
  const Individual& best = pop.members[best_index(pop)];
  GenerationRecord rec;
  rec.generation = pop.generation;
  rec.eval_count = env.eval_count();
  rec.period = period;
  rec.best_objective = best.eval.objective;
  rec.best_feasible = best.eval.feasible;
  rec.best_total_violation = best.eval.total_violation;
  rec.cv = population_cv(pop);
  return rec;
}

GenerationRecord step_generation(Population& pop, DiversityMechanism& mech,
                                 const Problem& problem, EnvironmentState& env,
                                 const DEConfig& config, std::mt19937_64& rng) {
  if (env.exhausted()) {
    throw BudgetExhausted("no budget left at generation start");
  }
  if (detect_change(pop, problem, env)) {
    mech.on_change(pop, problem, env);
    reevaluate_population(pop, problem, env);
  }
  const int period = env.time_index();

  std::uniform_real_distribution<double> scale(config.scale_factor_min,
                                               config.scale_factor_max);
  for (int i = 0; i < pop.size(); ++i) {
    const double f = scale(rng);
    auto mutant = mutate_rand1(pop, i, f, rng);
    auto trial_x = repair_bounds(
        crossover_bin(pop.members[i].position, mutant, config.crossover_rate,
                      rng),
        problem.space());
    const int t = env.time_index();
    Individual trial{std::move(trial_x), {}, t};
    trial.eval = evaluate(problem, trial.position, env);
    const int slot = mech.replacement_target(trial, i, pop);
    if (strictly_better(trial.eval, pop.members[slot].eval)) {
      pop.members[slot] = std::move(trial);
    }
  }

  mech.post_generation(pop, problem, env, rng);
  ++pop.generation;
  return make_record(pop, env, period);
}

}  // namespace dcop
