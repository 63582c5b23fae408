#ifndef DCOPLAB_DE_ENGINE_HPP
#define DCOPLAB_DE_ENGINE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "problems.hpp"

namespace dcop {

class DiversityMechanism;

/// DE rand/1/bin parameters. The scale factor F is redrawn uniformly from
/// [scale_factor_min, scale_factor_max] for every mutation.
struct DEConfig {
  int population_size = 20;
  double crossover_rate = 0.2;
  double scale_factor_min = 0.2;
  double scale_factor_max = 0.8;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct Individual {
  std::vector<double> position;
  Evaluation eval;
  int evaluated_at = 0;
};

struct Population {
  std::vector<Individual> members;
  long generation = 0;

  int size() const { return static_cast<int>(members.size()); }
};

/// Deb's feasibility rules as a weak preference: returns true iff a is at
/// least as good as b (feasible beats infeasible; feasible pairs compare
/// objective, infeasible pairs compare total violation; exact ties prefer a).
bool feasibility_better(const Evaluation& a, const Evaluation& b);

/// Strict version used for replacement decisions: the challenger must win
/// outright, so exact ties keep the incumbent.
inline bool strictly_better(const Evaluation& challenger,
                            const Evaluation& incumbent) {
  return !feasibility_better(incumbent, challenger);
}

/// Index of the population's best member under the feasibility rules
/// (ties resolve to the lowest index).
int best_index(const Population& pop);

/// rand/1 mutant: x_r0 + F * (x_r1 - x_r2) with r0, r1, r2 and the target
/// pairwise distinct, chosen uniformly.
std::vector<double> mutate_rand1(const Population& pop, int target_index,
                                 double scale_factor, std::mt19937_64& rng);

/// Binomial crossover with one uniformly chosen component forced from the
/// mutant.
std::vector<double> crossover_bin(const std::vector<double>& target,
                                  const std::vector<double>& mutant,
                                  double crossover_rate, std::mt19937_64& rng);

/// Projects out-of-bounds components onto the violated bound. In-bounds
/// components pass through unchanged.
std::vector<double> repair_bounds(std::vector<double> x,
                                  const SearchSpace& space);

/// Re-evaluates the sentinels (first and middle member, charging budget) and
/// reports whether either differs from its cached evaluation beyond 1e-12 in
/// objective or any violation component. Sentinel caches are refreshed.
bool detect_change(Population& pop, const Problem& problem,
                   EnvironmentState& env);

/// Refreshes every member's evaluation at the current period (charging one
/// budget unit each). Throws BudgetExhausted if the budget dies mid-way.
void reevaluate_population(Population& pop, const Problem& problem,
                           EnvironmentState& env);

/// One per-generation trace row.
struct GenerationRecord {
  long generation = 0;
  long eval_count = 0;  // cumulative, after this generation
  int period = 0;
  double best_objective = 0.0;
  bool best_feasible = false;
  double best_total_violation = 0.0;
  double cv = 0.0;
};

struct RunTrace {
  std::vector<GenerationRecord> records;
  std::uint64_t seed = 0;
  bool truncated = false;

  long max_generation() const { return static_cast<long>(records.size()); }
};

/// Runs one generation: change detection (with the mechanism's change hook
/// and a full re-evaluation when triggered), the rand/1/bin trial loop with
/// mechanism-delegated replacement, and the mechanism's post-generation
/// action. Throws BudgetExhausted when the budget dies inside the
/// generation; the caller discards the partial generation.
GenerationRecord step_generation(Population& pop, DiversityMechanism& mech,
                                 const Problem& problem, EnvironmentState& env,
                                 const DEConfig& config, std::mt19937_64& rng);

GenerationRecord make_record(const Population& pop, const EnvironmentState& env,
                             int period);

}  // namespace dcop

#endif
