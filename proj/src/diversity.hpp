#ifndef DCOPLAB_DIVERSITY_HPP
#define DCOPLAB_DIVERSITY_HPP

#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "de_engine.hpp"

namespace dcop {

/// The six strategies, in the conventional 1..6 reporting order.
enum class MechanismKind {
  CLS,
  Crowding,
  FitnessDiv,
  NoDiv,
  Opposition,
  RandomImmigrants,
};

/// CLI names: cls, crowding, fitnessdiv, nodiv, opp, ri.
MechanismKind parse_mechanism(std::string_view name);
std::string_view mechanism_name(MechanismKind kind);
std::string_view mechanism_label(MechanismKind kind);  // display, e.g. No-div
const std::vector<MechanismKind>& all_mechanisms();

struct MechanismConfig {
  double ri_replacement_rate = 0.10;
  double cls_chaos_seed = 0.37;
  double cls_initial_radius_fraction = 0.2;
  int cls_steps_per_generation = 5;
  double cls_decay = 0.9;

  void validate(int population_size) const;
};

/// Mechanism contract: a replacement decision per trial, a change reaction,
/// and a post-generation action. Hooks never change the population size.
/// One object is created per run and is not shared across threads.
class DiversityMechanism {
 public:
  virtual ~DiversityMechanism() = default;

  virtual MechanismKind kind() const = 0;

  /// Population index the evaluated trial competes against. The engine
  /// replaces that member only when the trial is strictly better under the
  /// feasibility rules.
  virtual int replacement_target(const Individual& trial, int target_index,
                                 const Population& pop) = 0;

  virtual void on_change(Population& pop, const Problem& problem,
                         EnvironmentState& env) {
    (void)pop, (void)problem, (void)env;
  }

  virtual void post_generation(Population& pop, const Problem& problem,
                               EnvironmentState& env, std::mt19937_64& rng) {
    (void)pop, (void)problem, (void)env, (void)rng;
  }
};

std::unique_ptr<DiversityMechanism> make_mechanism(MechanismKind kind,
                                                   const MechanismConfig& cfg);

/// Index of the member nearest to the trial in decision space (Euclidean);
/// ties break to the lowest index.
int crowding_replacement(const Individual& trial, const Population& pop);

/// Index of the member with the closest raw objective value; ties break to
/// the lowest index.
int fitnessdiv_replacement(const Individual& trial, const Population& pop);

/// Logistic map at the fully chaotic parameter: 4 z (1 - z).
/// Throws DomainError outside (0,1).
double chaos_step(double z);

/// Componentwise reflection through the box centre: L + U - x.
std::vector<double> opposite_point(const std::vector<double>& x,
                                   const SearchSpace& space);

}  // namespace dcop

#endif
