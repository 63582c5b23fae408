#include "diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcop {

MechanismKind parse_mechanism(std::string_view name) {
  if (name == "cls") return MechanismKind::CLS;
  if (name == "crowding") return MechanismKind::Crowding;
  if (name == "fitnessdiv") return MechanismKind::FitnessDiv;
  if (name == "nodiv") return MechanismKind::NoDiv;
  if (name == "opp") return MechanismKind::Opposition;
  if (name == "ri") return MechanismKind::RandomImmigrants;
  throw ConfigError("unknown mechanism: " + std::string(name) +
                    " (expected one of nodiv, cls, crowding, fitnessdiv, "
                    "opp, ri)");
}

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::CLS: return "cls";
    case MechanismKind::Crowding: return "crowding";
    case MechanismKind::FitnessDiv: return "fitnessdiv";
    case MechanismKind::NoDiv: return "nodiv";
    case MechanismKind::Opposition: return "opp";
    case MechanismKind::RandomImmigrants: return "ri";
  }
  return "?";
}

std::string_view mechanism_label(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::CLS: return "CLS";
    case MechanismKind::Crowding: return "Crowding";
    case MechanismKind::FitnessDiv: return "Fitnessdiv";
    case MechanismKind::NoDiv: return "No-div";
    case MechanismKind::Opposition: return "Opp";
    case MechanismKind::RandomImmigrants: return "RI";
  }
  return "?";
}

const std::vector<MechanismKind>& all_mechanisms() {
  static const std::vector<MechanismKind> kinds = {
      MechanismKind::CLS,        MechanismKind::Crowding,
      MechanismKind::FitnessDiv, MechanismKind::NoDiv,
      MechanismKind::Opposition, MechanismKind::RandomImmigrants};
  return kinds;
}

void MechanismConfig::validate(int population_size) const {
  if (ri_replacement_rate <= 0.0 || ri_replacement_rate >= 1.0) {
    throw ConfigError("ri.rate must lie in (0,1)");
  }
  if (std::lround(ri_replacement_rate * population_size) < 1) {
    throw ConfigError("ri.rate times population size must round to >= 1");
  }
  const bool degenerate = cls_chaos_seed == 0.25 || cls_chaos_seed == 0.5 ||
                          cls_chaos_seed == 0.75;
  if (cls_chaos_seed <= 0.0 || cls_chaos_seed >= 1.0 || degenerate) {
    throw ConfigError("cls.z0 must lie in (0,1) excluding 0.25, 0.5, 0.75");
  }
  if (cls_initial_radius_fraction <= 0.0) {
    throw ConfigError("cls.radius must be positive");
  }
  if (cls_steps_per_generation < 1) {
    throw ConfigError("cls.steps must be a positive integer");
  }
  if (cls_decay <= 0.0 || cls_decay >= 1.0) {
    throw ConfigError("cls.decay must lie in (0,1)");
  }
}

double chaos_step(double z) {
  if (!(z > 0.0 && z < 1.0)) {
    throw DomainError("chaos orbit left (0,1)");
  }
  return 4.0 * z * (1.0 - z);
}

std::vector<double> opposite_point(const std::vector<double>& x,
                                   const SearchSpace& space) {
  std::vector<double> opp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    opp[i] = space.lower[i] + space.upper[i] - x[i];
  }
  return opp;
}

int crowding_replacement(const Individual& trial, const Population& pop) {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pop.size(); ++i) {
    const auto& pos = pop.members[i].position;
    double d2 = 0.0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      const double d = pos[j] - trial.position[j];
      d2 += d * d;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

int fitnessdiv_replacement(const Individual& trial, const Population& pop) {
  int best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pop.size(); ++i) {
    const double gap =
        std::abs(pop.members[i].eval.objective - trial.eval.objective);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

namespace {

class NoDivMechanism final : public DiversityMechanism {
 public:
  MechanismKind kind() const override { return MechanismKind::NoDiv; }
  int replacement_target(const Individual&, int target_index,
                         const Population&) override {
    return target_index;
  }
};

class CrowdingMechanism final : public DiversityMechanism {
 public:
  MechanismKind kind() const override { return MechanismKind::Crowding; }
  int replacement_target(const Individual& trial, int,
                         const Population& pop) override {
    return crowding_replacement(trial, pop);
  }
};

class FitnessDivMechanism final : public DiversityMechanism {
 public:
  MechanismKind kind() const override { return MechanismKind::FitnessDiv; }
  int replacement_target(const Individual& trial, int,
                         const Population& pop) override {
    return fitnessdiv_replacement(trial, pop);
  }
};

class OppositionMechanism final : public DiversityMechanism {
 public:
  MechanismKind kind() const override { return MechanismKind::Opposition; }
  int replacement_target(const Individual&, int target_index,
                         const Population&) override {
    return target_index;
  }
  void post_generation(Population& pop, const Problem& problem,
                       EnvironmentState& env, std::mt19937_64&) override {
    for (auto& member : pop.members) {
      if (env.exhausted()) return;
      Individual opposite{opposite_point(member.position, problem.space()),
                          {},
                          env.time_index()};
      try {
        opposite.eval = evaluate(problem, opposite.position, env);
      } catch (const BudgetExhausted&) {
        return;
      }
      if (strictly_better(opposite.eval, member.eval)) {
        member = std::move(opposite);
      }
    }
  }
};

class RandomImmigrantsMechanism final : public DiversityMechanism {
 public:
  explicit RandomImmigrantsMechanism(const MechanismConfig& cfg)
      : rate_(cfg.ri_replacement_rate) {}

  MechanismKind kind() const override {
    return MechanismKind::RandomImmigrants;
  }
  int replacement_target(const Individual&, int target_index,
                         const Population&) override {
    return target_index;
  }
  void post_generation(Population& pop, const Problem& problem,
                       EnvironmentState& env, std::mt19937_64& rng) override {
    const int np = pop.size();
    const int count =
        std::max(1, static_cast<int>(std::lround(rate_ * np)));
    const int protected_best = best_index(pop);

    // Partial Fisher-Yates over the non-best indices.
    std::vector<int> candidates;
    candidates.reserve(np - 1);
    for (int i = 0; i < np; ++i) {
      if (i != protected_best) candidates.push_back(i);
    }
    const int immigrants = std::min<int>(count, candidates.size());
    for (int j = 0; j < immigrants; ++j) {
      std::uniform_int_distribution<int> pick(
          j, static_cast<int>(candidates.size()) - 1);
      std::swap(candidates[j], candidates[pick(rng)]);
    }

    const auto& space = problem.space();
    for (int j = 0; j < immigrants; ++j) {
      std::vector<double> x(space.dimension());
      for (int d = 0; d < space.dimension(); ++d) {
        std::uniform_real_distribution<double> axis(space.lower[d],
                                                    space.upper[d]);
        x[d] = axis(rng);
      }
      Individual fresh{std::move(x), {}, env.time_index()};
      try {
        fresh.eval = evaluate(problem, fresh.position, env);
      } catch (const BudgetExhausted&) {
        return;  // partial replacement, then stop
      }
      pop.members[candidates[j]] = std::move(fresh);
    }
  }

 private:
  double rate_;
};

// Chaos local search on the best member only. The proposal box shrinks
// multiplicatively with the generations elapsed since the last detected
// change and snaps back to the initial radius on change.
class ClsMechanism final : public DiversityMechanism {
 public:
  explicit ClsMechanism(const MechanismConfig& cfg)
      : cfg_(cfg), z_(cfg.cls_chaos_seed) {}

  MechanismKind kind() const override { return MechanismKind::CLS; }
  int replacement_target(const Individual&, int target_index,
                         const Population&) override {
    return target_index;
  }
  void on_change(Population&, const Problem&, EnvironmentState&) override {
    generations_since_change_ = 0;
  }
  void post_generation(Population& pop, const Problem& problem,
                       EnvironmentState& env, std::mt19937_64&) override {
    const double radius =
        cfg_.cls_initial_radius_fraction *
        std::pow(cfg_.cls_decay, generations_since_change_);
    ++generations_since_change_;

    const int slot = best_index(pop);
    const auto& space = problem.space();
    for (int step = 0; step < cfg_.cls_steps_per_generation; ++step) {
      if (env.exhausted()) return;
      std::vector<double> y(space.dimension());
      for (int d = 0; d < space.dimension(); ++d) {
        z_ = chaos_step(z_);
        y[d] = pop.members[slot].position[d] +
               radius * (2.0 * z_ - 1.0) * space.range(d);
      }
      Individual candidate{repair_bounds(std::move(y), space),
                           {},
                           env.time_index()};
      try {
        candidate.eval = evaluate(problem, candidate.position, env);
      } catch (const BudgetExhausted&) {
        return;
      }
      if (strictly_better(candidate.eval, pop.members[slot].eval)) {
        pop.members[slot] = std::move(candidate);
      }
    }
  }

 private:
  MechanismConfig cfg_;
  double z_;
  long generations_since_change_ = 0;
};

}  // namespace

std::unique_ptr<DiversityMechanism> make_mechanism(MechanismKind kind,
                                                   const MechanismConfig& cfg) {
  switch (kind) {
    case MechanismKind::NoDiv:
      return std::make_unique<NoDivMechanism>();
    case MechanismKind::CLS:
      return std::make_unique<ClsMechanism>(cfg);
    case MechanismKind::Crowding:
      return std::make_unique<CrowdingMechanism>();
    case MechanismKind::FitnessDiv:
      return std::make_unique<FitnessDivMechanism>();
    case MechanismKind::Opposition:
      return std::make_unique<OppositionMechanism>();
    case MechanismKind::RandomImmigrants:
      return std::make_unique<RandomImmigrantsMechanism>(cfg);
  }
  throw ConfigError("unhandled mechanism kind");
}

}  // namespace dcop
