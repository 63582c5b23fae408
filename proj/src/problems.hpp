#ifndef DCOPLAB_PROBLEMS_HPP
#define DCOPLAB_PROBLEMS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace dcop {

/// Rectangular search space [lower, upper] per coordinate.
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;

  int dimension() const { return static_cast<int>(lower.size()); }
  bool contains(std::span<const double> x) const;
  double range(int i) const { return upper[i] - lower[i]; }
  void validate() const;
};

/// Severity and schedule of the environment changes.
///
/// A run owns a budget of change_frequency * num_periods evaluations; the
/// problem is static within each window of change_frequency evaluations.
struct DynamicParams {
  double objective_severity_k = 0.5;
  double constraint_severity_s = 20.0;
  int change_frequency = 1000;
  int num_periods = 10;

  void validate() const;
  long total_budget() const {
    return static_cast<long>(change_frequency) * num_periods;
  }
};

/// Result of evaluating objective and constraints at one (x, t).
struct Evaluation {
  double objective = 0.0;
  std::vector<double> violations;  // max(0, g_i); equalities via |h|-eps
  double total_violation = 0.0;
  bool feasible = true;
};

/// One of the 22 dynamic constrained test problems.
///
/// Instances are immutable once built and safe to share across threads.
/// The objective and each constraint are deterministic functions of (x, t).
class Problem {
 public:
  using Fn = std::function<double(std::span<const double>, int)>;

  Problem(std::string id, SearchSpace space, DynamicParams dynamics,
          Fn objective, std::vector<Fn> inequality, std::vector<Fn> equality);

  const std::string& id() const { return id_; }
  const SearchSpace& space() const { return space_; }
  const DynamicParams& dynamics() const { return dynamics_; }
  int dimension() const { return space_.dimension(); }
  int num_inequality() const { return static_cast<int>(inequality_.size()); }
  int num_equality() const { return static_cast<int>(equality_.size()); }
  int num_constraints() const { return num_inequality() + num_equality(); }

  /// Evaluates objective and constraints at time index t. Stateless: no
  /// budget is charged. Throws DomainError for out-of-bounds x or invalid t.
  Evaluation evaluate_at(std::span<const double> x, int t) const;

  /// Objective value only (used by the oracles; same domain checks).
  double objective_at(std::span<const double> x, int t) const;

  static constexpr double kEqualityTolerance = 1e-4;

 private:
  std::string id_;
  SearchSpace space_;
  DynamicParams dynamics_;
  Fn objective_;
  std::vector<Fn> inequality_;
  std::vector<Fn> equality_;
};

/// Mutable per-run evaluation accounting. Confined to one run's thread.
///
/// time_index() == floor(eval_count / change_frequency); an evaluation is
/// charged at the index current *before* the increment, so evaluations
/// [m*f_c, (m+1)*f_c) all see period m.
class EnvironmentState {
 public:
  explicit EnvironmentState(const DynamicParams& dynamics)
      : dynamics_(dynamics) {}

  long eval_count() const { return eval_count_; }
  int time_index() const {
    return static_cast<int>(eval_count_ / dynamics_.change_frequency);
  }
  long remaining() const { return dynamics_.total_budget() - eval_count_; }
  bool exhausted() const { return remaining() <= 0; }

  /// Consumes one evaluation; returns the period it was charged against.
  /// Throws BudgetExhausted when the budget is already spent.
  int charge();

 private:
  DynamicParams dynamics_;
  long eval_count_ = 0;
};

/// Budget-charging evaluation: the only path a solver may use.
Evaluation evaluate(const Problem& problem, std::span<const double> x,
                    EnvironmentState& env);

/// Monte-Carlo estimate of the feasible fraction of the box at period t.
/// Unconstrained instances return exactly 1.0 without sampling.
double feasible_region_fraction(const Problem& problem, int t, long samples,
                                std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// The 22 instance ids, in canonical order.
const std::vector<std::string>& instance_ids();

bool is_known_instance(std::string_view id);

/// Builds a problem by id with the given dynamics (defaults: k=0.5, S=20,
/// f_c=1000, 10 periods). Throws UnknownInstance for anything else.
Problem make_instance(std::string_view id, const DynamicParams& dynamics = {});

}  // namespace dcop

#endif
