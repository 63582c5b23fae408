#include "problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace dcop {

bool SearchSpace::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension()) return false;
  for (int i = 0; i < dimension(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

void SearchSpace::validate() const {
  if (lower.size() != upper.size() || lower.empty()) {
    throw ConfigError("search space bounds must be nonempty and same length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw ConfigError("search space requires lower < upper per coordinate");
    }
  }
}

void DynamicParams::validate() const {
  if (objective_severity_k <= 0.0) {
    throw ConfigError("objective severity k must be positive");
  }
  if (constraint_severity_s <= 0.0) {
    throw ConfigError("constraint severity S must be positive");
  }
  if (change_frequency < 1) {
    throw ConfigError("change frequency must be a positive evaluation count");
  }
  if (num_periods < 1) {
    throw ConfigError("number of periods must be positive");
  }
}

Problem::Problem(std::string id, SearchSpace space, DynamicParams dynamics,
                 Fn objective, std::vector<Fn> inequality,
                 std::vector<Fn> equality)
    : id_(std::move(id)),
      space_(std::move(space)),
      dynamics_(dynamics),
      objective_(std::move(objective)),
      inequality_(std::move(inequality)),
      equality_(std::move(equality)) {
  space_.validate();
  dynamics_.validate();
}

Evaluation Problem::evaluate_at(std::span<const double> x, int t) const {
  if (!space_.contains(x)) {
    std::ostringstream msg;
    msg << id_ << ": point outside search space bounds";
    throw DomainError(msg.str());
  }
  if (t < 0 || t >= dynamics_.num_periods) {
    throw DomainError(id_ + ": time index outside the run schedule");
  }
  Evaluation out;
  out.objective = objective_(x, t);
  out.violations.reserve(inequality_.size() + equality_.size());
  for (const auto& g : inequality_) {
    out.violations.push_back(std::max(0.0, g(x, t)));
  }
  for (const auto& h : equality_) {
    out.violations.push_back(
        std::max(0.0, std::abs(h(x, t)) - kEqualityTolerance));
  }
  out.total_violation = 0.0;
  for (double v : out.violations) out.total_violation += v;
  out.feasible = out.total_violation == 0.0;
  return out;
}

double Problem::objective_at(std::span<const double> x, int t) const {
  if (!space_.contains(x)) {
    throw DomainError(id_ + ": point outside search space bounds");
  }
  return objective_(x, t);
}

int EnvironmentState::charge() {
  if (exhausted()) {
    throw BudgetExhausted("evaluation budget exhausted (" +
                          std::to_string(eval_count_) + " evaluations)");
  }
  const int t = time_index();
  ++eval_count_;
  return t;
}

Evaluation evaluate(const Problem& problem, std::span<const double> x,
                    EnvironmentState& env) {
  if (!problem.space().contains(x)) {
    throw DomainError(problem.id() + ": point outside search space bounds");
  }
  const int t = env.charge();
  return problem.evaluate_at(x, t);
}

double feasible_region_fraction(const Problem& problem, int t, long samples,
                                std::uint64_t seed) {
  if (problem.num_constraints() == 0) return 1.0;
  if (samples < 1) throw ConfigError("sample count must be positive");
  std::mt19937_64 rng(seed);
  const auto& space = problem.space();
  const int d = space.dimension();
  std::vector<double> x(d);
  std::vector<std::uniform_real_distribution<double>> dims;
  dims.reserve(d);
  for (int i = 0; i < d; ++i) {
    dims.emplace_back(space.lower[i], space.upper[i]);
  }
  long feasible = 0;
  for (long s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) x[i] = dims[i](rng);
    if (problem.evaluate_at(x, t).feasible) ++feasible;
  }
  return static_cast<double>(feasible) / static_cast<double>(samples);
}

}  // namespace dcop
