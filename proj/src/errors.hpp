#ifndef DCOPLAB_ERRORS_HPP
#define DCOPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dcop {

/// Point outside the box bounds, invalid period index, or similar misuse.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation requested after the run budget (f_c * num_periods) was spent.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration value (population size, rates, ranges...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class UnknownInstance : public std::runtime_error {
 public:
  explicit UnknownInstance(const std::string& id)
      : std::runtime_error("unknown instance id: " + id) {}
};

/// A reference-optima computation found no feasible point for some period.
class InfeasiblePeriod : public std::runtime_error {
 public:
  InfeasiblePeriod(const std::string& instance, int period)
      : std::runtime_error("no feasible point for instance " + instance +
                           " at period " + std::to_string(period)) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dcop

#endif
