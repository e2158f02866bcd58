#pragma once

#include <stdexcept>
#include <string>

namespace smooth {

/// Invalid configuration or argument (bad sharpness, epsilon out of range, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// NaN operands, division by zero, domain errors of elementary functions.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A path or tape budget was exhausted. Carries what was accumulated so far.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::size_t paths_evaluated, double partial_value)
      : std::runtime_error(what), paths_evaluated_(paths_evaluated), partial_value_(partial_value) {}

  std::size_t paths_evaluated() const noexcept { return paths_evaluated_; }
  double partial_value() const noexcept { return partial_value_; }

 private:
  std::size_t paths_evaluated_;
  double partial_value_;
};

}  // namespace smooth
