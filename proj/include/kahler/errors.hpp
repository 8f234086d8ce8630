#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

// Invalid grid size, dimension, or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A potential whose metric fails the positivity test.
class NotInPotentialSpace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extrapolated endpoint values of a reduced integrand blew past the bound.
class DivergentIntegrand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The two expressions for the generalized energy disagree.
class ExpressionMismatch : public std::runtime_error {
 public:
  ExpressionMismatch(const std::string& what, double first, double second)
      : std::runtime_error(what), first_(first), second_(second) {}
  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }

 private:
  double first_;
  double second_;
};

// A flow step left the space of positive metrics.
class StepRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kahler
