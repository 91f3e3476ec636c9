#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

/// Bad argument or violated precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters fall outside the validity range of an approximation
/// (e.g. no double well, negative square-root argument).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative refinement hit its cap without meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace polaron
