#pragma once

#include <stdexcept>

namespace bohr {

/// A series failed to meet its error target within the iteration cap.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem hypothesis (decreasing weight sequence, dilatation bound, ...)
/// does not hold for the supplied inputs.
class HypothesisViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The radius functional stays negative on the whole sampled domain.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated coefficient model is too short for the requested error budget.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bohr
