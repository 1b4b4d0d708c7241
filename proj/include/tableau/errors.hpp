#pragma once

#include <stdexcept>
#include <string>

namespace tableau {

/// Invalid input: malformed shapes, out-of-range coordinates, bad parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to meet its contract (non-convergence,
/// inconsistent root counts, unreal kernel values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tableau
