#pragma once

#include <stdexcept>
#include <string>

namespace knotfilt {

// Malformed or contract-violating input (parse errors, zero classes, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Computed data contradicts a structural theorem (d^2 != 0 on a grid,
// a chain map that is not a chain map, a failed dichotomy, ...).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace knotfilt
