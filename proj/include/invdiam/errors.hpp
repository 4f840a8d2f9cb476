#pragma once

#include <stdexcept>
#include <string>

namespace invdiam {

// Malformed or inconsistent user input (files, flags, certificates).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource budget (state count, edge count, vertex guard) would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, never a verdict.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace invdiam
