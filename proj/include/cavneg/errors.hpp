#pragma once

#include <stdexcept>

namespace cavneg {

// Argument outside the mathematical domain of an operation (n = 0, |h| >= 2, M < 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Structurally invalid arguments (mismatched sizes, conflicting options).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Valid input for which no formula is available (massive Rindler spectrum).
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed sweep configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cavneg
