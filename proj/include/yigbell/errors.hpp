#pragma once

#include <stdexcept>
#include <string>

namespace yigbell {

/// Argument outside the mathematical domain of an operation (f <= 0, T <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or incomplete configuration (missing susceptibility, bad grid, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a result (no root bracketed, degenerate ratio).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(double value, const char* name) {
  if (!(value > 0.0)) throw DomainError(std::string(name) + " must be > 0");
}

inline void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) throw DomainError(std::string(name) + " must be >= 0");
}

}  // namespace detail
}  // namespace yigbell
