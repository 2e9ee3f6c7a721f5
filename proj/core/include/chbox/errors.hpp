#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace chbox {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A coordinate lies outside the Hylleraas domain or at a singular point.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Numerical failure inside a solver (non-convergence, asymmetric operator, ...).
class NumericalError : public Error {
public:
  using Error::Error;
};

class IllConditionedOverlap : public NumericalError {
public:
  IllConditionedOverlap(std::size_t pivot_index, double pivot, double threshold)
      : NumericalError(describe(pivot_index, pivot, threshold)), pivot_index_(pivot_index) {}

  std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
  static std::string describe(std::size_t index, double pivot, double threshold) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ill-conditioned overlap: Cholesky pivot %zu = %.3e below threshold %.3e",
                  index, pivot, threshold);
    return buf;
  }

  std::size_t pivot_index_;
};

class OptimizerStalled : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Missing or malformed configuration / data files.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace chbox
