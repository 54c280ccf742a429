#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsylv {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, or a configured size cap was exceeded.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input value violates an operation's domain (norm cutoff, non-PSD
/// matrix, parameter out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Q is numerically singular: some eigenvalue sum gamma_j + lambda_k
/// vanishes, so the Sylvester equation has no unique solution.
class SingularQError : public Error {
 public:
  using Error::Error;
};

/// Synthesizing, materializing or densely applying an LCU would exceed the
/// term budget.
class TermBudgetError : public Error {
 public:
  TermBudgetError(const std::string& msg, std::uint64_t required_terms)
      : Error(msg), required(required_terms) {}
  std::uint64_t required;
};

/// Calibration exhausted its refinement rounds; carries the best error
/// reached so callers can report it.
class CalibrationBudgetError : public Error {
 public:
  CalibrationBudgetError(const std::string& msg, double best_error)
      : Error(msg), achieved(best_error) {}
  double achieved;
};

/// Input file could not be parsed or fails instance validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Pipeline failure tagged with the stage that raised it.
class StageError : public Error {
 public:
  StageError(const std::string& stage_name, const std::string& msg)
      : Error("[" + stage_name + "] " + msg), stage(stage_name) {}
  std::string stage;
};

}  // namespace qsylv
