#pragma once

#include <stdexcept>
#include <string>

namespace slipt {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at (or within machine tolerance of) a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Mellin-Barnes integrand whose left and right pole families cannot be
/// separated by a vertical contour.
class PoleCoincidenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed G/H parameter tuple (index counts vs. list lengths).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Moment or integral that does not exist for the given parameters.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical evaluation that failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Configuration value rejected at the input boundary.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : std::invalid_argument(format(field, message, line)),
        field_(std::move(field)),
        message_(message),
        line_(line) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& message, int line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::string message_;
  int line_;
};

class UnknownPresetError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace slipt
