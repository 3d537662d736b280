#pragma once

#include <stdexcept>
#include <string>

namespace diebal {

/// Invalid geometry or die layout (degenerate, self-intersecting, misplaced hole).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of a formula (e.g. log of a nonpositive value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// API misuse, e.g. evaluating a linear model with log-linear coefficients.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file. The message carries the location (path, row, field).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regression could not be computed (rank deficiency, too few rows).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diebal
