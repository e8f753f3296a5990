#pragma once

#include <stdexcept>
#include <string>

namespace sixvertex {

// Invalid parameters (γ ≥ t, α ≤ 1, r ≤ 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Lattice size outside the supported range of the enumerator.
class SizeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A configuration that violates the ice rule or the boundary conditions.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for every numeric failure. Carries the stage that failed and the last
/// two estimates produced before giving up, so callers can report them.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string stage, const std::string& what, std::string previous = {},
               std::string last = {})
      : std::runtime_error(stage + ": " + what),
        stage_(std::move(stage)),
        previous_(std::move(previous)),
        last_(std::move(last)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& previous_estimate() const noexcept { return previous_; }
  const std::string& last_estimate() const noexcept { return last_; }

 private:
  std::string stage_;
  std::string previous_;
  std::string last_;
};

class RefinementFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class BracketFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidContour : public NumericError {
 public:
  using NumericError::NumericError;
};

// Raised when a Hankel minor comes out non-positive or two precision levels
// disagree; the fix is always more bits.
class PrecisionExhausted : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sixvertex
