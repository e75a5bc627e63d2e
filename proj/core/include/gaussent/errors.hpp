#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaussent {

/// Argument outside the operation's domain (negative squeezing, η ∉ [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Covariance matrix violates the uncertainty principle beyond tolerance.
class PhysicalityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Local blocks not positive definite, or data with no spread.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigen-solver or quadrature failure, or inconsistent closed-form invariants.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is not in the quadrature-symmetric form required by the operation.
class SymmetryError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Infinite-cutoff NLA weight is not integrable against the heterodyne density.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// State cannot be matched to the TMSV + loss + excess-noise family.
class DecompositionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Too few samples (after post-selection) to estimate moments.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PurityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RankDeficiencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed text input; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gaussent

namespace gaussent {

/// Post-selection kept too few shots.
class StarvationError : public InsufficientDataError {
 public:
  using InsufficientDataError::InsufficientDataError;
};

}  // namespace gaussent
