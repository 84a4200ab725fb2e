#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clvr {

// Base class for all errors raised by the library.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (bad pool, bad trade,
// claim that is not a permutation, ...).
class ContractViolation : public SimError {
 public:
  using SimError::SimError;
};

// Arithmetic produced a state we refuse to continue from: non-finite
// reserves, a swap that would drain a reserve, and the like.
class ExecutionError : public SimError {
 public:
  using SimError::SimError;
};

// A metric was requested on an input for which it has no value
// (volatility of an empty trace, Gini of all-zero wealth).
class UndefinedMetricError : public SimError {
 public:
  using SimError::SimError;
};

// Exhaustive search was asked to enumerate more permutations than the
// configured factorial cap allows.
class TractabilityError : public SimError {
 public:
  using SimError::SimError;
};

// A file could not be opened, read, or written.
class IoError : public SimError {
 public:
  using SimError::SimError;
};

// Malformed external input. `line` is 1-based.
class IngestError : public SimError {
 public:
  IngestError(const std::string& what, std::size_t line)
      : SimError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace clvr
