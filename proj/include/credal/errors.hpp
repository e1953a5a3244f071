#pragma once

#include <stdexcept>
#include <string>

namespace credal {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed values: bad identifiers, non-finite coefficients, invalid intervals.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded (atom vocabulary, LP dimensions).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A sentence mentions an atom the world does not assign.
class VocabularyError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unknown outcome label, act name, or similar failed lookup.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A sentence atom has no marginal interval attached.
class MissingMarginalError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event whose upper probability is zero.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Constraint system admits no distribution at all.
class EmptyCredalSetError : public Error {
 public:
  using Error::Error;
};

/// The evidential corpus would become logically inconsistent.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Subset facts form a cycle.
class TaxonomyCycleError : public Error {
 public:
  using Error::Error;
};

/// Two statistics disagree for the same (attribute, class) pair.
class ConflictingStatsError : public Error {
 public:
  using Error::Error;
};

/// Violated internal expectation; indicates a bug, not a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace credal
