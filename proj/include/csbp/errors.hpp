#pragma once

#include <stdexcept>
#include <string>

namespace csbp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A model parameter violates one of its invariants; what() names the inequality.
struct ConstraintViolation : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct QuadratureFailure : Error {
  using Error::Error;
};

// A lemma's hypothesis fails for the supplied inputs (caller error, not a lemma failure).
struct HypothesisError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace csbp
