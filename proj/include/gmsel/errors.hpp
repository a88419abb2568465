#pragma once

#include <stdexcept>
#include <string>

namespace gmsel {

// Base for all library errors. CLI maps ValidationError -> exit 2,
// ScaleError -> exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed inputs, violated preconditions.
struct ValidationError : Error {
  using Error::Error;
};

// Structurally valid request whose exact computation is out of desk scale.
struct ScaleError : Error {
  using Error::Error;
};

struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct BadSpinValue : ValidationError {
  using ValidationError::ValidationError;
};

struct PreconditionViolated : ValidationError {
  using ValidationError::ValidationError;
};

// Class parameters admit no member model (e.g. lambda*d > omega).
struct EmptyClass : ValidationError {
  using ValidationError::ValidationError;
};

// Divergence conditioning set touches an endpoint of the edge under test.
struct EndpointConditioned : ValidationError {
  using ValidationError::ValidationError;
};

struct EmptyCandidates : ValidationError {
  using ValidationError::ValidationError;
};

// No parameter vector on the graph satisfies the (lambda, omega) box.
struct InfeasibleConstraints : ValidationError {
  using ValidationError::ValidationError;
};

// A verification routine was asked to check a config outside the
// hypotheses of the inequality it tests.
struct HypothesisViolated : ValidationError {
  using ValidationError::ValidationError;
};

struct IoError : ValidationError {
  using ValidationError::ValidationError;
};

// Exhaustive class enumeration requested above the enumeration guard.
struct InfeasibleEnumeration : ScaleError {
  using ScaleError::ScaleError;
};

// Exact state-space computation requested above the inference guard.
struct TooLarge : ScaleError {
  using ScaleError::ScaleError;
};

}  // namespace gmsel
