#pragma once

#include <stdexcept>

namespace cdosc {

// An input lies outside the mathematical domain of an operation
// (ramp evaluated past its horizon, negative frequency, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A mode frequency came out imaginary for the supplied parameters.
struct ImaginaryFrequencyError : DomainError {
  using DomainError::DomainError;
};

// A runtime accuracy contract was violated (norm drift, constraint blow-up).
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A config file could not be parsed (syntax, unknown key, bad value).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A config parsed cleanly but violates a scenario invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cdosc
