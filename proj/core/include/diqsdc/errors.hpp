#pragma once

#include <stdexcept>

namespace diqsdc {

/// Argument outside the mathematical domain of a function.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// CHSH value at or below the classical bound: the interception bound is vacuous.
struct NotViolatingError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientSamplesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Purification cannot improve fidelity (initial fidelity at or below 1/2).
struct EppIneffectiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TargetUnreachableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diqsdc
