#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccsim {

// Argument and configuration problems. The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidTopology : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidMemory : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidShare : ConfigError {
    using ConfigError::ConfigError;
};
struct DomainError : ConfigError {
    using ConfigError::ConfigError;
};
struct UnknownNode : ConfigError {
    using ConfigError::ConfigError;
};
struct PivotInFamily : ConfigError {
    using ConfigError::ConfigError;
};
struct NotGapEligible : ConfigError {
    using ConfigError::ConfigError;
};

// Violated scientific invariants. These mean the run produced something the
// theory says cannot happen; the CLI maps them to exit code 2.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A user failed to reconstruct its requested file. Carries the first
// mismatching bit index.
struct DecodeFailure : InvariantViolation {
    DecodeFailure(const std::string& what, int64_t bit)
        : InvariantViolation(what + " (first bad bit " + std::to_string(bit) + ")"),
          first_bad_bit(bit) {}
    int64_t first_bad_bit;
};

// A helper was asked to transmit a bit it neither cached nor recovered from
// the first delivery layer.
struct HelperMissingBits : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

// The rate achieved at the chosen memory-sharing tuple exceeded its
// closed-form envelope.
struct EnvelopeViolation : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

}  // namespace ccsim
