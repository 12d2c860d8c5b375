#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lhc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Error taxonomy shared across modules. All carry a human-readable message;
// the C API maps them onto status codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid numeric argument (entropy outside [0,1], alpha outside (0,1/2), ...).
struct DomainError : Error {
    using Error::Error;
};

// Structurally invalid input (malformed hypergraph, bad JSON shape, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A raw edge has fewer than delta vertices and cannot be truncated.
struct EdgeTooSmall : ValidationError {
    using ValidationError::ValidationError;
};

// Instance exceeds a hard resource bound (e.g. brute force above 24 vertices).
struct TooLarge : Error {
    using Error::Error;
};

// A generator family could not satisfy its constraints within its retry budget.
struct GenerationFailed : Error {
    using Error::Error;
};

// An operation that requires a non-empty component received an empty one.
struct EmptyComponent : Error {
    using Error::Error;
};

// The per-phase invariant failed after a phase was applied; indicates a bug,
// never expected on valid inputs.
struct InvariantViolationError : Error {
    using Error::Error;
};

} // namespace lhc
