#pragma once

#include <stdexcept>
#include <string>

namespace bds {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated numeric precondition (bad index, short sequence, order too small, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A chain evaluated to a nonpositive edge weight or measure.
struct InvalidChainError : Error {
    using Error::Error;
};

/// Composition enumeration requested beyond the configured cap.
struct CapExceededError : DomainError {
    using DomainError::DomainError;
};

/// The positive-solution criterion found no positive solution at the given shift.
struct PositivityError : Error {
    using Error::Error;
};

/// Chain specification text could not be parsed.
struct SpecParseError : Error {
    using Error::Error;
};

/// Broken internal invariant (e.g. a negative term fed to the series classifier).
struct InternalError : Error {
    using Error::Error;
};

} // namespace bds
