#pragma once

#include <stdexcept>
#include <string>

namespace gapbound {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// An iterative scheme ran out of budget before reaching its tolerance.
// Carries the best estimate achieved so the caller can still inspect it.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double achieved)
        : Error(what), estimate(achieved) {}
    double estimate;
};

// A root/threshold bracket does not straddle a sign change.
struct BracketError : Error {
    using Error::Error;
};

// Operation invoked for the wrong analytic case (endpoint-maximum regime
// versus interior-critical-point regime).
struct CaseError : Error {
    using Error::Error;
};

// File I/O or cache-format failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace gapbound
