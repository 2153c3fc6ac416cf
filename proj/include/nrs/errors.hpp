#pragma once

#include <stdexcept>
#include <string>

namespace nrs {

/// Malformed or out-of-domain input (zero polynomial where nonzero required, etc).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated in a way the callee can detect
/// (e.g. a non-squarefree polynomial handed to the Sturm counter).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A numeric routine could not reach its accuracy target.  Carries the
/// residual that was actually achieved.
struct NumericalFailure : std::runtime_error {
    double achieved_residual;
    NumericalFailure(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_residual(achieved) {}
};

/// Parameters outside the range a formula or model supports (e.g. mn < 3).
struct UnsupportedParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace nrs
