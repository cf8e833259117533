#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Base class for all arithmetic contract violations raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// The requested quantity is not determinable at the tracked precision.
struct PrecisionError : Error {
    using Error::Error;
};

// A level (congruence depth) requirement is violated.
struct LevelError : Error {
    using Error::Error;
};

// A polynomial-degree requirement is violated.
struct DegreeError : Error {
    using Error::Error;
};

// A support requirement (e.g. concentrated on units) is violated.
struct SupportError : Error {
    using Error::Error;
};

// An explicit hypothesis of a closed formula does not hold for the input.
struct HypothesisError : Error {
    using Error::Error;
};

// Caller did not supply data the operation's contract requires.
struct ContractError : Error {
    using Error::Error;
};

// A geometric tail fails to converge and has no closed-form value.
struct DivergenceError : Error {
    using Error::Error;
};

} // namespace padic
