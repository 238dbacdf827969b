#pragma once

#include <stdexcept>
#include <string>

namespace submeta {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Conditioning event has zero probability under the prior.
struct ZeroMassCondition : Error {
    using Error::Error;
};

/// An exact (enumerating) operation was asked of a generative prior.
struct NotEnumerable : Error {
    using Error::Error;
};

struct EmptyTaskSet : Error {
    using Error::Error;
};

/// A policy tried to re-select an item or overran its budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct InfeasibleBudget : Error {
    using Error::Error;
};

/// A regime-specific policy was built outside its regime (e.g. l != k-1).
struct WrongRegime : Error {
    using Error::Error;
};

/// Instance exceeds the enumeration guard of an exact oracle.
struct TooLarge : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/// A cascade observation is internally contradictory.
struct InconsistentObservation : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace submeta
