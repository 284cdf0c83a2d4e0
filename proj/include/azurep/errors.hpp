#pragma once

#include <stdexcept>
#include <string>

namespace azurep {

/// Bad input data: violated invariants, malformed values, shape mismatches.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented operation precondition does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or search budget would be exceeded. Carries the budget that
/// would have been required, so callers can retry deliberately.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, double required, double limit)
        : std::runtime_error(what), required_budget(required), given_budget(limit) {}
    double required_budget;
    double given_budget;
};

/// A randomized search ran out of attempts; retry with a larger budget or a
/// bigger field.
struct RetryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace azurep
