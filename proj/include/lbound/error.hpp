#pragma once

#include <stdexcept>
#include <string>

namespace lbound {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition (e.g. admissibility) does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The inputs are admissible but yield a degenerate constant (zero or negative denominator).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search exhausted its budget without producing a feasible state.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lbound
