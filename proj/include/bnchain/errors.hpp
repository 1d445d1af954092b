#pragma once

#include <stdexcept>
#include <string>

namespace bnchain {

/// A documented precondition on numeric arguments does not hold.
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An input document or object is structurally unusable.
class MalformedInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request would exceed a configured work budget.
class BudgetExceededError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A certificate step could not be verified. Never swallowed.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant (a bug, not bad input).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bnchain
