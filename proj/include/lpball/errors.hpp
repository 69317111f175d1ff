#pragma once

#include <stdexcept>
#include <string>

namespace lpball {

/// Malformed caller input: non-finite entries, dimension mismatches, bad parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A scalar kernel was evaluated outside its domain (e.g. a negative magnitude).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal invariant of a solver failed. Indicates a bug or a numerically
/// degenerate instance, never a user error.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lpball
