#pragma once

#include <stdexcept>
#include <string>

namespace sector_primes {

/// Invalid sieve or run configuration (bad limit, segment size, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Query beyond the range covered by a sieve configuration.
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A closed-form bound was requested outside the index range where it is valid.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Rejected input to the exact certificate checks.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Resume token cannot be applied to the requested run.
class ResumeError : public std::runtime_error {
public:
    enum class Kind { Corrupt, ParamMismatch, SegmentAlignment };

    ResumeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace sector_primes
