#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

/// Base class for all hardylab errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument, index, or input data (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unusable summation-mode configuration, e.g. an unsupported
/// precision request (CLI exit code 2).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// The request is well-formed but cannot be satisfied within the
/// configured resource limits (CLI exit code 3). `detail` carries a
/// machine-readable hint such as the minimum feasible cutoff level.
class FeasibilityError : public Error {
public:
    FeasibilityError(const std::string& what, std::string detail_)
        : Error(what), detail(std::move(detail_)) {}
    explicit FeasibilityError(const std::string& what) : Error(what) {}

    std::string detail;
};

/// An internal cross-check failed: two evaluation routes of the same
/// quantity disagree beyond tolerance, a bisection bracket broke, or a
/// factorization residual exceeded its bound. Always an implementation
/// defect, never a property of the input (CLI exit code 1).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace hardylab
