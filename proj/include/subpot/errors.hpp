#pragma once

#include <stdexcept>
#include <string>

namespace subpot {

/// Base of every error raised by the library. `operation()` names the
/// public operation that detected the failure.
class Error : public std::runtime_error {
public:
    Error(std::string operation, const std::string& what)
        : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

    const std::string& operation() const noexcept { return operation_; }

private:
    std::string operation_;
};

/// A parameter set or configuration violates its invariants.
class ParameterError : public Error {
    using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
    using Error::Error;
};

/// The operation is undefined for the requested spatial dimension.
class DimensionError : public DomainError {
    using DomainError::DomainError;
};

/// The representation used by the operation collapses at these parameters.
class DegeneracyError : public DomainError {
    using DomainError::DomainError;
};

/// Ball/point geometry is inconsistent (e.g. a ball that contains the origin).
class GeometryError : public DomainError {
    using DomainError::DomainError;
};

/// The result is not representable as a finite double.
class OverflowError : public Error {
    using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(std::string operation, const std::string& what, double partial_value,
                     double partial_error)
        : Error(std::move(operation), what), value_(partial_value), error_(partial_error) {}

    double partial_value() const noexcept { return value_; }
    double partial_error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

/// An integrand returned NaN or infinity.
class NanError : public Error {
    using Error::Error;
};

/// A rejection sampler would run with an acceptance rate below its floor.
class EfficiencyError : public Error {
    using Error::Error;
};

/// Some simulated paths never reached the target level before the horizon.
class TruncationError : public Error {
public:
    TruncationError(std::string operation, const std::string& what, double censored_fraction)
        : Error(std::move(operation), what), censored_fraction_(censored_fraction) {}

    double censored_fraction() const noexcept { return censored_fraction_; }

private:
    double censored_fraction_;
};

}  // namespace subpot
