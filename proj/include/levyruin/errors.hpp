#pragma once

#include <stdexcept>
#include <string>

namespace levyruin {

/// Argument outside the mathematical domain of an operation
/// (e.g. evaluating an MGF at or beyond its abscissa of convergence).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Invalid model parameters or simulation configuration.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// The net benefit condition p(0) > m(mu) fails, so no positive
/// convergence rate exists.
struct NoPositiveRate : std::runtime_error {
    explicit NoPositiveRate(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two independent numerical routes disagree beyond tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Stationary-regime estimator invoked on a model without a stationary dual.
struct NonErgodic : std::runtime_error {
    explicit NonErgodic(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace levyruin
