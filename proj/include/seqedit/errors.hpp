#pragma once

#include <stdexcept>
#include <string>

namespace seqedit {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape disagreement between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Input outside an operation's domain (negative norm, zero key, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Iterative factorization did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A matrix that must be invertible is numerically singular.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double sigma_min)
        : Error(msg), sigma_min(sigma_min) {}
    double sigma_min = 0.0;
};

// The gamma certificate of the pseudo-inverse bound is non-positive.
class BoundInapplicableError : public Error {
public:
    BoundInapplicableError(const std::string& msg, double gamma)
        : Error(msg), gamma(gamma) {}
    double gamma = 0.0;
};

// A stated precondition does not hold (e.g. perturbation not acute).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Metric evaluated over an empty population.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

// File parsing / serialization problems.
class IoError : public Error {
public:
    using Error::Error;
};

// Experiment configuration rejected; carries the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& msg)
        : Error("config field '" + field + "': " + msg), field(field) {}
    std::string field;
};

}  // namespace seqedit
