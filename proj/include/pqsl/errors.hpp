// errors.hpp — exception types shared by every module.

#pragma once

#include <stdexcept>
#include <string>

namespace pqsl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of a model parameter or operation.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure produced an argument outside its valid range
/// (e.g. a fidelity that is not in [0, 1] beyond rounding).
class NumericalDomainError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature stopped before meeting its tolerance.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double achieved_error, double requested)
        : Error(what + " (error estimate " + std::to_string(achieved_error) +
                ", requested " + std::to_string(requested) + ")"),
          achieved_error_(achieved_error),
          requested_(requested) {}

    /// Same error with `prefix: ` prepended to the message.
    ToleranceError with_context(const std::string& prefix) const {
        return ToleranceError(prefix + ": " + what(), achieved_error_, requested_, 0);
    }

    double achieved_error() const noexcept { return achieved_error_; }
    double requested() const noexcept { return requested_; }

private:
    ToleranceError(const std::string& full, double achieved_error, double requested, int)
        : Error(full), achieved_error_(achieved_error), requested_(requested) {}

    double achieved_error_;
    double requested_;
};

/// |kappa_t| vanishes, so the derivative of the modulus is undefined.
class CuspError : public Error {
public:
    CuspError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Malformed configuration file or override.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File-system failure with the offending path in the message.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pqsl
