#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact arithmetic was requested for data that is not exactly representable.
class BackendError : public Error {
public:
    using Error::Error;
};

/// A Mellin transform was evaluated outside its half-plane of convergence.
class MellinDivergence : public Error {
public:
    using Error::Error;
};

/// A series was evaluated at one of its poles.
class PoleError : public Error {
public:
    PoleError(const std::string& what, long index) : Error(what), index_(index) {}
    long index() const { return index_; }

private:
    long index_;
};

/// Numerical integration did not reach the requested tolerance.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, std::complex<double> estimate, double bound)
        : Error(what), estimate_(estimate), bound_(bound) {}
    std::complex<double> estimate() const { return estimate_; }
    double bound() const { return bound_; }

private:
    std::complex<double> estimate_;
    double bound_;
};

/// The truncation size is too small for the requested computation.
class SizingError : public Error {
public:
    SizingError(const std::string& what, int suggested) : Error(what), suggested_(suggested) {}
    int suggested_size() const { return suggested_; }

private:
    int suggested_;
};

}  // namespace bergman
