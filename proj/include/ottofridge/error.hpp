#pragma once

#include <stdexcept>
#include <string>

namespace ottofridge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates its documented precondition (non-positive frequency,
/// misordered temperatures, Q* below one, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the function's domain (e.g. t outside [0, tau]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The cycle does not extract heat from the cold bath (Q4 <= 0).
class NotCooling : public Error {
public:
    using Error::Error;
};

/// Total work input is non-positive, so the COP is undefined.
class NotRefrigerator : public Error {
public:
    using Error::Error;
};

/// Adaptive ODE step size collapsed.
class StiffnessError : public Error {
public:
    using Error::Error;
};

/// Two independent evaluations of the same quantity disagree, or a
/// quadrature failed to meet its tolerance.
class NumericalAccuracyError : public Error {
public:
    NumericalAccuracyError(const std::string& what, double first, double second)
        : Error(what), first_(first), second_(second) {}

    double first() const noexcept { return first_; }
    double second() const noexcept { return second_; }

private:
    double first_;
    double second_;
};

/// A quantum-speed-limit bound is undefined (zero STA cost or zero Bures angle).
class DegenerateBound : public Error {
public:
    using Error::Error;
};

/// Density matrix is not Hermitian / positive / unit trace within tolerance.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Truncated Fock space too small for the requested thermal state.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int suggested_dim)
        : Error(what), suggested_dim_(suggested_dim) {}

    int suggested_dim() const noexcept { return suggested_dim_; }

private:
    int suggested_dim_;
};

/// Relative entropy diverges because supp(a) is not contained in supp(b).
class DivergentRelativeEntropy : public Error {
public:
    using Error::Error;
};

}  // namespace ottofridge
