#pragma once

#include <stdexcept>
#include <string>

namespace ringeq {

/// Root of every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Characteristic of the third-kind integral puts a pole on the path.
class CharacteristicError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The quartic is negative everywhere, so no real curvature exists.
class NoRealRoots : public DomainError {
public:
    using DomainError::DomainError;
};

/// A = B or eta = 0 where the elliptic family is undefined.
class DegenerateModuli : public DomainError {
public:
    using DomainError::DomainError;
};

/// The elementary (eta = 0) branch has no periodic solution.
class NonPeriodic : public DomainError {
public:
    using DomainError::DomainError;
};

/// sigma <= n^2 - 1: only the circle exists for this mode.
class BelowBuckling : public DomainError {
public:
    using DomainError::DomainError;
};

/// sigma_hat below the contact pressure of the requested mode.
class BelowContact : public DomainError {
public:
    using DomainError::DomainError;
};

/// The curvature never reaches -sqrt(2 mu) and +sqrt(2 mu) on a half period.
class NoContactCandidates : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative solve stopped without meeting its tolerance.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace ringeq
