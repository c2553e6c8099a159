#pragma once

#include <stdexcept>
#include <string>

namespace hnbc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation of a rational function was requested too close to one of its
/// poles for the value to be meaningful in double precision.
class PoleProximity : public Error {
public:
    using Error::Error;
};

/// Input data cannot describe a rational Herglotz-Nevanlinna function
/// (complex or multiple denominator roots, non-positive residues, negative
/// slope, and so on).
class NotHerglotz : public Error {
public:
    using Error::Error;
};

/// Structurally invalid input (e.g. the resultant of two zero polynomials).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// The adaptive ODE integrator failed to reach the requested accuracy.
class IntegrationFailure : public Error {
public:
    using Error::Error;
};

/// The eigenvalue scan did not find the expected number of sign changes even
/// after grid refinement.
class BracketingFailure : public Error {
public:
    using Error::Error;
};

/// A quantity defined only at an eigenvalue was requested at a point where
/// the characteristic function does not vanish.
class NotAnEigenvalue : public Error {
public:
    using Error::Error;
};

/// A computed norming constant came out non-positive, which indicates a
/// broken solve rather than a property of the problem.
class NonPositiveNorming : public Error {
public:
    using Error::Error;
};

/// Both boundary values used to form the eigenfunction ratio vanished; the
/// ratio of the two solution branches is numerically undefined.
class DegenerateEigenfunction : public Error {
public:
    using Error::Error;
};

/// An index argument lies outside the valid range for the given object.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Two objects that must share a common size or index do not.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A matrix required to be symmetric positive definite failed its Cholesky
/// factorization (typically: sum data inconsistent with any valid problem).
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A linear system that should be uniquely solvable is numerically singular.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// An iterative recovery did not converge; the message reports the final
/// residual.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// More unknowns were requested than the available identities can determine.
class UnderdeterminedProblem : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent run configuration (CLI layer).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace hnbc
