#pragma once

#include "hnbc/problem.hpp"

namespace hnbc {

/// State of the left solution at the right endpoint x = pi, together with
/// its eigenvalue-parameter derivative (from the variational system) and
/// the accumulated squared-norm integral.
struct LeftSolutionState {
    double value = 0.0;          // phi(pi, lambda)
    double slope = 0.0;          // phi'(pi, lambda)
    double value_dlambda = 0.0;  // d phi(pi, lambda) / d lambda
    double slope_dlambda = 0.0;  // d phi'(pi, lambda) / d lambda
    double norm_integral = 0.0;  // int_0^pi phi^2 dx
};

/// State of the right solution carried back to the left endpoint x = 0.
struct RightSolutionState {
    double value = 0.0;         // psi(0, lambda)
    double slope = 0.0;         // psi'(0, lambda)
    double value_dlambda = 0.0; // d psi(0, lambda) / d lambda
    double slope_dlambda = 0.0; // d psi'(0, lambda) / d lambda
};

/// Value and eigenvalue-derivative of the characteristic function.
struct CharValue {
    double chi = 0.0;
    double chi_prime = 0.0;
};

/// Integrates the left solution phi of -y'' + q y = lambda y with initial
/// data phi(0) = den_f(lambda), phi'(0) = -num_f(lambda), where
/// (num_f, den_f) is the rational form of the left boundary coefficient.
/// The variational components start from the lambda-derivatives of the
/// same polynomials.
LeftSolutionState integrate_left(const Problem& problem, double lambda);

/// Integrates the right solution psi backwards from psi(pi) = den_F(lambda),
/// psi'(pi) = num_F(lambda) down to x = 0.
RightSolutionState integrate_right(const Problem& problem, double lambda);

/// Characteristic function assembled from the left solution:
///
///     chi(lambda) = num_F(lambda) phi(pi) - den_F(lambda) phi'(pi),
///
/// with chi' from the variational components.  Eigenvalues are exactly the
/// real zeros of chi; they are simple.  The equivalent assembly from the
/// right solution, den_f psi'(0) + num_f psi(0), is the same Wronskian
/// evaluated at the other endpoint and is exercised by the tests as a
/// consistency check.
CharValue char_function(const Problem& problem, double lambda);

/// Computes the lowest solver.n_max eigenvalues with norming constants,
/// solution ratios and characteristic derivatives.  Scans chi for sign
/// changes on a square-root-spaced grid centred on the asymptotic
/// eigenvalue positions, refines each bracket by safeguarded Newton, and
/// quarter-refines the grid (up to three levels) if the expected count is
/// not met; throws BracketingFailure when it still is not.
Spectrum find_eigenvalues(const Problem& problem);

/// Norming constant at an eigenvalue lambda_n:
///
///     gamma_n = int_0^pi phi^2 dx + f'(lambda_n) phi(0)^2 + F'(lambda_n) phi(pi)^2,
///
/// where a boundary term is omitted when lambda_n coincides with a pole of
/// the respective coefficient (relative threshold 1e-7 on the denominator).
/// Throws NotAnEigenvalue if chi(lambda_n) is not small against its
/// assembly scale, NonPositiveNorming if the result is not positive.
double norming_constant(const Problem& problem, double lambda_n);

/// Ratio beta_n with psi(x, lambda_n) = beta_n phi(x, lambda_n), taken from
/// whichever boundary value of phi at x = 0 is relatively larger; throws
/// DegenerateEigenfunction when both vanish and NotAnEigenvalue away from
/// the spectrum.
double solution_ratio(const Problem& problem, double lambda_n);

} // namespace hnbc
