#pragma once

#include <vector>

#include "hnbc/herglotz.hpp"

namespace hnbc {

/// Length of the spatial interval [0, pi].
inline constexpr double interval_length = 3.14159265358979323846;

/// Real potential on [0, pi]: identically zero, constant, or piecewise
/// linear through uniformly spaced samples (endpoints included).
class Potential {
public:
    enum class Kind { zero, constant, sampled };

    Potential() : kind_(Kind::zero), constant_(0.0) {}

    static Potential zero();
    static Potential constant(double value);
    /// Piecewise-linear interpolant of values at x_j = j*pi/(n-1); needs at
    /// least two samples, all finite.
    static Potential sampled(std::vector<double> values);

    Kind kind() const { return kind_; }
    double constant_value() const { return constant_; }
    const std::vector<double>& samples() const { return samples_; }

    /// Value at x (clamped to [0, pi]).
    double operator()(double x) const;
    /// Integral of |q| over [0, pi] (exact for the piecewise-linear form).
    double l1_norm() const;
    /// Integral of q over [0, pi].
    double integral() const;
    /// The potential x -> q(pi - x).
    Potential reflected() const;

    /// Appends the interior points where the piecewise definition has kinks
    /// (sample points); used to split ODE integrations into smooth pieces.
    void append_interior_breakpoints(std::vector<double>& out) const;

private:
    Kind kind_;
    double constant_ = 0.0;
    std::vector<double> samples_;
};

/// Numerical knobs of the direct solver.
struct SolverParams {
    double ode_rel_tol = 1e-12; // per-step relative tolerance of the stepper
    double ode_abs_tol = 1e-14; // absolute floor of the step error test
    double eigen_tol = 1e-12;   // relative half-width for root refinement
    int n_max = 100;            // number of eigenvalues to compute

    void validate() const; // throws ConfigError on out-of-range values
};

/// A boundary value problem: potential plus one rational
/// Herglotz-Nevanlinna boundary coefficient per endpoint.
struct Problem {
    Potential q;
    HerglotzFunction f = HerglotzFunction::zero(); // left endpoint
    HerglotzFunction F = HerglotzFunction::zero(); // right endpoint
    SolverParams solver;
};

/// One eigenvalue with its derived quantities.  beta and chi_prime may be
/// NaN in partially known spectra; the direct solver always fills them.
struct SpectralDatum {
    int n = 0;           // 0-based index in the increasing eigenvalue list
    double lambda = 0.0; // eigenvalue
    double gamma = 0.0;  // norming constant, > 0
    double beta = 0.0;   // ratio of the right solution to the left one
    double chi_prime = 0.0; // derivative of the characteristic function
};

/// Computed (or externally supplied) spectral data of one problem.
struct Spectrum {
    std::vector<SpectralDatum> data; // sorted by n = 0, 1, ...
    double L = 0.0;             // (ind f + ind F) / 2 of the generating problem
    double tail_constant = 0.0; // fitted constant of the eigenvalue tail model
    int ind_f = 0;              // index of the left boundary coefficient
    int ind_F = 0;              // index of the right boundary coefficient

    /// Throws DimensionMismatch / NotAnEigenvalue-style errors when indices
    /// are not 0..N-1, eigenvalues are not strictly increasing, or a gamma
    /// is non-positive.
    void validate() const;
};

} // namespace hnbc
