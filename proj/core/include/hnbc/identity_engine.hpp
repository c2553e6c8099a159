#pragma once

#include <vector>

#include "hnbc/herglotz.hpp"
#include "hnbc/problem.hpp"
#include "hnbc/spectral_sums.hpp"

namespace hnbc {

/// The trace-type identities tie the weighted spectral sums sigma_0..sigma_m
/// to the coefficients omega_1..omega_{m+1} of the boundary polynomial of the
/// left endpoint function (m is its index).  Row k of the system reads
///
///   [k == 0] * omega_1 - [k == 1]
///     + sum_i sigma_{m-i-k} * omega_{2i+k}  =  0,      k = 0..m,
///
/// with omega_0 = 1 and i running over the range that keeps both subscripts
/// in bounds.  The rows are linear in the sigmas for fixed omegas and vice
/// versa, which gives the two solvers below.

/// Coefficients of row k over the vector [omega_0, omega_1, ..., omega_{m+1}]
/// (omega_0 is the constant 1).  sigma must hold sigma_0..sigma_m.
std::vector<double> identity_row(int k, int m, const std::vector<double>& sigma);

/// Residuals of all m + 1 rows for a given pair of sigma and omega vectors.
std::vector<double> identity_residuals(const std::vector<double>& sigma,
                                       const OmegaVector& omega);
std::vector<double> identity_residuals(const SigmaVector& sigma,
                                       const OmegaVector& omega);

/// Solves the identity system for the omega coefficients given the sigmas.
/// The system splits into two positive definite Hankel stages by parity;
/// NotPositiveDefinite signals sigma values inconsistent with any admissible
/// boundary condition.
OmegaVector solve_for_omega(const std::vector<double>& sigma, int m);
OmegaVector solve_for_omega(const SigmaVector& sigma);

/// Solves the identity system for the sigma values given the omega
/// coefficients.  Throws SingularSystem when the boundary polynomial pair is
/// degenerate (the system matrix loses rank).
SigmaVector solve_for_sigma(const OmegaVector& omega);

/// Absolute determinant of the matrix used by solve_for_sigma; equals the
/// absolute resultant of the two boundary polynomials.
double system_determinant(const OmegaVector& omega);

/// A weighted sum of squared boundary samples over the spectrum, with a
/// convergence verdict from the decay rate of its terms.
struct ParsevalSum {
    double value = 0.0;               ///< partial sum plus tail estimate if convergent
    bool converged = false;           ///< decay-rate test found a convergent series
    std::vector<double> partial_sums; ///< running sums, one entry per spectrum datum
};

/// Estimates 1/delta_k (reciprocal weight of pole k of the left endpoint
/// function) by summing the squared pole-free boundary polynomial over the
/// spectrum.  Only the pole locations and slope of `left` are read.
ParsevalSum parseval_weight(const Spectrum& spectrum, const HerglotzFunction& left,
                            int pole_index);

/// Same sum with the full denominator polynomial; converges to 1/slope when
/// the left endpoint function has positive slope and diverges otherwise.
ParsevalSum parseval_slope(const Spectrum& spectrum, const HerglotzFunction& left);

/// The same eigenvalues seen from the other endpoint: norming constants pick
/// up the squared solution ratio, the ratio inverts, and the endpoint indices
/// swap.  Lets every left-endpoint routine serve the right endpoint too.
Spectrum reflected_spectrum(const Spectrum& spectrum);

} // namespace hnbc
