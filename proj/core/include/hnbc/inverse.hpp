#pragma once

#include <optional>
#include <vector>

#include "hnbc/herglotz.hpp"
#include "hnbc/problem.hpp"
#include "hnbc/spectral_sums.hpp"

namespace hnbc {

/// One level of a partially known spectrum.  An unset optional marks a value
/// to be recovered.  Files may omit the solution ratios altogether
/// (with_beta = false on the containing PartialSpectrum), which disables the
/// right-endpoint identities.
struct PartialDatum {
    int n = 0;
    std::optional<double> lambda;
    std::optional<double> gamma;
    std::optional<double> beta;
    /// Optional starting values for the corresponding unknown slots; when
    /// absent the solver seeds the iteration from the asymptotic models.
    std::optional<double> lambda_guess;
    std::optional<double> gamma_guess;
    std::optional<double> beta_guess;
};

/// A spectrum with holes, as read from a partial-spectrum file.
struct PartialSpectrum {
    std::vector<PartialDatum> data;
    double L = 0.0;
    double tail_constant = 0.0;
    int ind_f = 0;
    int ind_F = 0;
    bool with_beta = true;

    /// Indices must run 0..N-1; known eigenvalues must increase with n;
    /// known norming constants must be positive; without ratio data no
    /// datum may mark beta as unknown.
    void validate() const;
};

/// Recovers the boundary condition function at the left endpoint from a
/// spectrum alone: weighted spectral sums -> identity system -> polynomial
/// coefficients -> rational Herglotz-Nevanlinna function of the given index.
HerglotzFunction recover_boundary_function(const Spectrum& spectrum, int index,
                                           bool with_tail = true);

/// Same recovery for the right endpoint, using the reflected data.
HerglotzFunction recover_right_function(const Spectrum& spectrum, int index,
                                        bool with_tail = true);

struct RecoveryResult {
    Spectrum completed;            ///< input data with every hole filled
    std::vector<double> residuals; ///< final scaled identity residuals
    int iterations = 0;            ///< Gauss-Newton iterations used
};

/// Fills in missing eigenvalues, norming constants, or solution ratios given
/// both boundary condition functions.  The known boundary data fixes the
/// exact values of the weighted spectral sums at both endpoints; the missing
/// numbers are found by matching the sums computed from the completed data
/// against those targets with a damped Gauss-Newton iteration.
RecoveryResult recover_missing(const PartialSpectrum& partial,
                               const HerglotzFunction& left,
                               const HerglotzFunction& right);

} // namespace hnbc
