#pragma once

#include <vector>

#include "hnbc/problem.hpp"

namespace hnbc {

/// Power sums of a spectrum weighted by reciprocal norming constants,
/// sigma_k = sum_n lambda_n^k / gamma_n.  Orders below the top one (the
/// index m of the left boundary function) converge as they stand; the top
/// order only converges after a termwise regularizer is removed.
struct SigmaVector {
    int index = 0;                      ///< top order m; values holds m + 1 entries
    std::vector<double> values;         ///< sigma_0 .. sigma_m, tail-corrected
    std::vector<double> tail_estimates; ///< correction added to each entry
    int n_used = 0;                     ///< number of spectrum entries consumed
};

/// One sum together with the tail correction that was added to it.
struct SigmaTerm {
    double value = 0.0;
    double tail_estimate = 0.0;
};

/// Convergent sum of order k < m, where m = spectrum.ind_f: partial sum over
/// the stored data plus (optionally) a model-based estimate of the truncated
/// remainder.  Throws IndexOutOfRange unless 0 <= k < m.
SigmaTerm sigma_plain(const Spectrum& spectrum, int k, bool with_tail = true);

/// Regularized top-order sum k = m: each term drops a convergence
/// regularizer that depends on its position against the index offset L of
/// the spectrum -- nothing below L, 1/pi at n == L, 2/pi above L.
SigmaTerm sigma_top(const Spectrum& spectrum, bool with_tail = true);

/// All sums sigma_0 .. sigma_m in one vector.  top_order < 0 means "use
/// spectrum.ind_f"; recovery callers pass their hypothesized index instead.
/// The tail estimate per entry combines the asymptotic term model past the
/// data with one further order fitted to the trailing quarter of the data.
SigmaVector sigma_vector(const Spectrum& spectrum, int top_order = -1,
                         bool with_tail = true);

/// Convergence screen for the sums at hypothesized top order m: fits the
/// decay of the summands over the trailing half of the data and reports
/// whether every order's terms shrink fast enough to sum.  At a wrong
/// (too large) order the lower sums diverge and their terms plateau, which
/// this detects.  Negligibly small terms count as convergent; fewer than 8
/// data points (or too few usable fit points) return true.
bool sums_converge_at(const Spectrum& spectrum, int top_order);

} // namespace hnbc
