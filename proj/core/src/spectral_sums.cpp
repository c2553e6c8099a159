#include "hnbc/spectral_sums.hpp"

#include <algorithm>
#include <cmath>

#include "hnbc/errors.hpp"

namespace hnbc {

namespace {

constexpr double pi = interval_length;
constexpr double two_over_pi = 2.0 / pi;

double regularizer(int n, double L) {
    const double offset = static_cast<double>(n) - L;
    if (offset < -0.25)
        return 0.0;
    if (offset < 0.25)
        return 1.0 / pi;
    return two_over_pi;
}

/// The term model keeps its sign even when the fitted shift s drags
/// (n - L)^2 + s near zero for early n.
double shifted_square(double v, double s) {
    return std::max(v + s, 0.25 * v);
}

/// sum_{n >= first} ((n - L)^2 + s)^(-q) for q >= 1: direct terms until the
/// shift s is negligible, then a second-order expansion in s with the pure
/// power sums done by a midpoint-corrected integral.
double model_tail_sum(int q, int first, double L, double s) {
    const int far = std::max(first, static_cast<int>(std::ceil(L)) + 1000);
    double acc = 0.0;
    for (int n = first; n < far; ++n) {
        const double offset = static_cast<double>(n) - L;
        acc += std::pow(shifted_square(offset * offset, s), -q);
    }
    const double t = static_cast<double>(far) - 0.5 - L;
    const auto power_sum = [t](int p) {
        return std::pow(t, 1.0 - p) / (p - 1.0) -
               (static_cast<double>(p) / 24.0) * std::pow(t, -p - 1.0);
    };
    const double qd = static_cast<double>(q);
    acc += power_sum(2 * q) - qd * s * power_sum(2 * q + 2) +
           0.5 * qd * (qd + 1.0) * s * s * power_sum(2 * q + 4);
    return acc;
}

double plain_partial(const Spectrum& spectrum, int k) {
    double acc = 0.0;
    for (const SpectralDatum& d : spectrum.data)
        acc += std::pow(d.lambda, k) / d.gamma;
    return acc;
}

double top_partial(const Spectrum& spectrum, int k) {
    double acc = 0.0;
    for (const SpectralDatum& d : spectrum.data)
        acc += std::pow(d.lambda, k) / d.gamma - regularizer(d.n, spectrum.L);
    return acc;
}

/// One sum of order k against top order m.  The tail correction models the
/// terms past the data as (2/pi) ((n - L)^2 + s)^(k - m) and fits one
/// further order of decay to the trailing quarter of the data.
SigmaTerm sigma_entry(const Spectrum& spectrum, int k, int m, bool with_tail) {
    const int count = static_cast<int>(spectrum.data.size());
    const double L = spectrum.L;
    const double s = two_over_pi * spectrum.tail_constant;
    const int q = m - k;

    SigmaTerm out;
    const double partial =
        k == m ? top_partial(spectrum, k) : plain_partial(spectrum, k);

    const bool enough_data = with_tail && count >= std::max(8.0, L + 4.0);
    double tail = 0.0;
    if (enough_data) {
        if (q > 0)
            tail += two_over_pi * model_tail_sum(q, count, L, s);
        // Fit one further order c * ((n-L)^2 + s)^-(q+1) to the residual
        // of the model on the trailing quarter of the data.
        const int window = std::max(5, count / 4);
        double dot = 0.0, norm = 0.0;
        for (int j = std::max(0, count - window); j < count; ++j) {
            const SpectralDatum& d = spectrum.data[j];
            const double offset = static_cast<double>(d.n) - L;
            if (offset < 1.0)
                continue;
            const double denom = shifted_square(offset * offset, s);
            const double base =
                q == 0 ? two_over_pi : two_over_pi * std::pow(denom, -q);
            const double residual = std::pow(d.lambda, k) / d.gamma - base;
            const double basis = std::pow(denom, -(q + 1));
            dot += residual * basis;
            norm += basis * basis;
        }
        if (norm > 0.0)
            tail += (dot / norm) * model_tail_sum(q + 1, count, L, s);
    }
    out.value = partial + tail;
    out.tail_estimate = tail;
    return out;
}

} // namespace

SigmaTerm sigma_plain(const Spectrum& spectrum, int k, bool with_tail) {
    if (k < 0 || k >= spectrum.ind_f)
        throw IndexOutOfRange(
            "sigma_plain order must lie strictly below the boundary index");
    return sigma_entry(spectrum, k, spectrum.ind_f, with_tail);
}

SigmaTerm sigma_top(const Spectrum& spectrum, bool with_tail) {
    return sigma_entry(spectrum, spectrum.ind_f, spectrum.ind_f, with_tail);
}

bool sums_converge_at(const Spectrum& spectrum, int top_order) {
    const int count = static_cast<int>(spectrum.data.size());
    if (count < 8)
        return true;
    for (int k = 0; k <= top_order; ++k) {
        // Least-squares slope of log |term| against log (n - L) over the
        // trailing half; convergence needs decay faster than 1/(n - L).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int points = 0;
        for (int j = count / 2; j < count; ++j) {
            const SpectralDatum& d = spectrum.data[j];
            const double offset = static_cast<double>(d.n) - spectrum.L;
            if (offset < 1.0)
                continue;
            double term = std::pow(d.lambda, k) / d.gamma;
            if (k == top_order)
                term -= regularizer(d.n, spectrum.L);
            if (std::abs(term) <= 1e-6 * two_over_pi)
                continue;
            const double x = std::log(offset);
            const double y = std::log(std::abs(term));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++points;
        }
        if (points < 4)
            continue; // all-but-negligible terms: trivially summable
        const double denom = points * sxx - sx * sx;
        if (denom <= 0.0)
            continue;
        const double slope = (points * sxy - sx * sy) / denom;
        if (slope >= -1.0)
            return false;
    }
    return true;
}

SigmaVector sigma_vector(const Spectrum& spectrum, int top_order,
                         bool with_tail) {
    spectrum.validate();
    const int m = top_order < 0 ? spectrum.ind_f : top_order;

    SigmaVector out;
    out.index = m;
    out.n_used = static_cast<int>(spectrum.data.size());
    out.values.assign(m + 1, 0.0);
    out.tail_estimates.assign(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        const SigmaTerm term = sigma_entry(spectrum, k, m, with_tail);
        out.values[k] = term.value;
        out.tail_estimates[k] = term.tail_estimate;
    }
    return out;
}

} // namespace hnbc
