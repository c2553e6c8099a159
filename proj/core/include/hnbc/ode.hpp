#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "hnbc/errors.hpp"

namespace hnbc {

/// Controls for the adaptive Runge-Kutta stepper.
struct OdeParams {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    long max_steps = 8'000'000; // across one integrate_ode call
};

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction) with the
/// Dormand-Prince 5(4) embedded pair, FSAL and an elementary step
/// controller.  The right-hand side must be smooth on the integration
/// span; callers split at kinks.  Throws IntegrationFailure when the step
/// size underflows or the step budget is exhausted.
template <std::size_t N, class Rhs>
std::array<double, N> integrate_ode(Rhs&& rhs, std::array<double, N> y,
                                    double x0, double x1, const OdeParams& params) {
    using State = std::array<double, N>;

    const double span = x1 - x0;
    if (span == 0.0)
        return y;
    const double direction = span > 0.0 ? 1.0 : -1.0;
    const double min_step = 1e-14 * (std::abs(x0) + std::abs(x1) + 1.0);

    // Dormand-Prince 5(4) tableau.
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                     a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // Difference between the 5th-order solution and the embedded 4th-order
    // one.
    constexpr double e1 = b1 - 5179.0 / 57600.0;
    constexpr double e3 = b3 - 7571.0 / 16695.0;
    constexpr double e4 = b4 - 393.0 / 640.0;
    constexpr double e5 = b5 + 92097.0 / 339200.0;
    constexpr double e6 = b6 - 187.0 / 2100.0;
    constexpr double e7 = -1.0 / 40.0;

    State k1, k2, k3, k4, k5, k6, k7, tmp, y_next;
    rhs(x0, y, k1); // k1 always holds rhs at the current (x, y)

    double x = x0;
    double h = direction * std::min(std::abs(span), 0.1);

    for (long step = 0; step < params.max_steps; ++step) {
        if (direction * (x1 - x) <= 0.0)
            return y;
        if (direction * (x + h) > direction * x1)
            h = x1 - x;
        if (std::abs(h) < min_step)
            throw IntegrationFailure("step size underflow in the adaptive stepper");

        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * a21 * k1[i];
        rhs(x + h / 5.0, tmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + 3.0 * h / 10.0, tmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(x + 4.0 * h / 5.0, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(x + 8.0 * h / 9.0, tmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        rhs(x + h, tmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            y_next[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                    b5 * k5[i] + b6 * k6[i]);
        rhs(x + h, y_next, k7);

        // Scaled RMS error of the embedded difference.
        double err_sq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double err_i = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                      e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = params.abs_tol +
                                 params.rel_tol * std::max(std::abs(y[i]), std::abs(y_next[i]));
            const double r = err_i / scale;
            err_sq += r * r;
        }
        const double err = std::sqrt(err_sq / static_cast<double>(N));
        if (!std::isfinite(err))
            throw IntegrationFailure("non-finite state in the adaptive stepper");

        if (err <= 1.0) {
            x += h;
            y = y_next;
            k1 = k7; // FSAL; on rejection k1 still matches the unchanged (x, y)
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    throw IntegrationFailure("step budget exhausted in the adaptive stepper");
}

} // namespace hnbc
