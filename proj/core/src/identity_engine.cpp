#include "hnbc/identity_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "hnbc/errors.hpp"

namespace hnbc {

namespace {

void check_orders(int k, int m, std::size_t sigma_size) {
    if (m < 0)
        throw IndexOutOfRange("identity system order must be nonnegative");
    if (k < 0 || k > m)
        throw IndexOutOfRange("identity row index out of range");
    if (sigma_size < static_cast<std::size_t>(m) + 1)
        throw DimensionMismatch("need sigma_0..sigma_m to assemble an identity row");
}

Eigen::MatrixXd full_system(const std::vector<double>& sigma, int m) {
    Eigen::MatrixXd A(m + 1, m + 2);
    for (int k = 0; k <= m; ++k) {
        const std::vector<double> row = identity_row(k, m, sigma);
        for (int j = 0; j <= m + 1; ++j)
            A(k, j) = row[j];
    }
    return A;
}

Eigen::LLT<Eigen::MatrixXd> factor_or_throw(const Eigen::MatrixXd& H) {
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite(
            "moment matrix of the identity system is not positive definite; "
            "the sigma values are not consistent with an admissible boundary "
            "condition of this index");
    return llt;
}

/// Shared matrix of solve_for_sigma and system_determinant.
Eigen::MatrixXd sigma_system(const OmegaVector& omega) {
    const int m = omega.index;
    const auto w = [&](int j) { return j == 0 ? 1.0 : omega.coeffs[j - 1]; };
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int k = 0; k <= m; ++k) {
        const int i_lo = -(k / 2);
        const int i_hi = (m + 1 - k) / 2;
        for (int s = 0; s <= m; ++s) {
            const int i = m - s - k;
            if (i < i_lo || i > i_hi)
                continue;
            M(k, s) = w(2 * i + k);
        }
    }
    return M;
}

struct FitWindow {
    double slope = 0.0;
    double intercept = 0.0; // of log(term) against log(n - L)
    int points = 0;
};

FitWindow fit_decay(const std::vector<double>& terms, double L) {
    const int count = static_cast<int>(terms.size());
    FitWindow fit;
    std::vector<double> xs, ys;
    for (int n = count / 2; n < count; ++n) {
        const double offset = static_cast<double>(n) - L;
        if (offset < 1.0 || !(terms[n] > 0.0))
            continue;
        xs.push_back(std::log(offset));
        ys.push_back(std::log(terms[n]));
    }
    fit.points = static_cast<int>(xs.size());
    if (fit.points < 4)
        return fit;
    double xm = 0.0, ym = 0.0;
    for (int i = 0; i < fit.points; ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= fit.points;
    ym /= fit.points;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < fit.points; ++i) {
        sxy += (xs[i] - xm) * (ys[i] - ym);
        sxx += (xs[i] - xm) * (xs[i] - xm);
    }
    if (sxx == 0.0) {
        fit.points = 0;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    return fit;
}

ParsevalSum accumulate_squares(const Spectrum& spectrum,
                               const std::function<double(double)>& boundary_value) {
    spectrum.validate();
    ParsevalSum out;
    std::vector<double> terms;
    terms.reserve(spectrum.data.size());
    double acc = 0.0;
    for (const SpectralDatum& d : spectrum.data) {
        const double b = boundary_value(d.lambda);
        const double term = b * b / d.gamma;
        terms.push_back(term);
        acc += term;
        out.partial_sums.push_back(acc);
    }
    out.value = acc;
    const FitWindow fit = fit_decay(terms, spectrum.L);
    if (fit.points >= 4 && fit.slope < -1.0) {
        out.converged = true;
        // Tail of C * (n - L)^p past the data by the midpoint integral.
        const double edge =
            static_cast<double>(terms.size()) - 0.5 - spectrum.L;
        if (edge > 1.0)
            out.value += std::exp(fit.intercept) *
                         std::pow(edge, fit.slope + 1.0) / (-fit.slope - 1.0);
    }
    return out;
}

} // namespace

std::vector<double> identity_row(int k, int m, const std::vector<double>& sigma) {
    check_orders(k, m, sigma.size());
    std::vector<double> row(m + 2, 0.0);
    if (k == 0)
        row[1] += 1.0;
    if (k == 1)
        row[0] -= 1.0;
    const int i_lo = -(k / 2);
    const int i_hi = (m + 1 - k) / 2;
    for (int i = i_lo; i <= i_hi; ++i)
        row[2 * i + k] += sigma[m - i - k];
    return row;
}

std::vector<double> identity_residuals(const std::vector<double>& sigma,
                                       const OmegaVector& omega) {
    omega.validate();
    const int m = omega.index;
    check_orders(0, m, sigma.size());
    std::vector<double> residuals(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        const std::vector<double> row = identity_row(k, m, sigma);
        double r = row[0];
        for (int j = 1; j <= m + 1; ++j)
            r += row[j] * omega.coeffs[j - 1];
        residuals[k] = r;
    }
    return residuals;
}

std::vector<double> identity_residuals(const SigmaVector& sigma,
                                       const OmegaVector& omega) {
    return identity_residuals(sigma.values, omega);
}

OmegaVector solve_for_omega(const std::vector<double>& sigma, int m) {
    check_orders(0, m, sigma.size());
    const Eigen::MatrixXd A = full_system(sigma, m);
    OmegaVector out;
    out.index = m;
    out.coeffs.assign(m + 1, 0.0);
    std::vector<double>& w = out.coeffs; // w[j-1] holds omega_j

    if (m % 2 == 1) {
        // Odd index: the odd-row/odd-column block is the Hankel moment
        // matrix; it also reappears as the even-row/even-column block.
        const int d = (m - 1) / 2;
        Eigen::MatrixXd H(d + 1, d + 1);
        for (int j = 0; j <= d; ++j)
            for (int l = 0; l <= d; ++l)
                H(j, l) = A(2 * j + 1, 2 * l + 1);
        const auto llt = factor_or_throw(H);

        Eigen::VectorXd rhs(d + 1);
        for (int j = 0; j <= d; ++j)
            rhs(j) = -A(2 * j + 1, 0);
        const Eigen::VectorXd odd = llt.solve(rhs);
        for (int l = 0; l <= d; ++l)
            w[2 * l] = odd(l); // omega_{2l+1}

        for (int j = 0; j <= d; ++j)
            rhs(j) = -A(2 * j, 0) - A(2 * j, 1) * w[0];
        const Eigen::VectorXd even = llt.solve(rhs);
        for (int l = 0; l <= d; ++l)
            w[2 * l + 1] = even(l); // omega_{2l+2}
        return out;
    }

    const int d = m / 2;
    if (d == 0) {
        w[0] = -A(0, 0) / A(0, 1);
        return out;
    }
    // Even index: the interior even block is the Hankel moment matrix and is
    // shared with the odd stage; row 0 then yields omega_1.
    Eigen::MatrixXd B(d, d);
    for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
            B(j, l) = A(2 * (j + 1), 2 * (l + 1));
    const auto llt = factor_or_throw(B);

    Eigen::VectorXd rhs(d);
    for (int j = 0; j < d; ++j)
        rhs(j) = -A(2 * (j + 1), 0);
    const Eigen::VectorXd even = llt.solve(rhs);
    for (int l = 0; l < d; ++l)
        w[2 * l + 1] = even(l); // omega_{2l+2}

    double acc = A(0, 0);
    for (int l = 0; l < d; ++l)
        acc += A(0, 2 * l + 2) * even(l);
    w[0] = -acc / A(0, 1);

    for (int j = 0; j < d; ++j)
        rhs(j) = -A(2 * j + 1, 0) - A(2 * j + 1, 1) * w[0];
    const Eigen::VectorXd odd = llt.solve(rhs);
    for (int l = 0; l < d; ++l)
        w[2 * l + 2] = odd(l); // omega_{2l+3}
    return out;
}

OmegaVector solve_for_omega(const SigmaVector& sigma) {
    return solve_for_omega(sigma.values, sigma.index);
}

SigmaVector solve_for_sigma(const OmegaVector& omega) {
    omega.validate();
    const int m = omega.index;
    const Eigen::MatrixXd M = sigma_system(omega);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs(0) = -omega.coeffs[0];
    if (m >= 1)
        rhs(1) = 1.0;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    double scale = 1.0;
    for (int k = 0; k <= m; ++k)
        scale *= M.row(k).norm();
    const double det = std::abs(lu.determinant());
    if (!(det > 1e-12 * scale))
        throw SingularSystem(
            "system for the sigma values is numerically singular; the "
            "boundary polynomial pair is degenerate");

    const Eigen::VectorXd x = lu.solve(rhs);
    SigmaVector out;
    out.index = m;
    out.values.assign(x.data(), x.data() + m + 1);
    out.tail_estimates.assign(m + 1, 0.0);
    out.n_used = 0;
    return out;
}

double system_determinant(const OmegaVector& omega) {
    omega.validate();
    return std::abs(sigma_system(omega).partialPivLu().determinant());
}

ParsevalSum parseval_weight(const Spectrum& spectrum, const HerglotzFunction& left,
                            int pole_index) {
    const auto& poles = left.poles();
    if (pole_index < 0 || pole_index >= static_cast<int>(poles.size()))
        throw IndexOutOfRange("pole index out of range");
    const double norm = left.slope() > 0.0 ? 1.0 / left.slope() : 1.0;
    const auto reduced = [&](double lambda) {
        double value = norm;
        for (int j = 0; j < static_cast<int>(poles.size()); ++j)
            if (j != pole_index)
                value *= poles[j].location - lambda;
        return value;
    };
    return accumulate_squares(spectrum, reduced);
}

ParsevalSum parseval_slope(const Spectrum& spectrum, const HerglotzFunction& left) {
    const Polynomial den = left.rational_form().denominator;
    return accumulate_squares(spectrum,
                              [&den](double lambda) { return den(lambda); });
}

Spectrum reflected_spectrum(const Spectrum& spectrum) {
    spectrum.validate();
    Spectrum out;
    out.L = spectrum.L;
    out.tail_constant = spectrum.tail_constant;
    out.ind_f = spectrum.ind_F;
    out.ind_F = spectrum.ind_f;
    out.data.reserve(spectrum.data.size());
    for (const SpectralDatum& d : spectrum.data) {
        if (d.beta == 0.0 || !std::isfinite(d.beta))
            throw DegenerateInput(
                "reflection requires finite nonzero solution ratios");
        out.data.push_back({d.n, d.lambda, d.beta * d.beta * d.gamma,
                            1.0 / d.beta, d.chi_prime});
    }
    out.validate();
    return out;
}

} // namespace hnbc
