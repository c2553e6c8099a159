#include "hnbc/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "hnbc/errors.hpp"
#include "hnbc/identity_engine.hpp"

namespace hnbc {

namespace {

constexpr double pi = interval_length;

enum class Field { lambda, gamma, beta };

struct UnknownRef {
    int datum = 0;
    Field field = Field::lambda;
};

/// Builds a full Spectrum from the partial data with the unknown slots
/// filled from u (in UnknownRef order).  chi_prime is reconstructed from
/// beta * gamma where the ratio is available.
Spectrum assemble(const PartialSpectrum& partial,
                  const std::vector<UnknownRef>& unknowns,
                  const Eigen::VectorXd& u) {
    Spectrum sp;
    sp.L = partial.L;
    sp.tail_constant = partial.tail_constant;
    sp.ind_f = partial.ind_f;
    sp.ind_F = partial.ind_F;
    sp.data.reserve(partial.data.size());
    for (const PartialDatum& d : partial.data)
        sp.data.push_back({d.n, d.lambda.value_or(0.0), d.gamma.value_or(1.0),
                           d.beta.value_or(partial.with_beta ? 0.0 : 1.0), 0.0});
    for (int i = 0; i < static_cast<int>(unknowns.size()); ++i) {
        SpectralDatum& d = sp.data[unknowns[i].datum];
        switch (unknowns[i].field) {
        case Field::lambda: d.lambda = u(i); break;
        case Field::gamma: d.gamma = u(i); break;
        case Field::beta: d.beta = u(i); break;
        }
    }
    for (SpectralDatum& d : sp.data)
        d.chi_prime = d.beta * d.gamma;
    return sp;
}

/// One selected identity equation: a sum order within the left or the
/// mirrored (right-endpoint) block.
struct EquationRef {
    bool right = false;
    int order = 0;
};

struct Targets {
    std::vector<double> left, right;  // exact sigma values, every order
    std::vector<double> scale_left, scale_right;
    std::vector<EquationRef> equations; // selected rows, evaluation order
};

/// Scaled residuals of the completed spectrum against the exact sums, or
/// nothing when the trial data is not an admissible spectrum.  Only the
/// selected equations enter.
std::optional<Eigen::VectorXd> scaled_residual(const PartialSpectrum& partial,
                                               const std::vector<UnknownRef>& unknowns,
                                               const Targets& targets,
                                               const Eigen::VectorXd& u) {
    try {
        const Spectrum sp = assemble(partial, unknowns, u);
        bool need_left = false, need_right = false;
        for (const EquationRef& eq : targets.equations)
            (eq.right ? need_right : need_left) = true;
        SigmaVector left, right;
        if (need_left)
            left = sigma_vector(sp, partial.ind_f);
        if (need_right)
            right = sigma_vector(reflected_spectrum(sp), partial.ind_F);
        Eigen::VectorXd r(targets.equations.size());
        for (std::size_t k = 0; k < targets.equations.size(); ++k) {
            const EquationRef& eq = targets.equations[k];
            r(k) = eq.right ? (right.values[eq.order] -
                               targets.right[eq.order]) /
                                  targets.scale_right[eq.order]
                            : (left.values[eq.order] -
                               targets.left[eq.order]) /
                                  targets.scale_left[eq.order];
        }
        return r;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::vector<double> scales_for(const std::vector<double>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values)
        out.push_back(std::max(1.0, std::abs(v)));
    return out;
}

} // namespace

void PartialSpectrum::validate() const {
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i].n != static_cast<int>(i))
            throw DimensionMismatch(
                "partial spectrum indices must run 0..N-1 in order");
    double prev = -std::numeric_limits<double>::infinity();
    for (const PartialDatum& d : data) {
        if (!d.lambda)
            continue;
        if (!(*d.lambda > prev))
            throw DimensionMismatch(
                "known eigenvalues must be strictly increasing");
        prev = *d.lambda;
    }
    for (const PartialDatum& d : data)
        if (d.gamma && !(*d.gamma > 0.0))
            throw NonPositiveNorming(
                "known norming constants must be positive");
    if (!with_beta)
        for (const PartialDatum& d : data)
            if (d.beta)
                throw DimensionMismatch(
                    "ratio values present although with_beta is false");
}

HerglotzFunction recover_boundary_function(const Spectrum& spectrum, int index,
                                           bool with_tail) {
    if (index < 0)
        throw IndexOutOfRange("boundary function index must be nonnegative");
    if (!sums_converge_at(spectrum, index))
        throw NotHerglotz(
            "spectral sums do not converge at index " + std::to_string(index) +
            ": wrong index for this data, or data insufficient");
    const SigmaVector sums = sigma_vector(spectrum, index, with_tail);
    return herglotz_from_omega(solve_for_omega(sums));
}

HerglotzFunction recover_right_function(const Spectrum& spectrum, int index,
                                        bool with_tail) {
    return recover_boundary_function(reflected_spectrum(spectrum), index,
                                     with_tail);
}

RecoveryResult recover_missing(const PartialSpectrum& partial,
                               const HerglotzFunction& left,
                               const HerglotzFunction& right) {
    partial.validate();
    const OmegaVector omega_left = omega_vector(left);
    const OmegaVector omega_right = omega_vector(right);
    if (omega_left.index != partial.ind_f || omega_right.index != partial.ind_F)
        throw DimensionMismatch(
            "boundary function indices disagree with the partial spectrum");

    const bool use_right = partial.with_beta;
    std::vector<UnknownRef> unknowns;
    int beta_unknowns = 0;
    int lambda_unknowns = 0;
    for (const PartialDatum& d : partial.data) {
        if (!d.lambda) {
            unknowns.push_back({d.n, Field::lambda});
            ++lambda_unknowns;
        }
        if (!d.gamma)
            unknowns.push_back({d.n, Field::gamma});
        if (partial.with_beta && !d.beta) {
            unknowns.push_back({d.n, Field::beta});
            ++beta_unknowns;
        }
    }
    const int total = static_cast<int>(unknowns.size());

    Targets targets;
    targets.left = solve_for_sigma(omega_left).values;
    targets.scale_left = scales_for(targets.left);
    if (use_right) {
        targets.right = solve_for_sigma(omega_right).values;
        targets.scale_right = scales_for(targets.right);
    }

    // Square equation selection: as many equations as unknowns, preferring
    // the best-converged (lowest order) sums, subject to two structural
    // quotas.  Ratio unknowns enter only the mirrored block, so they reserve
    // right-endpoint rows; eigenvalue unknowns vanish from the order-zero
    // sums (which weight each level by 1/gamma alone), so they reserve rows
    // of order at least one.
    std::vector<EquationRef> pool;
    for (int k = 0; k <= partial.ind_f; ++k)
        pool.push_back({false, k});
    if (use_right)
        for (int k = 0; k <= partial.ind_F; ++k)
            pool.push_back({true, k});
    std::stable_sort(pool.begin(), pool.end(),
                     [](const EquationRef& a, const EquationRef& b) {
                         return a.order < b.order;
                     });

    if (total == 0) {
        // Nothing to recover: evaluate every available equation as a
        // diagnostic.
        targets.equations = pool;
    } else {
        if (total > static_cast<int>(pool.size()))
            throw UnderdeterminedProblem(
                std::to_string(total) + " unknown values but only " +
                std::to_string(pool.size()) +
                " identity equations are available");
        std::vector<char> taken(pool.size(), 0);
        int high_order = 0;
        auto take = [&](std::size_t i) {
            taken[i] = 1;
            targets.equations.push_back(pool[i]);
            if (pool[i].order >= 1)
                ++high_order;
        };
        int right_quota = beta_unknowns;
        for (std::size_t i = 0; i < pool.size() && right_quota > 0; ++i)
            if (!taken[i] && pool[i].right) {
                take(i);
                --right_quota;
            }
        if (right_quota > 0)
            throw UnderdeterminedProblem(
                "more unknown solution ratios than mirrored identity "
                "equations");
        for (std::size_t i = 0;
             i < pool.size() && high_order < lambda_unknowns &&
             static_cast<int>(targets.equations.size()) < total;
             ++i)
            if (!taken[i] && pool[i].order >= 1)
                take(i);
        if (high_order < lambda_unknowns)
            throw UnderdeterminedProblem(
                "unknown eigenvalues cannot be determined: the order-zero "
                "sums do not depend on them and no higher-order identity "
                "equations are left");
        for (std::size_t i = 0;
             i < pool.size() &&
             static_cast<int>(targets.equations.size()) < total;
             ++i)
            if (!taken[i])
                take(i);
    }

    // Initial guesses from the asymptotic models; runs of consecutive
    // unguessed eigenvalues are spread between their anchored neighbours.
    // Explicit per-datum guesses count as anchors.
    const double s = 2.0 * partial.tail_constant / pi;
    const int count = static_cast<int>(partial.data.size());
    std::vector<double> lambda_guess(count);
    std::vector<bool> anchored(count);
    for (int i = 0; i < count; ++i) {
        const PartialDatum& d = partial.data[i];
        const double off = static_cast<double>(i) - partial.L;
        lambda_guess[i] =
            d.lambda ? *d.lambda : d.lambda_guess.value_or(off * off + s);
        anchored[i] = d.lambda.has_value() || d.lambda_guess.has_value();
    }
    for (int i = 0; i < count;) {
        if (anchored[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j < count && !anchored[j])
            ++j;
        const bool has_lo = i > 0;
        const bool has_hi = j < count;
        if (has_lo && has_hi) {
            const double a = lambda_guess[i - 1];
            const double b = lambda_guess[j];
            for (int t = i; t < j; ++t)
                lambda_guess[t] =
                    a + (b - a) * static_cast<double>(t - i + 1) /
                            static_cast<double>(j - i + 1);
        } else if (has_lo) {
            for (int t = i; t < j; ++t)
                lambda_guess[t] = std::max(
                    lambda_guess[t], lambda_guess[t - 1] + 1.0);
        } else if (has_hi) {
            for (int t = j - 1; t >= i; --t)
                lambda_guess[t] = std::min(
                    lambda_guess[t], lambda_guess[t + 1] - 1.0);
        }
        i = j;
    }

    Eigen::VectorXd u(unknowns.size());
    for (int i = 0; i < static_cast<int>(unknowns.size()); ++i) {
        const UnknownRef& ref = unknowns[i];
        const PartialDatum& d = partial.data[ref.datum];
        const double lam = lambda_guess[ref.datum];
        const double base = std::max(std::abs(lam), 1.0);
        switch (ref.field) {
        case Field::lambda:
            u(i) = lam;
            break;
        case Field::gamma:
            u(i) = d.gamma_guess.value_or(0.5 * pi *
                                          std::pow(base, partial.ind_f));
            break;
        case Field::beta:
            u(i) = d.beta_guess.value_or(
                (ref.datum % 2 == 0 ? 1.0 : -1.0) *
                std::pow(base, 0.5 * (partial.ind_F - partial.ind_f)));
            break;
        }
    }

    auto eval = [&](const Eigen::VectorXd& v) {
        return scaled_residual(partial, unknowns, targets, v);
    };

    auto r = eval(u);
    if (!r)
        throw NoConvergence(
            "initial guesses do not form an admissible spectrum");
    double cost = r->norm();
    int iter = 0;
    const int max_iter = 60;
    for (; iter < max_iter && !unknowns.empty(); ++iter) {
        if (r->lpNorm<Eigen::Infinity>() < 1e-8)
            break;
        Eigen::MatrixXd J(r->size(), unknowns.size());
        bool jacobian_ok = true;
        for (int i = 0; i < static_cast<int>(unknowns.size()); ++i) {
            double h = 1e-6 * (1.0 + std::abs(u(i)));
            Eigen::VectorXd probe = u;
            probe(i) += h;
            auto rp = eval(probe);
            if (!rp) {
                probe(i) = u(i) - h;
                h = -h;
                rp = eval(probe);
            }
            if (!rp) {
                jacobian_ok = false;
                break;
            }
            J.col(i) = (*rp - *r) / h;
        }
        if (!jacobian_ok)
            throw NoConvergence("cannot probe the identity residuals near the "
                                "current iterate");
        const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-*r);
        bool accepted = false;
        double t = 1.0;
        for (int half = 0; half < 9; ++half, t *= 0.5) {
            const auto rt = eval(u + t * step);
            if (rt && rt->norm() < cost) {
                u += t * step;
                r = rt;
                cost = r->norm();
                accepted = true;
                break;
            }
        }
        if (!accepted)
            break; // residual floor of the tail model reached
    }
    // With nothing to recover the call is an identity on the data and the
    // residuals are reported as diagnostics only.
    if (!unknowns.empty() && r->lpNorm<Eigen::Infinity>() > 1e-5)
        throw NoConvergence(
            "identity residuals stalled at " +
            std::to_string(r->lpNorm<Eigen::Infinity>()) +
            "; missing data not recovered to tolerance");

    RecoveryResult out;
    out.completed = assemble(partial, unknowns, u);
    try {
        out.completed.validate();
    } catch (const Error&) {
        throw NoConvergence(
            "recovered values violate spectrum ordering or positivity");
    }
    out.residuals.assign(r->data(), r->data() + r->size());
    out.iterations = iter;
    return out;
}

} // namespace hnbc
