#include "hnbc/direct_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hnbc/errors.hpp"
#include "hnbc/ode.hpp"

namespace hnbc {

namespace {

constexpr double pi = interval_length;

/// Everything derived from a Problem that root scanning reuses thousands of
/// times: boundary polynomials with derivatives, smooth-piece boundaries of
/// the potential, stepper parameters.
struct SolveCache {
    Polynomial f_num, f_den, f_num_deriv, f_den_deriv;
    Polynomial F_num, F_den, F_num_deriv, F_den_deriv;
    std::vector<double> breakpoints; // ascending, includes 0 and pi
    OdeParams ode;
};

SolveCache make_cache(const Problem& problem) {
    SolveCache cache;
    const RationalForm left = problem.f.rational_form();
    const RationalForm right = problem.F.rational_form();
    cache.f_num = left.numerator;
    cache.f_den = left.denominator;
    cache.f_num_deriv = cache.f_num.derivative();
    cache.f_den_deriv = cache.f_den.derivative();
    cache.F_num = right.numerator;
    cache.F_den = right.denominator;
    cache.F_num_deriv = cache.F_num.derivative();
    cache.F_den_deriv = cache.F_den.derivative();
    cache.breakpoints.push_back(0.0);
    problem.q.append_interior_breakpoints(cache.breakpoints);
    cache.breakpoints.push_back(pi);
    cache.ode.rel_tol = problem.solver.ode_rel_tol;
    cache.ode.abs_tol = problem.solver.ode_abs_tol;
    return cache;
}

/// phi, phi', their lambda-derivatives, and the running norm integral.
struct LeftRhs {
    const Potential& q;
    double lambda;
    void operator()(double x, const std::array<double, 5>& y,
                    std::array<double, 5>& dy) const {
        const double w = q(x) - lambda;
        dy[0] = y[1];
        dy[1] = w * y[0];
        dy[2] = y[3];
        dy[3] = w * y[2] - y[0];
        dy[4] = y[0] * y[0];
    }
};

/// psi, psi' and their lambda-derivatives (no norm integral needed).
struct RightRhs {
    const Potential& q;
    double lambda;
    void operator()(double x, const std::array<double, 4>& y,
                    std::array<double, 4>& dy) const {
        const double w = q(x) - lambda;
        dy[0] = y[1];
        dy[1] = w * y[0];
        dy[2] = y[3];
        dy[3] = w * y[2] - y[0];
    }
};

LeftSolutionState integrate_left_cached(const Problem& problem,
                                        const SolveCache& cache, double lambda) {
    std::array<double, 5> y = {cache.f_den(lambda), -cache.f_num(lambda),
                               cache.f_den_deriv(lambda), -cache.f_num_deriv(lambda),
                               0.0};
    const LeftRhs rhs{problem.q, lambda};
    for (std::size_t i = 0; i + 1 < cache.breakpoints.size(); ++i)
        y = integrate_ode<5>(rhs, y, cache.breakpoints[i], cache.breakpoints[i + 1],
                             cache.ode);
    return {y[0], y[1], y[2], y[3], y[4]};
}

RightSolutionState integrate_right_cached(const Problem& problem,
                                          const SolveCache& cache, double lambda) {
    std::array<double, 4> y = {cache.F_den(lambda), cache.F_num(lambda),
                               cache.F_den_deriv(lambda), cache.F_num_deriv(lambda)};
    const RightRhs rhs{problem.q, lambda};
    for (std::size_t i = cache.breakpoints.size() - 1; i > 0; --i)
        y = integrate_ode<4>(rhs, y, cache.breakpoints[i], cache.breakpoints[i - 1],
                             cache.ode);
    return {y[0], y[1], y[2], y[3]};
}

CharValue assemble_char(const SolveCache& cache, double lambda,
                        const LeftSolutionState& left) {
    CharValue out;
    out.chi = cache.F_num(lambda) * left.value - cache.F_den(lambda) * left.slope;
    out.chi_prime = cache.F_num_deriv(lambda) * left.value +
                    cache.F_num(lambda) * left.value_dlambda -
                    cache.F_den_deriv(lambda) * left.slope -
                    cache.F_den(lambda) * left.slope_dlambda;
    return out;
}

CharValue char_cached(const Problem& problem, const SolveCache& cache, double lambda) {
    return assemble_char(cache, lambda, integrate_left_cached(problem, cache, lambda));
}

/// Magnitude the two terms of the characteristic assembly would have
/// without cancellation; used for "is chi small" tests.
double char_scale(const SolveCache& cache, double lambda,
                  const LeftSolutionState& left) {
    const double root_scale = std::sqrt(1.0 + std::abs(lambda));
    return (cache.F_num.magnitude_at(lambda) +
            cache.F_den.magnitude_at(lambda) * root_scale) *
               (std::abs(left.value) + std::abs(left.slope) / root_scale) +
           1e-300;
}

/// Safeguarded Newton refinement of a sign-change bracket of chi.
double refine_root(const Problem& problem, const SolveCache& cache, double a,
                   double b, double chi_a, double chi_b, double eigen_tol) {
    double x = b - chi_b * (b - a) / (chi_b - chi_a);
    if (!std::isfinite(x) || !(x > a && x < b))
        x = 0.5 * (a + b);
    for (int iter = 0; iter < 100; ++iter) {
        const CharValue cv = char_cached(problem, cache, x);
        if (cv.chi == 0.0)
            return x;
        if ((cv.chi > 0.0) == (chi_a > 0.0)) {
            a = x;
            chi_a = cv.chi;
        } else {
            b = x;
            chi_b = cv.chi;
        }
        const double tol = eigen_tol * (1.0 + std::abs(x));
        if (b - a <= tol)
            return 0.5 * (a + b);
        double next = x - cv.chi / cv.chi_prime;
        if (!std::isfinite(next) || !(next > a && next < b))
            next = 0.5 * (a + b);
        if (std::abs(next - x) < 0.25 * tol)
            return next;
        x = next;
    }
    return x;
}

/// One scan pass: walks chi over lambda = shift + u|u| on a u-grid of the
/// given step (points kept half a step away from the model root positions)
/// and returns the refined roots found, lowest first.
std::vector<double> scan_roots(const Problem& problem, const SolveCache& cache,
                               double shift, double u_min, double u_top,
                               double step, std::size_t wanted, double stop_u) {
    std::vector<double> roots;
    const double eigen_tol = problem.solver.eigen_tol;
    // Grid points (k + 1/2) * step stay `step/2` away from the integer and
    // half-integer u-positions the asymptotic model predicts for roots.
    long k = static_cast<long>(std::floor(u_min / step - 0.5)) - 1;
    double u_prev = 0.0, lambda_prev = 0.0, chi_prev = 0.0;
    bool have_prev = false;
    for (;; ++k) {
        const double u = (static_cast<double>(k) + 0.5) * step;
        if (u > u_top + 0.5 * step)
            break;
        if (have_prev && roots.size() >= wanted && u_prev >= stop_u)
            break;
        const double lambda = shift + u * std::abs(u);
        double chi = char_cached(problem, cache, lambda).chi;
        if (chi == 0.0) {
            // Landed exactly on a root; nudge so that the sign test on both
            // neighbouring cells sees the crossing.
            const double nudged = lambda + 1e-9 * (1.0 + std::abs(lambda));
            chi = char_cached(problem, cache, nudged).chi;
            if (chi == 0.0)
                chi = std::numeric_limits<double>::min();
        }
        if (have_prev && (chi > 0.0) != (chi_prev > 0.0)) {
            const double root = refine_root(problem, cache, lambda_prev, lambda,
                                            chi_prev, chi, eigen_tol);
            if (roots.empty() ||
                root - roots.back() > 4.0 * eigen_tol * (1.0 + std::abs(root)))
                roots.push_back(root);
        }
        u_prev = u;
        lambda_prev = lambda;
        chi_prev = chi;
        have_prev = true;
    }
    return roots;
}

/// Checks the upper quarter of a candidate root list against the asymptotic
/// position model; a systematic offset there means the scan skipped roots
/// lower down (e.g. a near-double pair inside one cell).
bool tail_positions_consistent(const std::vector<double>& roots, double shift,
                               double L) {
    const std::size_t n = roots.size();
    if (n < 12)
        return true;
    for (std::size_t j = (3 * n) / 4; j < n; ++j) {
        const double model_u = static_cast<double>(j) - L;
        if (model_u <= 2.0)
            continue;
        const double u = std::sqrt(std::max(roots[j] - shift, 0.0));
        if (std::abs(u - model_u) > 0.4)
            return false;
    }
    return true;
}

SpectralDatum make_datum(const Problem& problem, const SolveCache& cache, int n,
                         double lambda) {
    const LeftSolutionState left = integrate_left_cached(problem, cache, lambda);
    const CharValue cv = assemble_char(cache, lambda, left);

    double gamma = left.norm_integral;
    if (!problem.f.coincides_with_pole(lambda))
        gamma += problem.f.norming_term(lambda);
    if (!problem.F.coincides_with_pole(lambda))
        gamma += problem.F.derivative_unguarded(lambda) * left.value * left.value;
    if (!(gamma > 0.0)) {
        std::ostringstream msg;
        msg << "norming constant " << gamma << " at lambda = " << lambda
            << " is not positive";
        throw NonPositiveNorming(msg.str());
    }

    const RightSolutionState right = integrate_right_cached(problem, cache, lambda);
    const double den_value = cache.f_den(lambda);
    const double num_value = cache.f_num(lambda);
    const double den_rel = std::abs(den_value) / (cache.f_den.magnitude_at(lambda) + 1e-300);
    const double num_rel = std::abs(num_value) / (cache.f_num.magnitude_at(lambda) + 1e-300);
    double beta;
    if (den_rel < 1e-12 && num_rel < 1e-12)
        throw DegenerateEigenfunction("both boundary values of the left solution vanish at lambda = " +
                                      std::to_string(lambda));
    if (den_rel >= num_rel)
        beta = right.value / den_value;
    else
        beta = right.slope / (-num_value);

    return {n, lambda, gamma, beta, cv.chi_prime};
}

/// Fits the constant of the model lambda_n ~ (n - L)^2 + 2 c / pi over the
/// top quarter of the computed eigenvalues.
double fit_tail_constant(const std::vector<double>& roots, double L,
                         double fallback) {
    const std::size_t n = roots.size();
    const std::size_t window = std::max<std::size_t>(5, n / 4);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t j = n > window ? n - window : 0; j < n; ++j) {
        const double offset = static_cast<double>(j) - L;
        if (offset < 1.0)
            continue;
        acc += roots[j] - offset * offset;
        ++count;
    }
    if (count == 0)
        return fallback;
    return 0.5 * pi * acc / static_cast<double>(count);
}

double boundary_magnitude(const HerglotzFunction& f) {
    double mag = std::abs(f.offset());
    for (const PoleTerm& p : f.poles())
        mag = std::max(mag, std::abs(p.location));
    return mag;
}

} // namespace

LeftSolutionState integrate_left(const Problem& problem, double lambda) {
    const SolveCache cache = make_cache(problem);
    return integrate_left_cached(problem, cache, lambda);
}

RightSolutionState integrate_right(const Problem& problem, double lambda) {
    const SolveCache cache = make_cache(problem);
    return integrate_right_cached(problem, cache, lambda);
}

CharValue char_function(const Problem& problem, double lambda) {
    const SolveCache cache = make_cache(problem);
    return char_cached(problem, cache, lambda);
}

Spectrum find_eigenvalues(const Problem& problem) {
    problem.solver.validate();
    const SolveCache cache = make_cache(problem);
    const int ind_f = problem.f.index();
    const int ind_F = problem.F.index();
    const double L = 0.5 * static_cast<double>(ind_f + ind_F);
    const std::size_t n_max = static_cast<std::size_t>(problem.solver.n_max);

    // Asymptotically lambda_n = (n - L)^2 + 2 A / pi + o(1) with
    // A = (1/2) int q + (first subleading coefficient of each boundary
    // polynomial); centring the scan on that model keeps one root per cell.
    const double tail_model = 0.5 * problem.q.integral() +
                              omega_vector(problem.f).coeffs.front() +
                              omega_vector(problem.F).coeffs.front();
    const double shift = 2.0 * tail_model / pi;

    const double mag = 1.0 + std::max({problem.q.l1_norm(),
                                       boundary_magnitude(problem.f),
                                       boundary_magnitude(problem.F)});
    const double lambda_low = std::min(-mag * mag, shift - 4.0);
    const double u_min = -std::sqrt(shift - lambda_low);
    const double model_top =
        std::max({static_cast<double>(n_max - 1) - L, L, 0.5});
    const double u_top = model_top + 1.625;

    std::vector<double> roots;
    bool ok = false;
    for (int level = 0; level < 4; ++level) {
        const double step = 0.25 / std::pow(4.0, level);
        roots = scan_roots(problem, cache, shift, u_min, u_top, step, n_max,
                           model_top + 0.55);
        if (roots.size() >= n_max) {
            roots.resize(n_max);
            if (tail_positions_consistent(roots, shift, L)) {
                ok = true;
                break;
            }
        }
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "expected " << n_max << " sign changes of the characteristic "
            << "function below lambda = " << shift + u_top * u_top
            << " but the refined scan found " << roots.size();
        throw BracketingFailure(msg.str());
    }

    Spectrum spectrum;
    spectrum.ind_f = ind_f;
    spectrum.ind_F = ind_F;
    spectrum.L = L;
    spectrum.data.reserve(n_max);
    for (std::size_t n = 0; n < n_max; ++n)
        spectrum.data.push_back(
            make_datum(problem, cache, static_cast<int>(n), roots[n]));
    spectrum.tail_constant = fit_tail_constant(roots, L, tail_model);
    spectrum.validate();
    return spectrum;
}

double norming_constant(const Problem& problem, double lambda_n) {
    const SolveCache cache = make_cache(problem);
    const LeftSolutionState left = integrate_left_cached(problem, cache, lambda_n);
    const CharValue cv = assemble_char(cache, lambda_n, left);
    if (std::abs(cv.chi) > 1e-6 * char_scale(cache, lambda_n, left)) {
        std::ostringstream msg;
        msg << "chi(" << lambda_n << ") = " << cv.chi
            << " is not small against its assembly scale; not an eigenvalue";
        throw NotAnEigenvalue(msg.str());
    }
    double gamma = left.norm_integral;
    if (!problem.f.coincides_with_pole(lambda_n))
        gamma += problem.f.norming_term(lambda_n);
    if (!problem.F.coincides_with_pole(lambda_n))
        gamma += problem.F.derivative_unguarded(lambda_n) * left.value * left.value;
    if (!(gamma > 0.0))
        throw NonPositiveNorming("norming constant " + std::to_string(gamma) +
                                 " is not positive");
    return gamma;
}

double solution_ratio(const Problem& problem, double lambda_n) {
    const SolveCache cache = make_cache(problem);
    const LeftSolutionState left = integrate_left_cached(problem, cache, lambda_n);
    const CharValue cv = assemble_char(cache, lambda_n, left);
    if (std::abs(cv.chi) > 1e-6 * char_scale(cache, lambda_n, left))
        throw NotAnEigenvalue("chi(" + std::to_string(lambda_n) +
                              ") is not small against its assembly scale");
    const RightSolutionState right = integrate_right_cached(problem, cache, lambda_n);
    const double den_value = cache.f_den(lambda_n);
    const double num_value = cache.f_num(lambda_n);
    const double den_rel =
        std::abs(den_value) / (cache.f_den.magnitude_at(lambda_n) + 1e-300);
    const double num_rel =
        std::abs(num_value) / (cache.f_num.magnitude_at(lambda_n) + 1e-300);
    if (den_rel < 1e-12 && num_rel < 1e-12)
        throw DegenerateEigenfunction(
            "both boundary values of the left solution vanish at lambda = " +
            std::to_string(lambda_n));
    return den_rel >= num_rel ? right.value / den_value
                              : right.slope / (-num_value);
}

} // namespace hnbc
