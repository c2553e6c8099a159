#include "hnbc/polynomial.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include <Eigen/Dense>

#include "hnbc/errors.hpp"

namespace hnbc {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0)
        coeffs_.pop_back();
}

Polynomial Polynomial::constant(double c) {
    return Polynomial(std::vector<double>{c});
}

Polynomial Polynomial::monomial(int degree, double c) {
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

double Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size()))
        return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::leading_coefficient() const {
    return coeffs_.empty() ? 0.0 : coeffs_.back();
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

double Polynomial::magnitude_at(double x) const {
    const double ax = std::abs(x);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * ax + std::abs(*it);
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1)
        return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> v(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        v[i] += other.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero())
        return Polynomial{};
    std::vector<double> v(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> v = coeffs_;
    for (double& c : v)
        c *= s;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
    return *this * -1.0;
}

Polynomial Polynomial::deflate(double root) const {
    if (degree() < 1)
        return Polynomial{};
    std::vector<double> q(coeffs_.size() - 1, 0.0);
    double carry = coeffs_.back();
    for (int i = degree() - 1; i >= 0; --i) {
        q[static_cast<std::size_t>(i)] = carry;
        carry = coeffs_[static_cast<std::size_t>(i)] + root * carry;
    }
    return Polynomial(std::move(q));
}

PolynomialDivision Polynomial::divide_by(const Polynomial& divisor) const {
    if (divisor.is_zero())
        throw DegenerateInput("polynomial division by the zero polynomial");
    if (degree() < divisor.degree())
        return {Polynomial{}, *this};
    std::vector<double> rem = coeffs_;
    std::vector<double> quot(static_cast<std::size_t>(degree() - divisor.degree()) + 1, 0.0);
    const double lead = divisor.leading_coefficient();
    for (int k = degree() - divisor.degree(); k >= 0; --k) {
        const double factor = rem[static_cast<std::size_t>(k + divisor.degree())] / lead;
        quot[static_cast<std::size_t>(k)] = factor;
        for (int j = 0; j <= divisor.degree(); ++j)
            rem[static_cast<std::size_t>(k + j)] -= factor * divisor.coeff(j);
    }
    rem.resize(static_cast<std::size_t>(std::max(divisor.degree(), 0)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<std::complex<double>> Polynomial::roots() const {
    const int n = degree();
    if (n <= 0)
        return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs_.back();
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / lead;
    for (int i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw DegenerateInput("companion-matrix eigenvalue iteration failed");

    const Polynomial deriv = derivative();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = solver.eigenvalues()(i);
        // One or two Newton polish steps sharpen the QR eigenvalues to the
        // limit the conditioning of the coefficients allows.
        for (int it = 0; it < 2; ++it) {
            const std::complex<double> dp = deriv(z);
            if (std::abs(dp) == 0.0)
                break;
            const std::complex<double> step = (*this)(z) / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                break;
            z -= step;
        }
        out[static_cast<std::size_t>(i)] = z;
    }
    return out;
}

double resultant(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() && q.is_zero())
        throw DegenerateInput("resultant of two zero polynomials");
    if (p.is_zero() || q.is_zero())
        return 0.0;
    const int m = p.degree();
    const int n = q.degree();
    if (m == 0 && n == 0)
        return 1.0;
    if (m == 0)
        return std::pow(p.coeff(0), n);
    if (n == 0)
        return std::pow(q.coeff(0), m);

    Eigen::MatrixXd sylvester = Eigen::MatrixXd::Zero(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int t = 0; t <= m; ++t)
            sylvester(r, r + t) = p.coeff(m - t);
    for (int r = 0; r < m; ++r)
        for (int t = 0; t <= n; ++t)
            sylvester(n + r, r + t) = q.coeff(n - t);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(sylvester).determinant();
}

} // namespace hnbc
