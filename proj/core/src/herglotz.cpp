#include "hnbc/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hnbc/errors.hpp"

namespace hnbc {

namespace {

// Sign factors (-1)^floor(m/2) and (-1)^ceil(m/2) used in the parity
// composition of the boundary polynomial.
int floor_sign(int m) { return (m / 2) % 2 == 0 ? 1 : -1; }
int ceil_sign(int m) { return ((m + 1) / 2) % 2 == 0 ? 1 : -1; }

} // namespace

Polynomial OmegaVector::to_polynomial() const {
    validate();
    // coeffs[k-1] multiplies x^(index + 1 - k); leading coefficient is 1.
    std::vector<double> ascending(static_cast<std::size_t>(index) + 2, 0.0);
    ascending.back() = 1.0;
    for (int k = 1; k <= index + 1; ++k)
        ascending[static_cast<std::size_t>(index + 1 - k)] = coeffs[static_cast<std::size_t>(k - 1)];
    return Polynomial(std::move(ascending));
}

void OmegaVector::validate() const {
    if (index < 0)
        throw DimensionMismatch("omega vector index must be non-negative");
    if (coeffs.size() != static_cast<std::size_t>(index) + 1) {
        std::ostringstream msg;
        msg << "omega vector of index " << index << " needs " << index + 1
            << " coefficients, got " << coeffs.size();
        throw DimensionMismatch(msg.str());
    }
}

HerglotzFunction::HerglotzFunction(double slope, double offset, std::vector<PoleTerm> poles)
    : slope_(slope), offset_(offset), poles_(std::move(poles)) {
    if (!std::isfinite(slope_) || !std::isfinite(offset_))
        throw NotHerglotz("slope and offset must be finite");
    if (slope_ < 0.0)
        throw NotHerglotz("slope must be non-negative");
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        const PoleTerm& p = poles_[k];
        if (!std::isfinite(p.location) || !std::isfinite(p.weight))
            throw NotHerglotz("pole data must be finite");
        if (p.weight <= 0.0)
            throw NotHerglotz("pole weights must be positive");
        if (k > 0 && !(poles_[k - 1].location < p.location))
            throw NotHerglotz("pole locations must be strictly increasing");
    }
}

HerglotzFunction HerglotzFunction::zero() {
    return HerglotzFunction(0.0, 0.0);
}

HerglotzFunction HerglotzFunction::constant(double offset) {
    return HerglotzFunction(0.0, offset);
}

int HerglotzFunction::index() const {
    return 2 * static_cast<int>(poles_.size()) + (slope_ > 0.0 ? 1 : 0);
}

double HerglotzFunction::pole_tolerance(double x) const {
    return 1e-9 * (1.0 + std::abs(x));
}

double HerglotzFunction::operator()(double x) const {
    const double tol = pole_tolerance(x);
    double acc = slope_ * x + offset_;
    for (const PoleTerm& p : poles_) {
        const double gap = p.location - x;
        if (std::abs(gap) < tol)
            throw PoleProximity("evaluation within pole tolerance of location " +
                                std::to_string(p.location));
        acc += p.weight / gap;
    }
    return acc;
}

double HerglotzFunction::derivative(double x) const {
    const double tol = pole_tolerance(x);
    for (const PoleTerm& p : poles_)
        if (std::abs(p.location - x) < tol)
            throw PoleProximity("derivative within pole tolerance of location " +
                                std::to_string(p.location));
    return derivative_unguarded(x);
}

double HerglotzFunction::derivative_unguarded(double x) const {
    double acc = slope_;
    for (const PoleTerm& p : poles_) {
        const double gap = p.location - x;
        acc += p.weight / (gap * gap);
    }
    return acc;
}

RationalForm HerglotzFunction::rational_form() const {
    const double norm = slope_ > 0.0 ? 1.0 / slope_ : 1.0;

    Polynomial den = Polynomial::constant(norm);
    for (const PoleTerm& p : poles_)
        den = den * Polynomial({p.location, -1.0});

    // numerator = norm * [ (slope*x + offset) * prod_k (loc_k - x)
    //                      + sum_k weight_k * prod_{j != k} (loc_j - x) ]
    Polynomial num = Polynomial({offset_, slope_});
    for (const PoleTerm& p : poles_)
        num = num * Polynomial({p.location, -1.0});
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        Polynomial part = Polynomial::constant(poles_[k].weight);
        for (std::size_t j = 0; j < poles_.size(); ++j)
            if (j != k)
                part = part * Polynomial({poles_[j].location, -1.0});
        num = num + part;
    }
    num = num * norm;
    return {num, den};
}

double HerglotzFunction::norming_term(double x) const {
    const double norm = slope_ > 0.0 ? 1.0 / slope_ : 1.0;
    double full = norm;
    for (const PoleTerm& p : poles_)
        full *= p.location - x;
    double acc = slope_ * full * full;
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        double reduced = norm;
        for (std::size_t j = 0; j < poles_.size(); ++j)
            if (j != k)
                reduced *= poles_[j].location - x;
        acc += poles_[k].weight * reduced * reduced;
    }
    return acc;
}

bool HerglotzFunction::coincides_with_pole(double x) const {
    if (poles_.empty())
        return false;
    const double norm = slope_ > 0.0 ? 1.0 / slope_ : 1.0;
    double value = norm;
    double scale = norm;
    for (const PoleTerm& p : poles_) {
        value *= p.location - x;
        scale *= std::abs(p.location) + std::abs(x) + 1.0;
    }
    return std::abs(value) < 1e-7 * scale;
}

OmegaVector omega_vector(const HerglotzFunction& f) {
    const int m = f.index();
    const RationalForm rf = f.rational_form();

    // (-1)^floor(m/2) * x * den(x^2) - (-1)^ceil(m/2) * num(x^2)
    std::vector<double> full(static_cast<std::size_t>(m) + 2, 0.0);
    const double sd = floor_sign(m);
    const double sn = -ceil_sign(m);
    for (int i = 0; i <= rf.denominator.degree(); ++i)
        full[static_cast<std::size_t>(2 * i + 1)] += sd * rf.denominator.coeff(i);
    for (int i = 0; i <= rf.numerator.degree(); ++i)
        full[static_cast<std::size_t>(2 * i)] += sn * rf.numerator.coeff(i);

    // The composition is monic up to roundoff in 1/slope * slope; normalize
    // exactly.
    const double lead = full.back();
    for (double& c : full)
        c /= lead;

    OmegaVector out;
    out.index = m;
    out.coeffs.resize(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m + 1; ++k)
        out.coeffs[static_cast<std::size_t>(k - 1)] = full[static_cast<std::size_t>(m + 1 - k)];
    return out;
}

HerglotzFunction herglotz_from_omega(const OmegaVector& omega) {
    omega.validate();
    const int m = omega.index;
    const Polynomial full = omega.to_polynomial();
    const int d = m / 2;

    // Parity split: odd part -> denominator (in x^2), even part -> numerator.
    std::vector<double> den_c(static_cast<std::size_t>(d) + 1, 0.0);
    std::vector<double> num_c(static_cast<std::size_t>((m + 1) / 2) + 1, 0.0);
    const double sd = floor_sign(m);
    const double sn = -ceil_sign(m);
    for (std::size_t i = 0; i < den_c.size(); ++i)
        den_c[i] = sd * full.coeff(static_cast<int>(2 * i + 1));
    for (std::size_t i = 0; i < num_c.size(); ++i)
        num_c[i] = sn * full.coeff(static_cast<int>(2 * i));
    Polynomial den{std::move(den_c)};
    Polynomial num{std::move(num_c)};

    if (den.degree() != d)
        throw NotHerglotz("odd-part degree mismatch: denominator would have degree " +
                          std::to_string(den.degree()) + " instead of " + std::to_string(d));
    if (m % 2 == 1 && num.degree() != d + 1)
        throw NotHerglotz("even-part degree mismatch for an odd index");

    // Poles: real simple roots of the denominator.
    std::vector<double> locations;
    if (d > 0) {
        const Polynomial den_deriv = den.derivative();
        for (const std::complex<double>& z : den.roots()) {
            if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real())))
                throw NotHerglotz("denominator has a non-real root");
            locations.push_back(z.real());
        }
        std::sort(locations.begin(), locations.end());
        for (std::size_t k = 1; k < locations.size(); ++k)
            if (!(locations[k] - locations[k - 1] >
                  1e-8 * (1.0 + std::abs(locations[k]))))
                throw NotHerglotz("denominator roots are not simple");
        // Newton polish against the real polynomial.
        for (double& loc : locations) {
            for (int it = 0; it < 2; ++it) {
                const double dp = den_deriv(loc);
                if (dp == 0.0)
                    break;
                loc -= den(loc) / dp;
            }
        }
    }

    // Slope and offset come from the Euclidean quotient num/den, which is
    // slope*x + offset (odd index) or the constant offset (even index).
    const PolynomialDivision division = num.divide_by(den);
    if (division.quotient.degree() > (m % 2 == 1 ? 1 : 0))
        throw NotHerglotz("numerator/denominator quotient has excessive degree");
    const double slope = m % 2 == 1 ? division.quotient.coeff(1) : 0.0;
    const double offset = division.quotient.coeff(0);
    if (m % 2 == 1 && !(slope > 0.0))
        throw NotHerglotz("odd index requires a positive slope");

    // Residues: weight_k = -num(loc_k) / den'(loc_k) must be positive.
    std::vector<PoleTerm> poles;
    const Polynomial den_deriv = den.derivative();
    for (double loc : locations) {
        const double dp = den_deriv(loc);
        if (dp == 0.0)
            throw NotHerglotz("denominator derivative vanishes at a root");
        const double weight = -num(loc) / dp;
        if (!(weight > 0.0))
            throw NotHerglotz("non-positive residue " + std::to_string(weight) +
                              " at pole location " + std::to_string(loc));
        poles.push_back({loc, weight});
    }

    return HerglotzFunction(slope, offset, std::move(poles));
}

} // namespace hnbc
