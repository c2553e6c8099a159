#pragma once

#include <vector>

#include "hnbc/polynomial.hpp"

namespace hnbc {

/// One simple real pole with a positive residue weight: weight / (location - x).
struct PoleTerm {
    double location = 0.0;
    double weight = 0.0;
};

/// Numerator/denominator pair of a rational Herglotz-Nevanlinna function in
/// its normalized polynomial form.  The pair is coprime by construction and
/// the denominator carries the reciprocal-slope normalization, so the
/// denominator's value doubles as the left-boundary value of solutions (see
/// direct_solver).
struct RationalForm {
    Polynomial numerator;   // degree d (slope == 0) or d + 1 (slope > 0)
    Polynomial denominator; // degree d; no common root with the numerator
};

/// Coefficient vector of the monic boundary polynomial attached to a
/// rational Herglotz-Nevanlinna function of the given index.  coeffs[k-1]
/// holds the coefficient of x^(index + 1 - k), i.e. the entries below the
/// (implicit) leading 1.
struct OmegaVector {
    int index = 0;               // index of the generating function, >= 0
    std::vector<double> coeffs;  // length index + 1

    /// Full monic polynomial of degree index + 1.
    Polynomial to_polynomial() const;
    void validate() const; // throws DimensionMismatch on a length/index clash
};

/// Rational Herglotz-Nevanlinna function
///
///     f(x) = slope * x + offset + sum_k weight_k / (location_k - x)
///
/// with slope >= 0, weights > 0 and strictly increasing pole locations.
/// Such functions parameterize the admissible boundary conditions of the
/// direct solver; the class also provides the polynomial quantities derived
/// from them (rational form, boundary polynomial, norming term).
class HerglotzFunction {
public:
    /// Throws NotHerglotz if slope < 0, any weight <= 0, or locations are
    /// not strictly increasing (finite values required throughout).
    HerglotzFunction(double slope, double offset, std::vector<PoleTerm> poles = {});

    /// The identically-zero function (valid: slope = offset = 0, no poles).
    static HerglotzFunction zero();
    static HerglotzFunction constant(double offset);

    double slope() const { return slope_; }
    double offset() const { return offset_; }
    const std::vector<PoleTerm>& poles() const { return poles_; }

    /// 2 * (number of poles), plus one more when the slope is positive.
    int index() const;

    /// Absolute distance below which an evaluation point counts as sitting
    /// on a pole: 1e-9 * (1 + |x|).
    double pole_tolerance(double x) const;

    /// Value at x; throws PoleProximity within pole_tolerance of a pole.
    double operator()(double x) const;
    /// Derivative at x (always >= 0 away from poles); same pole guard.
    double derivative(double x) const;

    /// Normalized numerator/denominator pair.  The denominator is
    /// (1/slope if slope > 0 else 1) * prod_k (location_k - x).
    RationalForm rational_form() const;

    /// derivative(x) * denominator(x)^2, evaluated in its polynomial form
    ///
    ///     slope * den(x)^2 + sum_k weight_k * (den(x)/(x - location_k))^2,
    ///
    /// which stays finite and accurate arbitrarily close to the poles.
    double norming_term(double x) const;

    /// True when the denominator vanishes at x up to relative threshold
    /// 1e-7, i.e. x coincides with a pole for norming purposes.
    bool coincides_with_pole(double x) const;

    /// Derivative without the pole-proximity guard; used after an explicit
    /// coincides_with_pole() check.
    double derivative_unguarded(double x) const;

private:
    double slope_;
    double offset_;
    std::vector<PoleTerm> poles_;
};

/// Coefficients of the monic boundary polynomial of f.  With m = f.index()
/// and (num, den) = f.rational_form(), the polynomial is
///
///     (-1)^floor(m/2) * x * den(x^2)  -  (-1)^ceil(m/2) * num(x^2),
///
/// which is monic of degree m + 1; the returned vector lists the
/// coefficients below the leading one, highest degree first.
OmegaVector omega_vector(const HerglotzFunction& f);

/// Inverse of omega_vector: rebuilds the rational Herglotz-Nevanlinna
/// function from a boundary-polynomial coefficient vector.  Splits the
/// monic polynomial into its odd part (denominator in x^2) and even part
/// (numerator in x^2), finds the denominator roots, and validates that they
/// are real, simple and carry positive residues.  Throws NotHerglotz when
/// the vector is not attainable.
HerglotzFunction herglotz_from_omega(const OmegaVector& omega);

} // namespace hnbc
