#pragma once

#include <complex>
#include <vector>

namespace hnbc {

class Polynomial;

/// Quotient/remainder pair of a Euclidean polynomial division.
struct PolynomialDivision;

/// Dense real polynomial in the monomial basis.
///
/// Coefficients are stored in ascending degree order and kept trimmed: the
/// zero polynomial has an empty coefficient list and degree() == -1.  All
/// polynomials handled by this library have degree <= 13, so the plain
/// monomial basis in double precision is adequate and nothing fancier
/// (orthogonal bases, compensated evaluation) is attempted.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    static Polynomial constant(double c);
    /// c * x^degree
    static Polynomial monomial(int degree, double c = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Coefficient of x^i; zero beyond the stored degree.
    double coeff(int i) const;
    double leading_coefficient() const;

    double operator()(double x) const;
    /// Sum of |c_i| |x|^i: the magnitude the evaluation would have without
    /// cancellation.  Used for relative smallness tests.
    double magnitude_at(double x) const;
    std::complex<double> operator()(std::complex<double> x) const;

    Polynomial derivative() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(double s) const;
    Polynomial operator-() const;

    /// Quotient of the synthetic division by (x - root).  The remainder
    /// (i.e. the value at the root) is discarded; callers use this when the
    /// root is exact by construction.
    Polynomial deflate(double root) const;

    /// Euclidean division: *this == quotient * divisor + remainder with
    /// deg remainder < deg divisor.  Throws DegenerateInput for a zero
    /// divisor.
    PolynomialDivision divide_by(const Polynomial& divisor) const;

    /// All complex roots via the companion-matrix eigenvalues, each polished
    /// by one or two Newton steps.  Empty for degree <= 0.
    std::vector<std::complex<double>> roots() const;

private:
    std::vector<double> coeffs_; // ascending; empty <=> zero polynomial
    void trim();
};

struct PolynomialDivision {
    Polynomial quotient;
    Polynomial remainder;
};

/// Resultant of two polynomials via the determinant of their Sylvester
/// matrix.  Nonzero exactly when the inputs are coprime.  Conventions:
/// both constants -> 1, one input zero -> 0, both zero -> DegenerateInput.
double resultant(const Polynomial& p, const Polynomial& q);

} // namespace hnbc
