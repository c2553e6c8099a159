#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "hnbc/errors.hpp"
#include "hnbc/polynomial.hpp"

#include "oracles.hpp"

using hnbc::Polynomial;

TEST_CASE("construction trims trailing zeros and reports degree") {
    const Polynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(p.coeff(0) == 1.0);
    CHECK(p.coeff(1) == 2.0);
    CHECK(p.coeff(5) == 0.0);

    const Polynomial z({0.0, 0.0});
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(Polynomial().is_zero());
}

TEST_CASE("factories") {
    CHECK(Polynomial::constant(3.0)(10.0) == 3.0);
    const Polynomial m = Polynomial::monomial(3, 2.0);
    CHECK(m.degree() == 3);
    CHECK(m(2.0) == 16.0);
    CHECK(Polynomial::constant(0.0).is_zero());
}

TEST_CASE("evaluation, magnitude, and complex evaluation") {
    const Polynomial p({-1.0, 0.0, 1.0}); // x^2 - 1
    CHECK(p(3.0) == doctest::Approx(8.0));
    CHECK(p.magnitude_at(3.0) == doctest::Approx(10.0));
    const std::complex<double> v = p(std::complex<double>(0.0, 1.0));
    CHECK(v.real() == doctest::Approx(-2.0));
    CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("arithmetic agrees with hand expansion") {
    const Polynomial a({1.0, 1.0});  // 1 + x
    const Polynomial b({-2.0, 3.0}); // -2 + 3x
    const Polynomial sum = a + b;
    CHECK(sum.coeff(0) == doctest::Approx(-1.0));
    CHECK(sum.coeff(1) == doctest::Approx(4.0));
    const Polynomial prod = a * b; // -2 + x + 3x^2
    CHECK(prod.coeff(0) == doctest::Approx(-2.0));
    CHECK(prod.coeff(1) == doctest::Approx(1.0));
    CHECK(prod.coeff(2) == doctest::Approx(3.0));
    const Polynomial diff = a - a;
    CHECK(diff.is_zero());
    CHECK((a * 2.0)(1.0) == doctest::Approx(4.0));
    CHECK((-a)(1.0) == doctest::Approx(-2.0));
}

TEST_CASE("derivative") {
    const Polynomial p({5.0, -1.0, 0.0, 2.0}); // 5 - x + 2x^3
    const Polynomial d = p.derivative();
    CHECK(d.coeff(0) == doctest::Approx(-1.0));
    CHECK(d.coeff(1) == doctest::Approx(0.0));
    CHECK(d.coeff(2) == doctest::Approx(6.0));
    CHECK(Polynomial::constant(4.0).derivative().is_zero());
}

TEST_CASE("deflate removes an exact root") {
    // (x - 2)(x + 3) = x^2 + x - 6
    const Polynomial p({-6.0, 1.0, 1.0});
    const Polynomial q = p.deflate(2.0);
    CHECK(q.degree() == 1);
    CHECK(q(0.0) == doctest::Approx(3.0));
    CHECK(q.coeff(1) == doctest::Approx(1.0));
}

TEST_CASE("euclidean division round trip") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> pc(6), dc(3);
        for (double& c : pc)
            c = coeff(rng);
        for (double& c : dc)
            c = coeff(rng);
        dc.back() = dc.back() < 0 ? dc.back() - 1.0 : dc.back() + 1.0;
        const Polynomial p(pc), d(dc);
        const hnbc::PolynomialDivision div = p.divide_by(d);
        CHECK(div.remainder.degree() < d.degree());
        const Polynomial back = div.quotient * d + div.remainder;
        for (int i = 0; i <= p.degree(); ++i)
            CHECK(back.coeff(i) == doctest::Approx(p.coeff(i)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(Polynomial({1.0, 1.0}).divide_by(Polynomial()),
                    hnbc::DegenerateInput);
}

TEST_CASE("roots of known polynomials") {
    // (x-1)(x-2)(x-3)(x+4) with distinct real roots
    const Polynomial p =
        Polynomial({-1.0, 1.0}) * Polynomial({-2.0, 1.0}) *
        Polynomial({-3.0, 1.0}) * Polynomial({4.0, 1.0});
    auto roots = p.roots();
    REQUIRE(roots.size() == 4);
    std::vector<double> re;
    for (const auto& r : roots) {
        CHECK(std::abs(r.imag()) < 1e-9);
        re.push_back(r.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(re[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(re[2] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(re[3] == doctest::Approx(3.0).epsilon(1e-9));

    // x^2 + 1: conjugate pair
    auto imag_roots = Polynomial({1.0, 0.0, 1.0}).roots();
    REQUIRE(imag_roots.size() == 2);
    for (const auto& r : imag_roots) {
        CHECK(std::abs(r.real()) < 1e-10);
        CHECK(std::abs(std::abs(r.imag()) - 1.0) < 1e-10);
    }
    CHECK(Polynomial::constant(5.0).roots().empty());
}

TEST_CASE("resultant fixed examples") {
    const Polynomial x({0.0, 1.0});
    const Polynomial one = Polynomial::constant(1.0);
    const Polynomial two_minus_x({2.0, -1.0});
    const Polynomial x_minus_1({-1.0, 1.0});
    CHECK(hnbc::resultant(x, one) == doctest::Approx(1.0));
    CHECK(hnbc::resultant(two_minus_x, one) == doctest::Approx(1.0));
    CHECK(hnbc::resultant(x_minus_1, x_minus_1) == doctest::Approx(0.0));
    CHECK(hnbc::resultant(one, Polynomial::constant(7.0)) ==
          doctest::Approx(1.0));
    CHECK(hnbc::resultant(Polynomial(), x) == doctest::Approx(0.0));
    CHECK_THROWS_AS(hnbc::resultant(Polynomial(), Polynomial()),
                    hnbc::DegenerateInput);
}

TEST_CASE("resultant matches the root-product oracle on random pairs") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> pc(deg(rng) + 1), qc(deg(rng) + 1);
        for (double& c : pc)
            c = coeff(rng);
        for (double& c : qc)
            c = coeff(rng);
        pc.back() = pc.back() < 0 ? pc.back() - 0.5 : pc.back() + 0.5;
        qc.back() = qc.back() < 0 ? qc.back() - 0.5 : qc.back() + 0.5;
        const Polynomial p(pc), q(qc);
        const double via_sylvester = hnbc::resultant(p, q);
        const double via_roots = oracle::resultant_from_roots(p, q);
        CHECK(via_sylvester ==
              doctest::Approx(via_roots)
                  .epsilon(1e-7)
                  .scale(std::max(1.0, std::abs(via_roots))));
    }
}
