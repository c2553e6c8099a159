#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "hnbc/errors.hpp"
#include "hnbc/herglotz.hpp"

#include "oracles.hpp"

using hnbc::HerglotzFunction;
using hnbc::OmegaVector;
using hnbc::PoleTerm;

TEST_CASE("constructor rejects invalid data") {
    CHECK_THROWS_AS(HerglotzFunction(-1.0, 0.0), hnbc::NotHerglotz);
    CHECK_THROWS_AS(HerglotzFunction(0.0, 0.0, {{2.0, 0.0}}),
                    hnbc::NotHerglotz);
    CHECK_THROWS_AS(HerglotzFunction(0.0, 0.0, {{2.0, -1.0}}),
                    hnbc::NotHerglotz);
    CHECK_THROWS_AS(HerglotzFunction(0.0, 0.0, {{2.0, 1.0}, {2.0, 1.0}}),
                    hnbc::NotHerglotz);
    CHECK_THROWS_AS(HerglotzFunction(0.0, 0.0, {{3.0, 1.0}, {2.0, 1.0}}),
                    hnbc::NotHerglotz);
    CHECK_THROWS_AS(
        HerglotzFunction(std::numeric_limits<double>::quiet_NaN(), 0.0),
        hnbc::NotHerglotz);
    CHECK_NOTHROW(HerglotzFunction(0.0, -5.0, {{-1.0, 0.5}, {4.0, 2.0}}));
}

TEST_CASE("factories and accessors") {
    const HerglotzFunction z = HerglotzFunction::zero();
    CHECK(z.slope() == 0.0);
    CHECK(z.offset() == 0.0);
    CHECK(z.poles().empty());
    CHECK(z(123.0) == 0.0);

    const HerglotzFunction c = HerglotzFunction::constant(2.0);
    CHECK(c.slope() == 0.0);
    CHECK(c.offset() == 2.0);
    CHECK(c(5.0) == doctest::Approx(2.0));
}

TEST_CASE("evaluation at fixed points") {
    CHECK(HerglotzFunction(0.0, 2.0)(5.0) == doctest::Approx(2.0));
    CHECK(HerglotzFunction(1.0, 0.0)(3.0) == doctest::Approx(3.0));
    CHECK(HerglotzFunction(0.0, 0.0, {{2.0, 1.0}})(0.0) ==
          doctest::Approx(0.5));
    // Two-pole value by hand: 1/(1-x) + 2/(4-x) at x = 0 -> 1.5.
    CHECK(HerglotzFunction(0.0, 0.0, {{1.0, 1.0}, {4.0, 2.0}})(0.0) ==
          doctest::Approx(1.5));
}

TEST_CASE("derivative at fixed points and positivity") {
    CHECK(HerglotzFunction(0.0, 2.0).derivative(5.0) == doctest::Approx(0.0));
    CHECK(HerglotzFunction(1.0, 0.0).derivative(3.0) == doctest::Approx(1.0));
    CHECK(HerglotzFunction(0.0, 0.0, {{2.0, 1.0}}).derivative(0.0) ==
          doctest::Approx(0.25));

    std::mt19937 rng(42);
    std::uniform_real_distribution<double> point(-5.0, 10.0);
    for (int index = 0; index <= 5; ++index) {
        const HerglotzFunction f = oracle::random_herglotz(rng, index);
        for (int trial = 0; trial < 20; ++trial) {
            const double x = point(rng);
            bool near_pole = false;
            for (const PoleTerm& p : f.poles())
                near_pole = near_pole ||
                            std::abs(x - p.location) < 10.0 * f.pole_tolerance(x);
            if (near_pole)
                continue;
            CHECK(f.derivative(x) >= 0.0);
            // Derivative agrees with a central difference.
            const double h = 1e-6 * (1.0 + std::abs(x));
            const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
            CHECK(f.derivative(x) ==
                  doctest::Approx(fd).epsilon(1e-4).scale(
                      std::max(1.0, std::abs(fd))));
            CHECK(f.derivative_unguarded(x) == doctest::Approx(f.derivative(x)));
        }
    }
}

TEST_CASE("pole proximity guard") {
    const HerglotzFunction f(0.0, 0.0, {{2.0, 1.0}});
    CHECK_THROWS_AS(f(2.0), hnbc::PoleProximity);
    CHECK_THROWS_AS(f(2.0 + 1e-10), hnbc::PoleProximity);
    CHECK_THROWS_AS(f.derivative(2.0), hnbc::PoleProximity);
    CHECK_NOTHROW(f(2.0 + 1e-7));
    CHECK(f.pole_tolerance(2.0) == doctest::Approx(3e-9));
}

TEST_CASE("rational form of the fixed examples") {
    const hnbc::RationalForm a = HerglotzFunction(0.0, 2.0).rational_form();
    CHECK(a.numerator.degree() == 0);
    CHECK(a.numerator(0.0) == doctest::Approx(2.0));
    CHECK(a.denominator.degree() == 0);
    CHECK(a.denominator(0.0) == doctest::Approx(1.0));

    const hnbc::RationalForm b = HerglotzFunction(1.0, 0.0).rational_form();
    CHECK(b.numerator.degree() == 1);
    CHECK(b.numerator(3.0) == doctest::Approx(3.0));
    CHECK(b.denominator(100.0) == doctest::Approx(1.0));

    const hnbc::RationalForm c =
        HerglotzFunction(0.0, 0.0, {{2.0, 1.0}}).rational_form();
    CHECK(c.numerator.degree() == 0);
    CHECK(c.numerator(0.0) == doctest::Approx(1.0));
    CHECK(c.denominator.degree() == 1);
    CHECK(c.denominator(0.0) == doctest::Approx(2.0));
    CHECK(c.denominator(3.0) == doctest::Approx(-1.0));
}

TEST_CASE("rational form reproduces the function on random inputs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> point(-5.0, 10.0);
    for (int index = 0; index <= 5; ++index) {
        const HerglotzFunction f = oracle::random_herglotz(rng, index);
        const hnbc::RationalForm r = f.rational_form();
        for (int trial = 0; trial < 25; ++trial) {
            const double x = point(rng);
            const double den = r.denominator(x);
            if (std::abs(den) < 1e-4)
                continue;
            CHECK(r.numerator(x) / den ==
                  doctest::Approx(f(x)).epsilon(1e-10).scale(
                      std::max(1.0, std::abs(f(x)))));
        }
    }
}

TEST_CASE("index bookkeeping") {
    CHECK(HerglotzFunction(0.0, 2.0).index() == 0);
    CHECK(HerglotzFunction(1.0, 0.0).index() == 1);
    CHECK(HerglotzFunction(0.0, 0.0, {{2.0, 1.0}}).index() == 2);
    CHECK(HerglotzFunction(1.0, 0.0, {{2.0, 1.0}}).index() == 3);
    CHECK(HerglotzFunction(0.5, 1.0, {{0.0, 1.0}, {3.0, 0.5}}).index() == 5);
}

TEST_CASE("norming term stays finite through poles") {
    const HerglotzFunction f(0.0, 0.0, {{2.0, 1.0}});
    // derivative * denominator^2 = (2-x)^-2 * (2-x)^2 = 1 everywhere.
    CHECK(f.norming_term(0.0) == doctest::Approx(1.0));
    CHECK(f.norming_term(2.0) == doctest::Approx(1.0));
    CHECK(f.norming_term(100.0) == doctest::Approx(1.0));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> point(-5.0, 10.0);
    const HerglotzFunction g = oracle::random_herglotz(rng, 4);
    const hnbc::RationalForm r = g.rational_form();
    for (int trial = 0; trial < 25; ++trial) {
        const double x = point(rng);
        if (g.coincides_with_pole(x))
            continue;
        const double den = r.denominator(x);
        CHECK(g.norming_term(x) ==
              doctest::Approx(g.derivative(x) * den * den)
                  .epsilon(1e-9)
                  .scale(std::max(1.0, std::abs(g.norming_term(x)))));
    }
}

TEST_CASE("pole coincidence test uses a relative threshold") {
    const HerglotzFunction f(0.0, 0.0, {{2.0, 1.0}});
    CHECK(f.coincides_with_pole(2.0));
    CHECK(f.coincides_with_pole(2.0 + 1e-8));
    CHECK_FALSE(f.coincides_with_pole(2.1));
    CHECK_FALSE(f.coincides_with_pole(0.0));
    CHECK_FALSE(HerglotzFunction(1.0, 3.0).coincides_with_pole(3.0));
}

TEST_CASE("omega vector of the fixed examples") {
    const OmegaVector a = hnbc::omega_vector(HerglotzFunction(0.0, 2.0));
    CHECK(a.index == 0);
    REQUIRE(a.coeffs.size() == 1);
    CHECK(a.coeffs[0] == doctest::Approx(-2.0));

    const OmegaVector b = hnbc::omega_vector(HerglotzFunction(1.0, 0.0));
    CHECK(b.index == 1);
    REQUIRE(b.coeffs.size() == 2);
    CHECK(b.coeffs[0] == doctest::Approx(1.0));
    CHECK(b.coeffs[1] == doctest::Approx(0.0));

    const OmegaVector c =
        hnbc::omega_vector(HerglotzFunction(0.0, 0.0, {{2.0, 1.0}}));
    CHECK(c.index == 2);
    REQUIRE(c.coeffs.size() == 3);
    CHECK(c.coeffs[0] == doctest::Approx(0.0));
    CHECK(c.coeffs[1] == doctest::Approx(-2.0));
    CHECK(c.coeffs[2] == doctest::Approx(1.0));

    // to_polynomial is monic of degree index + 1.
    const hnbc::Polynomial p = c.to_polynomial();
    CHECK(p.degree() == 3);
    CHECK(p.leading_coefficient() == doctest::Approx(1.0));
    CHECK(p(1.0) == doctest::Approx(1.0 + 0.0 - 2.0 + 1.0));
}

TEST_CASE("omega vector validation") {
    OmegaVector bad;
    bad.index = 2;
    bad.coeffs = {1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), hnbc::DimensionMismatch);
    bad.index = -1;
    bad.coeffs = {};
    CHECK_THROWS_AS(bad.validate(), hnbc::DimensionMismatch);
}

TEST_CASE("boundary polynomial round trip across indices") {
    std::mt19937 rng(99);
    for (int index = 0; index <= 5; ++index) {
        for (int trial = 0; trial < 30; ++trial) {
            const HerglotzFunction f = oracle::random_herglotz(rng, index);
            const OmegaVector omega = hnbc::omega_vector(f);
            CHECK(omega.index == index);
            const HerglotzFunction g = hnbc::herglotz_from_omega(omega);
            CHECK(g.slope() ==
                  doctest::Approx(f.slope()).epsilon(1e-8).scale(1.0));
            CHECK(g.offset() ==
                  doctest::Approx(f.offset()).epsilon(1e-8).scale(1.0));
            REQUIRE(g.poles().size() == f.poles().size());
            for (std::size_t k = 0; k < f.poles().size(); ++k) {
                CHECK(g.poles()[k].location ==
                      doctest::Approx(f.poles()[k].location)
                          .epsilon(1e-8)
                          .scale(1.0));
                CHECK(g.poles()[k].weight ==
                      doctest::Approx(f.poles()[k].weight)
                          .epsilon(1e-8)
                          .scale(1.0));
            }
        }
    }
}

TEST_CASE("reconstruction rejects unattainable coefficient vectors") {
    OmegaVector negative_weight;
    negative_weight.index = 2;
    negative_weight.coeffs = {0.0, -2.0, -1.0};
    CHECK_THROWS_AS(hnbc::herglotz_from_omega(negative_weight),
                    hnbc::NotHerglotz);

    OmegaVector negative_slope;
    negative_slope.index = 1;
    negative_slope.coeffs = {-1.0, 0.0};
    CHECK_THROWS_AS(hnbc::herglotz_from_omega(negative_slope),
                    hnbc::NotHerglotz);

    // Zero residue: x^3 + x^2 - 2x - 2 = (x^2 - 2)(x + 1) makes the even and
    // odd parts share a root.
    OmegaVector zero_weight;
    zero_weight.index = 2;
    zero_weight.coeffs = {1.0, -2.0, -2.0};
    CHECK_THROWS_AS(hnbc::herglotz_from_omega(zero_weight), hnbc::NotHerglotz);
}
