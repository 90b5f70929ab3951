#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardyforge/specfun.hpp"

using hardyforge::specfun::bessel_first_zero;
using hardyforge::specfun::bessel_j;
using hardyforge::specfun::bessel_j_deriv;
using hardyforge::specfun::sphere_area;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("J_alpha at the origin") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(0.5, 0.0) == 0.0);
}

// Reference values computed with 30-digit arithmetic (mpmath).
TEST_CASE("J_alpha frozen reference values") {
    struct Ref {
        double alpha, x, value;
    };
    const Ref refs[] = {
        {0.0, 1.0, 0.76519768655796655},   {0.0, 5.0, -0.1775967713143383},
        {0.0, 15.0, -0.014224472826780773},{0.0, 40.0, 0.0073668905842372896},
        {1.0, 1.0, 0.44005058574493352},   {1.0, 13.0, -0.070318052121778371},
        {1.0, 50.0, -0.097511828125175138},{2.0, 2.5, 0.44605905843961723},
        {0.5, 2.0, 0.51301613656182775},   {3.5, 20.0, 0.021517818131341249},
        {7.0, 9.0, 0.32746087924245293},   {12.0, 30.0, 0.1482533510996601},
        {15.0, 14.0, 0.11743681366983445}, {20.0, 25.0, 0.051994049228303232},
        {20.0, 45.0, 0.0047633437900312991},
    };
    for (const auto& r : refs) {
        CAPTURE(r.alpha);
        CAPTURE(r.x);
        CHECK(std::fabs(bessel_j(r.alpha, r.x) - r.value) < 1e-13);
    }
}

TEST_CASE("J_{1/2} closed form sqrt(2/(pi x)) sin x") {
    for (double x : {0.3, 1.0, 2.0, 7.0, 13.0, 31.0}) {
        const double exact = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
        CHECK(bessel_j(0.5, x) == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("positivity before the first zero") {
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const double z = bessel_first_zero(alpha);
        for (int i = 1; i <= 40; ++i) {
            const double x = z * i / 41.0;
            if (x == 0.0) continue;
            CAPTURE(alpha);
            CAPTURE(x);
            CHECK(bessel_j(alpha, x) > 0.0);
        }
    }
}

TEST_CASE("first zeros") {
    // z_0 = 2.4048... ; value quoted to 5 significant digits.
    CHECK(bessel_first_zero(0.0) == doctest::Approx(2.4048).epsilon(5e-5));
    CHECK(bessel_first_zero(0.0) == doctest::Approx(2.4048255576957728).epsilon(1e-12));
    CHECK(bessel_first_zero(1.0) == doctest::Approx(3.8317059702075123).epsilon(1e-12));
    CHECK(bessel_first_zero(0.5) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(bessel_first_zero(2.0) == doctest::Approx(5.1356223018406826).epsilon(1e-12));
    CHECK(bessel_first_zero(3.0) == doctest::Approx(6.3801618959239835).epsilon(1e-12));
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        CHECK(std::fabs(bessel_j(alpha, bessel_first_zero(alpha))) < 1e-11);
    }
}

TEST_CASE("derivative identities and frozen values") {
    for (double x : {0.5, 1.0, 2.0}) {
        CHECK(bessel_j_deriv(0.0, x) == doctest::Approx(-bessel_j(1.0, x)).epsilon(1e-14));
    }
    // J_0 is even, so J_0' -> 0 at the origin.
    CHECK(std::fabs(bessel_j_deriv(0.0, 1e-8)) < 1e-7);
    // First zero of J_1' located by a finite-difference bracket on bessel_j.
    CHECK(std::fabs(bessel_j_deriv(1.0, 1.8411837813406593)) < 1e-12);
    CHECK(bessel_j_deriv(0.0, 2.0) == doctest::Approx(-0.57672480775687339).epsilon(1e-13));
    CHECK(bessel_j_deriv(2.0, 7.0) == doctest::Approx(0.081436382256494202).epsilon(1e-13));
}

TEST_CASE("derivative matches central finite differences") {
    const double h = 1e-5;
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.5}) {
        for (double x = 0.1; x <= 20.0; x += 0.7) {
            const double fd = (bessel_j(alpha, x + h) - bessel_j(alpha, x - h)) / (2.0 * h);
            CAPTURE(alpha);
            CAPTURE(x);
            CHECK(std::fabs(fd - bessel_j_deriv(alpha, x)) < 1e-7);
        }
    }
}

TEST_CASE("three-term recurrence residual") {
    for (double alpha : {1.0, 1.5, 2.0, 4.0, 9.0}) {
        for (double x : {0.4, 1.3, 5.0, 11.0, 17.0, 29.0, 44.0}) {
            const double res = bessel_j(alpha + 1.0, x) - (2.0 * alpha / x) * bessel_j(alpha, x) +
                               bessel_j(alpha - 1.0, x);
            CAPTURE(alpha);
            CAPTURE(x);
            CHECK(std::fabs(res) < 1e-11);
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_j(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(bessel_j_deriv(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_first_zero(-2.0), std::domain_error);
    CHECK_THROWS_AS(sphere_area(1), std::domain_error);
}

TEST_CASE("sphere areas") {
    CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(sphere_area(3) == doctest::Approx(12.566370614359173).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(19.739208802178717).epsilon(1e-14));
    CHECK(sphere_area(5) == doctest::Approx(26.318945069571623).epsilon(1e-14));
    CHECK(sphere_area(8) == doctest::Approx(32.469697011334146).epsilon(1e-14));
}
