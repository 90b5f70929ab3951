#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardyforge/geometry.hpp"

using namespace hardyforge::geometry;

TEST_CASE("metric radius") {
    const auto flat = make_manifold(3, 0.0);
    CHECK(metric_radius(flat, 2.7) == 2.7);
    const auto hyp = make_manifold(3, 1.0);
    CHECK(metric_radius(hyp, 1.0) == doctest::Approx(1.1752011936438015).epsilon(1e-14));
    const auto b4 = make_manifold(3, 4.0);
    CHECK(metric_radius(b4, 1.0) == doctest::Approx(1.8134302039235094).epsilon(1e-14));
}

TEST_CASE("volume density") {
    const auto flat = make_manifold(3, 0.0);
    CHECK(volume_density(flat, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    const auto hyp3 = make_manifold(3, 1.0);
    CHECK(volume_density(hyp3, 1.0) == doctest::Approx(1.3810978455418157).epsilon(1e-14));
    const auto hyp5 = make_manifold(5, 1.0);
    const double t = 1e-5;
    CHECK(volume_density(hyp5, t) / std::pow(t, 4) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("log density derivative") {
    for (int n : {3, 5, 8}) {
        const auto flat = make_manifold(n, 0.0);
        for (double t : {0.1, 1.0, 7.0}) CHECK(log_density_deriv(flat, t) == 0.0);
    }
    const auto hyp3 = make_manifold(3, 1.0);
    CHECK(log_density_deriv(hyp3, 1.0) == doctest::Approx(0.62607057099866261).epsilon(1e-14));
    CHECK(std::fabs(log_density_deriv(hyp3, 1e-9)) < 1e-8);
}

TEST_CASE("log density derivative matches finite differences of the log volume") {
    const double h = 1e-6;
    for (double b : {0.5, 1.0, 4.0}) {
        const auto m = make_manifold(4, b);
        for (double t = 0.05; t < 20.0; t *= 1.9) {
            const double lhs = log_density_deriv(m, t);
            const auto logj = [&](double s) {
                return std::log(volume_density(m, s)) - (m.dim - 1) * std::log(s);
            };
            const double fd = (logj(t + h) - logj(t - h)) / (2.0 * h);
            CAPTURE(b);
            CAPTURE(t);
            CHECK(std::fabs(lhs - fd) < 1e-7);
        }
    }
}

TEST_CASE("comparison quantity is nonnegative on a log grid") {
    for (double b : {0.0, 0.5, 1.0, 4.0}) {
        const auto m = make_manifold(3, b);
        for (double t = 1e-6; t <= 50.0; t *= 1.45) {
            CAPTURE(b);
            CAPTURE(t);
            CHECK(comparison_d(m, t) >= 0.0);
        }
    }
}

TEST_CASE("Euclidean limit in curvature") {
    const auto m = make_manifold(4, 1e-8);
    for (double t = 0.1; t <= 10.0; t += 0.9) {
        const double jb = volume_density(m, t) / std::pow(t, m.dim - 1);
        CHECK(std::fabs(jb - 1.0) <= 1e-6);
    }
}

TEST_CASE("ball and geodesic charts are inverse") {
    CHECK(ball_to_geodesic(0.5) == doctest::Approx(1.0986122886681097).epsilon(1e-14));
    CHECK(geodesic_to_ball(0.0) == 0.0);
    for (double r = 0.1; r < 0.95; r += 0.1) {
        CHECK(geodesic_to_ball(ball_to_geodesic(r)) == doctest::Approx(r).epsilon(1e-14));
    }
    CHECK_THROWS_AS(ball_to_geodesic(1.0), std::domain_error);
    CHECK_THROWS_AS(ball_to_geodesic(-0.1), std::domain_error);
}

TEST_CASE("sphere eigenvalues") {
    CHECK(angular_eigenvalue(3, 0) == 0.0);
    CHECK(angular_eigenvalue(5, 0) == 0.0);
    CHECK(angular_eigenvalue(3, 1) == 2.0);
    CHECK(angular_eigenvalue(5, 2) == 10.0);
    CHECK_THROWS_AS(angular_eigenvalue(3, -1), std::domain_error);
}

TEST_CASE("manifold validation") {
    CHECK_THROWS_AS(make_manifold(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(make_manifold(4, -1.0), std::domain_error);
}
