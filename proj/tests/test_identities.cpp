#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hardyforge/identities.hpp"

using namespace hardyforge;
using namespace hardyforge::identities;

namespace {

using Params = std::map<std::string, double>;

Params params_for(const std::string& id, int n, double R = 1.0) {
    Params p{{"N", static_cast<double>(n)}};
    const bool needs_R = id == "T2-shifted" || id == "C2" || id == "C3-global" ||
                         id == "C4-stability" || id == "BV-ball" || id == "T3.3" ||
                         id == "H-critlog" || id == "H-bessel-R";
    if (needs_R) p["R"] = R;
    if (id == "C1" || id == "H-lambda" || id == "C4-stability")
        p["lambda"] = (n > 4) ? 1.0 : 0.0;
    if (id == "T3.3") p["alpha"] = 0.5 * (n - 2.0);
    return p;
}

RadialProfile profile_for(const IdentityCase& c, int which, int ell) {
    if (c.shifted) {
        const double R = c.singular_points.front();
        if (which == 0) return flat_profile(R, R, 0.6 * R, ell);
        if (which == 1) return flat_profile(R, 0.9 * R, 0.5 * R, ell);
        return flat_profile(R, 1.2 * R, 0.7 * R, ell);
    }
    const double hi = std::isfinite(c.r_max) ? 0.95 * c.r_max : 2.8;
    if (which == 0) return bump_profile(0.5 * hi, 0.38 * hi, ell);
    if (which == 1) return poly_bump_profile(0.55 * hi, 0.35 * hi, ell);
    return bump_profile(0.62 * hi, 0.3 * hi, ell);
}

}  // namespace

TEST_CASE("catalog has the full set of cases") {
    const auto ids = case_ids();
    CHECK(ids.size() == 17);
    for (const auto& id : ids) CHECK_NOTHROW(build_case(id, params_for(id, 5)));
    CHECK(case_catalog().size() == ids.size());
}

TEST_CASE("frozen coefficients") {
    // remainder coefficient (N-2)(N-1)/2 at N=5
    auto t31 = build_case("T3.1", {{"N", 5.0}});
    CHECK(t31.rhs.back().coeff == doctest::Approx(6.0).epsilon(1e-15));
    // the 1/sinh^2 coefficient (N-1)(N-3)/4 vanishes at N=3
    auto t32 = build_case("T3.2", {{"N", 3.0}});
    CHECK(t32.lhs.back().coeff == 0.0);
    // z_1 = 3.8317... enters the T3.3 mass coefficient as z_1^2/R^2
    auto t33 = build_case("T3.3", {{"N", 4.0}, {"alpha", 1.0}, {"R", 2.0}});
    const double z1 = 3.8317059702075123;
    CHECK(t33.rhs.front().coeff == doctest::Approx(z1 * z1 / 4.0).epsilon(1e-12));
}

TEST_CASE("reduce: pointwise sanity") {
    const auto m0 = geometry::make_manifold(3, 0.0);
    const auto m1 = geometry::make_manifold(3, 1.0);
    auto c = build_case("T1-generic", {{"N", 3.0}, {"lambda", 0.0}});
    auto f0 = bump_profile(1.5, 1.0, 0);
    // ell = 0: gradient and radial integrands coincide pointwise
    Term grad_term = c.lhs.front();
    Term radial_term = grad_term;
    radial_term.functional = Functional::radial_sq;
    const auto ig = reduce(f0, m1, grad_term);
    const auto ir = reduce(f0, m1, radial_term);
    for (double r = 0.6; r < 2.4; r += 0.2) CHECK(ig(r) == doctest::Approx(ir(r)).epsilon(1e-15));
    // flat space kills every log-derivative integrand identically
    const auto il = reduce(f0, m0, c.rhs.back());
    for (double r = 0.6; r < 2.4; r += 0.2) CHECK(il(r) == 0.0);
    // the T3.1 remainder integrand is finite and positive on the support
    auto t31 = build_case("T3.1", {{"N", 3.0}});
    auto f1 = bump_profile(1.0, 0.5, 0);
    const auto irem = reduce(f1, m1, t31.rhs.back());
    CHECK(irem(1.0) > 0.0);
    CHECK(std::isfinite(irem(1.0)));
}

TEST_CASE("identity catalog verifies across dimensions, profiles and modes") {
    for (const auto& id : case_ids()) {
        for (int n : {3, 4, 5, 8}) {
            auto c = build_case(id, params_for(id, n));
            std::vector<double> curvs = c.hyperbolic_only ? std::vector<double>{1.0}
                                                          : std::vector<double>{0.0, 1.0};
            for (double b : curvs) {
                const auto m = geometry::make_manifold(n, b);
                for (int which : {0, 1}) {
                    for (int ell : {0, 2}) {
                        auto cc = build_case(id, params_for(id, n));
                        auto f = profile_for(cc, which, ell);
                        auto rep = verify(cc, m, f, 1e-8);
                        CAPTURE(id);
                        CAPTURE(n);
                        CAPTURE(b);
                        CAPTURE(which);
                        CAPTURE(ell);
                        CAPTURE(rep.rel_residual);
                        CHECK(rep.pass);
                    }
                }
            }
        }
    }
}

TEST_CASE("angular parts cancel: residual is ell-independent") {
    for (const std::string id : {"T3.2", "C1", "BV-ball"}) {
        const auto m = geometry::make_manifold(5, 1.0);
        for (int ell : {0, 1, 2, 5}) {
            auto cc = build_case(id, params_for(id, 5));
            auto f = profile_for(cc, 0, ell);
            auto rep = verify(cc, m, f, 1e-8);
            CAPTURE(id);
            CAPTURE(ell);
            CHECK(rep.rel_residual < 1e-10);
        }
    }
}

TEST_CASE("gradient and radial variants coincide at ell = 0") {
    for (const std::string id : {"T3.1", "T3.2", "H-bessel-R"}) {
        auto cg = build_case(id, params_for(id, 5), Variant::gradient);
        auto cr = build_case(id, params_for(id, 5), Variant::radial);
        const auto m = geometry::make_manifold(5, 1.0);
        auto f = profile_for(cg, 0, 0);
        auto rg = verify(cg, m, f, 1e-8);
        auto rr = verify(cr, m, f, 1e-8);
        REQUIRE(rg.terms.size() == rr.terms.size());
        for (std::size_t i = 0; i < rg.terms.size(); ++i) {
            CAPTURE(id);
            CAPTURE(i);
            CHECK(rg.terms[i].value == doctest::Approx(rr.terms[i].value).epsilon(1e-13));
        }
    }
}

TEST_CASE("flat C1 passes identically for gradient and radial variants") {
    const auto m = geometry::make_manifold(4, 0.0);
    for (int ell : {0, 1, 2}) {
        auto cg = build_case("C1", {{"N", 4.0}, {"lambda", 0.0}}, Variant::gradient);
        auto cr = build_case("C1", {{"N", 4.0}, {"lambda", 0.0}}, Variant::radial);
        auto f = bump_profile(1.5, 1.0, ell);
        auto rg = verify(cg, m, f, 1e-8);
        auto rr = verify(cr, m, f, 1e-8);
        CAPTURE(ell);
        CHECK(rg.pass);
        CHECK(rr.pass);
        CHECK(rg.rel_residual <= 1e-8);
        CHECK(rr.rel_residual <= 1e-8);
    }
}

TEST_CASE("Euclidean degeneration: b -> 0 approaches the flat catalog") {
    for (const std::string id : {"T1-generic", "C1", "C2"}) {
        auto c_flat = build_case(id, params_for(id, 4));
        auto c_near = build_case(id, params_for(id, 4));
        auto f = profile_for(c_flat, 0, 1);
        auto rep_flat = verify(c_flat, geometry::make_manifold(4, 0.0), f, 1e-8);
        auto rep_near = verify(c_near, geometry::make_manifold(4, 1e-10), f, 1e-8);
        REQUIRE(rep_flat.terms.size() == rep_near.terms.size());
        const double scale = std::fabs(rep_flat.terms.front().value);
        for (std::size_t i = 0; i < rep_flat.terms.size(); ++i) {
            CAPTURE(id);
            CAPTURE(i);
            CHECK(std::fabs(rep_flat.terms[i].value - rep_near.terms[i].value) <= 1e-5 * scale);
        }
        CHECK(rep_near.pass);
    }
}

TEST_CASE("hyperbolic remainder terms are nonnegative") {
    const auto m = geometry::make_manifold(4, 1.0);
    const std::vector<std::pair<std::string, std::string>> remainders = {
        {"T3.1", "((N-2)(N-1)/2)*(rcosh-sinh)/(r^2 sinh)*f^2"},
        {"T3.2", "(r/sinh^{N-1})*grad(sinh^{(N-1)/2} f/sqrt r)^2"},
        {"T3.3", "(N-1)*(phi'/phi)*hyp*f^2"},
        {"H-lambda", "((N-lambda-2)(N-1)/2)*hyp*r^-(lambda+2)*f^2"},
        {"H-critlog", "(N-1)*hyp*f^2/(2|ln(r/R)|r^{N-1})"},
        {"H-bessel-R", "(N-1)(z0/R)*(J0'/J0)*hyp*f^2"},
    };
    for (const auto& [id, name] : remainders) {
        for (int which : {0, 1, 2}) {
            auto c = build_case(id, params_for(id, 4));
            auto f = profile_for(c, which, 1);
            auto rep = verify(c, m, f, 1e-8);
            bool found = false;
            for (const auto& t : rep.terms) {
                if (t.name == name) {
                    CAPTURE(id);
                    CAPTURE(which);
                    CHECK(t.value >= 0.0);
                    found = true;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("scaling covariance: f -> k f multiplies every term by k^2") {
    auto c = build_case("T3.1", {{"N", 4.0}});
    const auto m = geometry::make_manifold(4, 1.0);
    auto f = bump_profile(1.5, 1.0, 1);
    auto rep1 = verify(c, m, f, 1e-8);
    auto c2 = build_case("T3.1", {{"N", 4.0}});
    auto rep2 = verify(c2, m, scaled(f, 3.0), 1e-8);
    REQUIRE(rep1.terms.size() == rep2.terms.size());
    for (std::size_t i = 0; i < rep1.terms.size(); ++i)
        CHECK(rep2.terms[i].value == doctest::Approx(9.0 * rep1.terms[i].value).epsilon(1e-12));
    CHECK(rep1.pass == rep2.pass);
}

TEST_CASE("shifted identities hold across r = R") {
    for (const std::string id : {"T2-shifted", "C3-global"}) {
        for (double R : {1.0, 2.0}) {
            for (int n : {3, 5}) {
                auto c = build_case(id, {{"N", static_cast<double>(n)}, {"R", R}});
                auto f = flat_profile(R, R, 0.6 * R, 1);
                auto rep = verify(c, geometry::make_manifold(n, 1.0), f, 1e-7);
                CAPTURE(id);
                CAPTURE(R);
                CAPTURE(n);
                CAPTURE(rep.rel_residual);
                CHECK(rep.pass);
                CHECK(rep.rel_residual <= 1e-7);
            }
        }
    }
}

TEST_CASE("two-chart oracle: ball and geodesic evaluations agree") {
    for (int n : {3, 5}) {
        for (const std::string id : {"T6-ballmodel", "V2-hyperbolic"}) {
            auto c = build_case(id, {{"N", static_cast<double>(n)}});
            auto f = bump_profile(1.2, 0.8, 1);
            auto rep = verify_ballmodel_oracle(c, f, 1e-8, 1e-9);
            CAPTURE(id);
            CAPTURE(n);
            CAPTURE(rep.rel_residual);
            CHECK(rep.pass);
            for (const auto& [name, delta] : rep.margins) {
                CAPTURE(name);
                CHECK(delta <= 1e-9);
            }
        }
    }
}

TEST_CASE("verification detects an injected coefficient error") {
    auto c = build_case("T3.1", {{"N", 4.0}});
    c.rhs.back().coeff *= 1.0 + 1e-6;
    auto rep = verify(c, geometry::make_manifold(4, 1.0), bump_profile(1.5, 1.0, 0), 1e-8);
    CHECK_FALSE(rep.pass);
    CHECK(rep.rel_residual > 1e-8);
    CHECK(rep.rel_residual < 1e-5);
}

TEST_CASE("comparison inequality margin is strictly positive in negative curvature") {
    auto c = build_case("CT1-ineq", {{"N", 4.0}});
    auto f = bump_profile(1.5, 1.0, 0);
    auto rep = verify(c, geometry::make_manifold(4, 1.0), f, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.rel_residual > 0.0);
    // the margin equals the dropped log-derivative remainder of the identity
    auto ct = build_case("T1-generic", {{"N", 4.0}});
    auto full = verify(ct, geometry::make_manifold(4, 1.0), f, 1e-8);
    // the recorded value of the sign -1 term is already the dropped remainder
    const double logderiv = full.terms.back().value;
    CHECK(rep.abs_residual == doctest::Approx(logderiv).epsilon(1e-10));
}

TEST_CASE("stability inequality margin stays positive") {
    for (double b : {0.0, 1.0}) {
        for (int n : {3, 5}) {
            auto c = build_case("C4-stability", params_for("C4-stability", n));
            auto f = bump_profile(1.0, 0.7, 0);  // straddles R = 1
            auto rep = verify(c, geometry::make_manifold(n, b), f, 1e-8);
            CAPTURE(b);
            CAPTURE(n);
            CHECK(rep.pass);
            CHECK(rep.rel_residual > 0.0);
        }
    }
}

TEST_CASE("parameter and domain errors") {
    CHECK_THROWS_AS(build_case("no-such-case", {{"N", 4.0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_case("T3.3", {{"N", 4.0}, {"alpha", 3.0}, {"R", 1.0}}),
                    std::domain_error);
    CHECK_THROWS_AS(build_case("C1", {{"N", 4.0}, {"lambda", 2.0}}), std::domain_error);
    CHECK_THROWS_AS(build_case("C1", {{"N", 2.0}}), std::domain_error);
    CHECK_THROWS_AS(build_case("C2", {{"N", 4.0}}), std::invalid_argument);  // missing R

    auto hyp = build_case("T3.1", {{"N", 4.0}});
    CHECK_THROWS_AS(verify(hyp, geometry::make_manifold(4, 0.0), bump_profile(1.0, 0.5, 0), 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify(hyp, geometry::make_manifold(5, 1.0), bump_profile(1.0, 0.5, 0), 1e-8),
                    std::invalid_argument);

    auto ball = build_case("C2", {{"N", 4.0}, {"R", 1.0}});
    CHECK_THROWS_AS(verify(ball, geometry::make_manifold(4, 1.0), bump_profile(0.9, 0.5, 0), 1e-8),
                    std::domain_error);  // support crosses R

    auto shifted = build_case("T2-shifted", {{"N", 4.0}, {"R", 1.0}});
    CHECK_THROWS_AS(
        verify(shifted, geometry::make_manifold(4, 1.0), bump_profile(1.0, 0.5, 0), 1e-8),
        std::domain_error);  // needs a flat profile

    CHECK_THROWS_AS(bump_profile(0.4, 0.5, 0), std::domain_error);  // support touches 0
    CHECK_THROWS_AS(
        verify_ballmodel_oracle(build_case("T3.1", {{"N", 4.0}}), bump_profile(1.0, 0.5, 0)),
        std::invalid_argument);
}

TEST_CASE("profile parsing round trip") {
    auto p = parse_profile("bump:c=1.5,w=1.0,ell=2");
    CHECK(p.ell == 2);
    CHECK(p.lo == doctest::Approx(0.5));
    CHECK(p.hi == doctest::Approx(2.5));
    CHECK_NOTHROW(parse_profile("poly:c=1.0,w=0.5"));
    CHECK_NOTHROW(parse_profile("flat:R=1.0,c=1.0,w=0.6"));
    CHECK_THROWS_AS(parse_profile("bump:c=1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("wavelet:c=1,w=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("bump"), std::invalid_argument);
}
