#include "hardyforge/sharpness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hardyforge/quadrature.hpp"
#include "hardyforge/specfun.hpp"

namespace hardyforge::sharpness {

namespace {

using Fn = std::function<double(double)>;

quadrature::Spec tight_spec(bool singular_origin) {
    quadrature::Spec qs;
    qs.abs_tol = 1e-13;
    qs.rel_tol = 1e-10;
    qs.max_subdivisions = 4000;
    if (singular_origin) qs.singular_points = {0.0};
    return qs;
}

// C-infinity transition: 1 on t <= 0, 0 on t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double u = std::exp(-1.0 / t);
    const double v = std::exp(-1.0 / (1.0 - t));
    return v / (u + v);
}

double smooth_step_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = std::exp(-1.0 / t);
    const double v = std::exp(-1.0 / (1.0 - t));
    const double du = u / (t * t);
    const double dv = -v / ((1.0 - t) * (1.0 - t));
    return (dv * u - v * du) / ((u + v) * (u + v));
}

struct FamilyIntegrands {
    Fn num, den;
    double lo = 0.0, hi = 0.0;
    // analytic value of the integrals over (0, lo): the family integrands
    // behave like c r^{2/k-1} there, too steep for bisection alone
    double num_tail = 0.0, den_tail = 0.0;
};

// hardy-hyperbolic family: g_k = r^{-(N-2)/2 + 1/k} eta(r), eta fixed.
// The cutoff transitions in log r (mass is log-uniform below it), which
// keeps the cutoff cost an order below the 2% sharpness budget at k = 64.
// Both integrands equal r^{2/k-1} sinhc(r)^{N-1} (up to e^2) below the
// cutoff; the (0, delta) part is integrated from that expansion.
FamilyIntegrands hardy_family(int n, int k) {
    const double kap = 0.5 * (n - 2.0);
    const double e = kap - 1.0 / k;  // g = r^-e eta
    const double a = 0.02, b = 1.0;  // eta = 1 on (0, a], 0 past b
    const double L = std::log(b / a);
    const auto eta = [a, L](double r) { return smooth_step(std::log(r / a) / L); };
    const auto deta = [a, L](double r) { return smooth_step_deriv(std::log(r / a) / L) / (L * r); };
    const auto vol = [n](double r) { return std::pow(std::sinh(r), n - 1.0); };
    FamilyIntegrands f;
    f.lo = 1e-3;
    f.hi = b;
    const double q = 2.0 / k;
    const double s2 = (n - 1.0) / 6.0;  // sinhc^{N-1} = 1 + s2 r^2 + O(r^4)
    const double base =
        std::pow(f.lo, q) / q + s2 * std::pow(f.lo, q + 2.0) / (q + 2.0);
    f.num_tail = e * e * base;
    f.den_tail = base;
    f.num = [e, eta, deta, vol](double r) {
        const double g = std::pow(r, -e);
        const double dg = -e * std::pow(r, -e - 1.0);
        const double d = dg * eta(r) + g * deta(r);
        return d * d * vol(r);
    };
    f.den = [e, eta, vol](double r) {
        const double v = std::pow(r, -e) * eta(r);
        return v * v / (r * r) * vol(r);
    };
    return f;
}

// poincare family: g_k = e^{(-(N-1)/2 + 1/k) rho} eta_k with eta_k widening.
// The e^{(N-1)rho} part of the volume cancels analytically against g^2, so
// the integrands are assembled in the cancelled form to avoid overflow.
FamilyIntegrands poincare_family(int n, int k) {
    const double tau = -0.5 * (n - 1.0) + 1.0 / k;
    const double a = 2.0 * k, b = 3.0 * k;
    const auto eta = [a, b](double rho) { return smooth_step((rho - a) / (b - a)); };
    const auto deta = [a, b](double rho) { return smooth_step_deriv((rho - a) / (b - a)) / (b - a); };
    // g^2 vol = eta^2 e^{2 rho/k} (1 - e^{-2 rho})^{N-1} / 2^{N-1}
    const double scale = std::pow(2.0, 1.0 - n);
    const auto reduced_vol = [n, k, scale](double rho) {
        return scale * std::exp(2.0 * rho / k) * std::pow(1.0 - std::exp(-2.0 * rho), n - 1.0);
    };
    FamilyIntegrands f;
    f.lo = 0.0;
    f.hi = b;
    f.num = [tau, eta, deta, reduced_vol](double rho) {
        const double d = tau * eta(rho) + deta(rho);
        return d * d * reduced_vol(rho);
    };
    f.den = [eta, reduced_vol](double rho) {
        const double v = eta(rho);
        return v * v * reduced_vol(rho);
    };
    return f;
}

// bv-ball family: g_k = r^{-(N-2)/2 + 1/k} J0(z0 r / R) on (0, R).
FamilyIntegrands bv_family(int n, double R, int k) {
    const double kap = 0.5 * (n - 2.0);
    const double e = kap - 1.0 / k;
    const double z0 = specfun::bessel_first_zero(0.0);
    FamilyIntegrands f;
    f.lo = 1e-3 * R;
    f.hi = R;
    {
        // (dg^2 - kap^2 g^2/r^2) r^{N-1} =
        //   (e^2-kap^2) J^2 r^{q-1} - 2e J J' (z0/R) r^q + (J'(z0/R))^2 r^{q+1}
        const double q = 2.0 / k;
        const double d = f.lo;
        const double zz = z0 * z0 / (R * R);
        f.num_tail = (e * e - kap * kap) *
                         (std::pow(d, q) / q - 0.5 * zz * std::pow(d, q + 2.0) / (q + 2.0)) +
                     e * zz * std::pow(d, q + 2.0) / (q + 2.0) +
                     0.25 * zz * zz * std::pow(d, q + 3.0) / (q + 3.0);
        f.den_tail = std::pow(d, q + 2.0) / (q + 2.0) -
                     0.5 * zz * std::pow(d, q + 4.0) / (q + 4.0);
    }
    f.num = [e, kap, z0, R, n](double r) {
        const double u = z0 * r / R;
        const double j = specfun::bessel_j(0.0, u);
        const double dj = (z0 / R) * specfun::bessel_j_deriv(0.0, u);
        const double g = std::pow(r, -e) * j;
        const double dg = -e * std::pow(r, -e - 1.0) * j + std::pow(r, -e) * dj;
        const double w = std::pow(r, n - 1.0);
        return (dg * dg - kap * kap * g * g / (r * r)) * w;
    };
    f.den = [e, z0, R, n](double r) {
        const double g = std::pow(r, -e) * specfun::bessel_j(0.0, z0 * r / R);
        return g * g * std::pow(r, n - 1.0);
    };
    return f;
}

FamilyIntegrands family_for(const QuotientCase& q, int k) {
    if (q.target_id == "hardy-hyperbolic") return hardy_family(q.dim, k);
    if (q.target_id == "poincare") return poincare_family(q.dim, k);
    if (q.target_id == "bv-ball") return bv_family(q.dim, q.R, k);
    throw std::invalid_argument("unknown sharpness target '" + q.target_id + "'");
}

double family_quotient(const QuotientCase& q, int k) {
    const auto fam = family_for(q, k);
    const auto spec = tight_spec(false);
    const double num = fam.num_tail + quadrature::integrate(fam.num, fam.lo, fam.hi, spec).value;
    const double den = fam.den_tail + quadrature::integrate(fam.den, fam.lo, fam.hi, spec).value;
    if (!(den > 0.0)) throw std::runtime_error("sharpness: denominator integral is not positive");
    return num / den;
}

}  // namespace

QuotientCase make_quotient(const std::string& target, int dim, double R) {
    if (dim < 3) throw std::domain_error("make_quotient: dimension must be >= 3");
    QuotientCase q;
    q.target_id = target;
    q.dim = dim;
    q.R = R;
    if (target == "hardy-hyperbolic") {
        q.target = 0.25 * (dim - 2.0) * (dim - 2.0);
        q.curv = 1.0;
    } else if (target == "poincare") {
        q.target = 0.25 * (dim - 1.0) * (dim - 1.0);
        q.curv = 1.0;
    } else if (target == "bv-ball") {
        if (!(R > 0.0)) throw std::domain_error("make_quotient: requires R > 0");
        const double z0 = specfun::bessel_first_zero(0.0);
        q.target = z0 * z0 / (R * R);
        q.curv = 0.0;
    } else {
        throw std::invalid_argument("unknown sharpness target '" + target + "'");
    }
    return q;
}

double rayleigh(const QuotientCase& q, const geometry::ModelManifold& m,
                const identities::RadialProfile& f) {
    if (m.dim != q.dim) throw std::invalid_argument("rayleigh: dimension mismatch");
    const auto spec = tight_spec(false);
    const double el = geometry::angular_eigenvalue(m.dim, f.ell);
    const auto energy = [&](double r) {
        const double d = f.dg(r);
        const double v = f.g(r);
        const double sn = geometry::metric_radius(m, r);
        return (d * d + el * v * v / (sn * sn)) * geometry::volume_density(m, r);
    };
    double num = 0.0, den = 0.0;
    if (q.target_id == "hardy-hyperbolic") {
        num = quadrature::integrate(energy, f.lo, f.hi, spec).value;
        den = quadrature::integrate(
                  [&](double r) {
                      const double v = f.g(r);
                      return v * v / (r * r) * geometry::volume_density(m, r);
                  },
                  f.lo, f.hi, spec)
                  .value;
    } else if (q.target_id == "poincare") {
        num = quadrature::integrate(energy, f.lo, f.hi, spec).value;
        den = quadrature::integrate(
                  [&](double r) {
                      const double v = f.g(r);
                      return v * v * geometry::volume_density(m, r);
                  },
                  f.lo, f.hi, spec)
                  .value;
    } else if (q.target_id == "bv-ball") {
        if (f.hi > q.R) throw std::domain_error("rayleigh: profile support must stay inside (0, R)");
        const double kap = 0.5 * (q.dim - 2.0);
        num = quadrature::integrate(
                  [&](double r) {
                      const double v = f.g(r);
                      return energy(r) - kap * kap * v * v / (r * r) *
                                             geometry::volume_density(m, r);
                  },
                  f.lo, f.hi, spec)
                  .value;
        den = quadrature::integrate(
                  [&](double r) {
                      const double v = f.g(r);
                      return v * v * geometry::volume_density(m, r);
                  },
                  f.lo, f.hi, spec)
                  .value;
    } else {
        throw std::invalid_argument("unknown sharpness target '" + q.target_id + "'");
    }
    if (!(den > 0.0)) throw std::runtime_error("rayleigh: denominator integral is not positive");
    return num / den;
}

ScanResult sharpness_scan(const QuotientCase& q, int k_max) {
    if (k_max < 3) throw std::domain_error("sharpness_scan: k_max must be >= 3");
    ScanResult result;
    result.target = q.target;
    std::vector<int> ladder;
    for (int k = 3; k < k_max; k = std::max(k + 1, static_cast<int>(k * 1.4))) ladder.push_back(k);
    ladder.push_back(k_max);
    double best = std::numeric_limits<double>::infinity();
    for (int k : ladder) {
        const double v = family_quotient(q, k);
        result.points.push_back({k, v});
        best = std::min(best, v);
    }
    result.min_quotient = best;
    result.ratio = best / q.target;
    return result;
}

OptResult optimize_profile(const QuotientCase& q, int max_evaluations) {
    const auto m = geometry::make_manifold(q.dim, q.curv);
    const double hi_cap = (q.target_id == "bv-ball") ? q.R : 3.0;
    const double kap = 0.5 * (q.dim - 2.0);
    int evals = 0;
    // coordinates: x = (ln(c - w), ln w, p); keeps the support box smooth
    const auto objective = [&](const std::array<double, 3>& x) {
        const double lo_edge = std::exp(x[0]);
        const double w = std::exp(x[1]);
        const double c = lo_edge + w;
        const double p = x[2];
        if (lo_edge < 1e-4 || c + w > hi_cap || p < 0.0 || p > kap + 0.2)
            return 1e9;  // outside the admissible box
        ++evals;
        identities::RadialProfile f = identities::bump_profile(c, w, 0);
        if (f.hi > hi_cap) return 1e9;
        const auto bg = f.g;
        const auto bdg = f.dg;
        f.g = [bg, p](double r) { return std::pow(r, -p) * bg(r); };
        f.dg = [bg, bdg, p](double r) {
            return -p * std::pow(r, -p - 1.0) * bg(r) + std::pow(r, -p) * bdg(r);
        };
        try {
            return rayleigh(q, m, f);
        } catch (const std::exception&) {
            return 1e9;
        }
    };

    // Nelder-Mead on (ln(c-w), ln w, p), restarted from a few corners of the
    // search box; the landscape has shallow boundary traps.
    OptResult overall;
    overall.quotient = std::numeric_limits<double>::infinity();
    const std::array<std::array<double, 3>, 3> starts = {{
        {std::log(0.01 * hi_cap), std::log(0.40 * hi_cap), std::max(0.0, kap - 0.2)},
        {std::log(0.002 * hi_cap), std::log(0.45 * hi_cap), std::max(0.0, kap - 0.05)},
        {std::log(0.05 * hi_cap), std::log(0.25 * hi_cap), 0.5 * kap},
    }};
    for (const auto& x0 : starts) {
    std::array<std::array<double, 3>, 4> simplex;
    simplex[0] = x0;
    simplex[1] = {x0[0] + 1.5, x0[1], x0[2]};
    simplex[2] = {x0[0], x0[1] - 0.5, x0[2]};
    simplex[3] = {x0[0], x0[1], std::min(kap + 0.15, x0[2] + 0.2)};
    std::array<double, 4> fv;
    for (int i = 0; i < 4; ++i) fv[i] = objective(simplex[i]);

    while (evals < max_evaluations) {
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::array<std::array<double, 3>, 4> s2;
        std::array<double, 4> f2;
        for (int i = 0; i < 4; ++i) {
            s2[i] = simplex[order[i]];
            f2[i] = fv[order[i]];
        }
        simplex = s2;
        fv = f2;
        if (std::fabs(fv[3] - fv[0]) < 1e-10 * (1.0 + std::fabs(fv[0]))) break;

        std::array<double, 3> centroid{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) centroid[j] += simplex[i][j] / 3.0;
        const auto blend = [&](double t) {
            std::array<double, 3> x;
            for (int j = 0; j < 3; ++j) x[j] = centroid[j] + t * (simplex[3][j] - centroid[j]);
            return x;
        };
        const auto xr = blend(-1.0);
        const double fr = objective(xr);
        if (fr < fv[0]) {
            const auto xe = blend(-2.0);
            const double fe = objective(xe);
            if (fe < fr) {
                simplex[3] = xe;
                fv[3] = fe;
            } else {
                simplex[3] = xr;
                fv[3] = fr;
            }
        } else if (fr < fv[2]) {
            simplex[3] = xr;
            fv[3] = fr;
        } else {
            const auto xc = blend(0.5);
            const double fc = objective(xc);
            if (fc < fv[3]) {
                simplex[3] = xc;
                fv[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int j = 0; j < 3; ++j)
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
                    fv[i] = objective(simplex[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (fv[i] < fv[best]) best = i;
    if (fv[best] < overall.quotient) {
        const double w_best = std::exp(simplex[best][1]);
        overall.quotient = fv[best];
        overall.c = std::exp(simplex[best][0]) + w_best;
        overall.w = w_best;
        overall.p = simplex[best][2];
    }
    }
    overall.evaluations = evals;
    return overall;
}

}  // namespace hardyforge::sharpness
