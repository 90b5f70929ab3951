#include "hardyforge/besselpair.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardyforge/specfun.hpp"

namespace hardyforge::besselpair {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double need(const std::map<std::string, double>& params, const std::string& name,
            const std::string& id) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument("catalog '" + id + "' requires parameter '" + name + "'");
    return it->second;
}

double get_or(const std::map<std::string, double>& params, const std::string& name, double fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

int need_dim(const std::map<std::string, double>& params, const std::string& id) {
    const double n = need(params, "N", id);
    if (n != std::floor(n) || n < 3)
        throw std::domain_error("catalog '" + id + "': N must be an integer >= 3");
    return static_cast<int>(n);
}

double cothm(double y) {  // coth(y) - 1/y
    if (std::fabs(y) < 1e-4) {
        const double y2 = y * y;
        return y * (1.0 / 3.0 - y2 / 45.0 + 2.0 * y2 * y2 / 945.0);
    }
    return 1.0 / std::tanh(y) - 1.0 / y;
}

double sinhc(double y) {  // sinh(y)/y
    if (std::fabs(y) < 1e-4) {
        const double y2 = y * y;
        return 1.0 + y2 / 6.0 + y2 * y2 / 120.0;
    }
    return std::sinh(y) / y;
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

}  // namespace

double hyperbolic_f(int dim, double r) {
    return std::pow(1.0 - r * r, dim - 2) / std::pow(r, dim - 1);
}

// G(r) = int_r^1 (1-t^2)^{N-2} t^{1-N} dt. Expanded binomially every term is
// a power of t or 1/t, so the primitive is elementary; near r = 1 that sum
// cancels catastrophically, and repeated integration by parts in u = t^2
// gives a series in powers of (1-u) that stays stable there.
double hyperbolic_g(int dim, double r) {
    if (!(r > 0.0) || r > 1.0) throw std::domain_error("hyperbolic_g: r must lie in (0, 1]");
    if (r < 0.8) {
        double g = 0.0;
        for (int k = 0; k <= dim - 2; ++k) {
            const double c = ((k % 2 == 0) ? 1.0 : -1.0) * binom(dim - 2, k);
            const int e = 2 * k + 2 - dim;
            g += (e == 0) ? -c * std::log(r) : c * (1.0 - std::pow(r, e)) / e;
        }
        return g;
    }
    // G = (1/2) int_x^1 (1-u)^a u^c du with x = r^2, a = N-2, c = -N/2;
    // int_x^1 (1-u)^a u^c du = (1-x)^{a+1} x^c/(a+1) + c/(a+1) int (1-u)^{a+1} u^{c-1} du
    const double x = r * r;
    double a = dim - 2.0;
    double c = -0.5 * dim;
    double coef = 1.0;
    double pow1mx = std::pow(1.0 - x, a + 1.0);
    double powx = std::pow(x, c);
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double term = coef * pow1mx * powx / (a + 1.0);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        coef *= c / (a + 1.0);
        a += 1.0;
        c -= 1.0;
        pow1mx *= 1.0 - x;
        powx /= x;
    }
    return 0.5 * sum;
}

std::vector<std::string> catalog_ids() {
    return {"euclid-power",  "critical-log",        "bv-bessel",   "bv-bessel-alpha",
            "poincare-sobolev-phi", "hyperbolic-G", "poincare-bessel-R"};
}

BesselPair catalog(const std::string& id, const std::map<std::string, double>& params) {
    BesselPair pair;
    pair.provenance = id;

    if (id == "euclid-power") {
        const int n = need_dim(params, id);
        const double lam = get_or(params, "lambda", 0.0);
        if (!(lam < n - 2)) throw std::domain_error("euclid-power: requires lambda < N-2");
        const double kappa = 0.5 * (n - lam - 2.0);  // phi = r^{-kappa}
        pair.dim = n;
        pair.r_max = kInf;
        pair.monotone = true;
        pair.V = [lam](double r) { return std::pow(r, -lam); };
        pair.W = [lam, kappa](double r) { return kappa * kappa * std::pow(r, -lam - 2.0); };
        pair.phi = [kappa](double r) { return std::pow(r, -kappa); };
        pair.phi_prime = [kappa](double r) { return -kappa * std::pow(r, -kappa - 1.0); };
        return pair;
    }

    if (id == "critical-log") {
        const int n = need_dim(params, id);
        const double R = need(params, "R", id);
        if (!(R > 0.0)) throw std::domain_error("critical-log: requires R > 0");
        pair.dim = n;
        pair.r_max = R;
        pair.monotone = true;
        pair.singular_points = {R};
        pair.V = [n](double r) { return std::pow(r, 2.0 - n); };
        pair.W = [n, R](double r) {
            const double l = std::log(r / R);
            return 1.0 / (4.0 * std::pow(r, static_cast<double>(n)) * l * l);
        };
        pair.phi = [R](double r) { return std::sqrt(std::fabs(std::log(r / R))); };
        pair.phi_prime = [R](double r) {
            const double l = std::log(r / R);
            const double sgn = l < 0.0 ? -1.0 : 1.0;
            return sgn / (2.0 * r * std::sqrt(std::fabs(l)));
        };
        return pair;
    }

    if (id == "bv-bessel" || id == "bv-bessel-alpha") {
        const int n = need_dim(params, id);
        const double lam = get_or(params, "lambda", 0.0);
        const double R = need(params, "R", id);
        const double alpha = (id == "bv-bessel") ? 0.0 : need(params, "alpha", id);
        if (!(R > 0.0)) throw std::domain_error(id + ": requires R > 0");
        if (!(lam <= n - 2)) throw std::domain_error(id + ": requires lambda <= N-2");
        if (!(alpha >= 0.0) || !(alpha <= 0.5 * (n - lam - 2.0)))
            throw std::domain_error(id + ": requires 0 <= alpha <= (N-lambda-2)/2");
        const double z = specfun::bessel_first_zero(alpha);
        const double kappa = 0.5 * (n - lam - 2.0);  // phi = r^{-kappa} J_alpha(z r / R)
        pair.dim = n;
        pair.r_max = R;
        pair.monotone = true;
        pair.singular_points = {R};
        pair.V = [lam](double r) { return std::pow(r, -lam); };
        pair.W = [lam, kappa, alpha, z, R](double r) {
            return std::pow(r, -lam) *
                   ((kappa * kappa - alpha * alpha) / (r * r) + z * z / (R * R));
        };
        pair.phi = [kappa, alpha, z, R](double r) {
            return std::pow(r, -kappa) * specfun::bessel_j(alpha, z * r / R);
        };
        pair.phi_prime = [kappa, alpha, z, R](double r) {
            const double u = z * r / R;
            return std::pow(r, -kappa) *
                   ((z / R) * specfun::bessel_j_deriv(alpha, u) -
                    (kappa / r) * specfun::bessel_j(alpha, u));
        };
        return pair;
    }

    if (id == "poincare-sobolev-phi") {
        const int n = need_dim(params, id);
        pair.dim = n;
        pair.r_max = kInf;
        pair.monotone = true;
        pair.V = [n](double r) { return std::pow(r, 2.0 - n); };
        // W = -(N-1)/2 r^{2-N} [c/r + (N+1)/2 c^2 - 1] with c = coth r - 1/r,
        // the expanded form of -(r phi')'/(r^{N-1} phi).
        pair.W = [n](double r) {
            const double c = cothm(r);
            const double bracket = c / r + 0.5 * (n + 1.0) * c * c - 1.0;
            return -0.5 * (n - 1.0) * std::pow(r, 2.0 - n) * bracket;
        };
        pair.phi = [n](double r) { return std::pow(sinhc(r), -0.5 * (n - 1.0)); };
        pair.phi_prime = [n](double r) {
            const double phi = std::pow(sinhc(r), -0.5 * (n - 1.0));
            return -0.5 * (n - 1.0) * cothm(r) * phi;
        };
        return pair;
    }

    if (id == "hyperbolic-G") {
        const int n = need_dim(params, id);
        pair.dim = n;
        pair.r_max = 1.0;
        pair.monotone = true;
        pair.singular_points = {1.0};
        pair.V = [n](double r) { return std::pow(1.0 - r * r, 2.0 - n); };
        pair.W = [n](double r) {
            const double f = hyperbolic_f(n, r);
            const double g = hyperbolic_g(n, r);
            return f * f / (4.0 * g * g) * std::pow(1.0 - r * r, 2.0 - n);
        };
        pair.phi = [n](double r) { return std::sqrt(hyperbolic_g(n, r)); };
        pair.phi_prime = [n](double r) {
            return -hyperbolic_f(n, r) / (2.0 * std::sqrt(hyperbolic_g(n, r)));
        };
        return pair;
    }

    if (id == "poincare-bessel-R") {
        const int n = need_dim(params, id);
        const double R = need(params, "R", id);
        if (!(R > 0.0)) throw std::domain_error("poincare-bessel-R: requires R > 0");
        const double z = specfun::bessel_first_zero(0.0);
        pair.dim = n;
        pair.r_max = R;
        pair.monotone = true;
        pair.singular_points = {R};
        pair.V = [n](double r) { return std::pow(r, 2.0 - n); };
        pair.W = [n, z, R](double r) { return std::pow(r, 2.0 - n) * z * z / (R * R); };
        pair.phi = [z, R](double r) { return specfun::bessel_j(0.0, z * r / R); };
        pair.phi_prime = [z, R](double r) {
            return (z / R) * specfun::bessel_j_deriv(0.0, z * r / R);
        };
        return pair;
    }

    throw std::invalid_argument("unknown catalog pair '" + id + "'");
}

double ode_residual(const BesselPair& pair, double r) {
    const double h = 1e-5 * r;
    const auto flux = [&](double s) {
        return std::pow(s, pair.dim - 1.0) * pair.V(s) * pair.phi_prime(s);
    };
    const double dflux = (flux(r + h) - flux(r - h)) / (2.0 * h);
    return dflux + std::pow(r, pair.dim - 1.0) * pair.W(r) * pair.phi(r);
}

namespace {

struct ShotRhs {
    const RadialFn& V;
    const RadialFn& W;
    int dim;
    void operator()(double r, double phi, double p, double& dphi, double& dp) const {
        const double rv = std::pow(r, dim - 1.0) * V(r);
        if (!std::isfinite(rv) || rv == 0.0)
            throw std::runtime_error(
                "check_pair: non-finite or vanishing weight sample r^{N-1}V at r = " +
                std::to_string(r));
        const double w = W(r);
        if (!std::isfinite(w))
            throw std::runtime_error("check_pair: non-finite weight sample W at r = " +
                                     std::to_string(r));
        dphi = p / rv;
        dp = -std::pow(r, dim - 1.0) * w * phi;
    }
};

}  // namespace

PairVerdict check_pair(const RadialFn& V, const RadialFn& W, double R, int N, double eps) {
    if (N < 3) throw std::domain_error("check_pair: N must be >= 3");
    if (!(eps > 0.0) || !(eps < R)) throw std::domain_error("check_pair: requires 0 < eps < R");

    PairVerdict verdict;

    // Side-condition probes: local power-law slope near r = 0.
    {
        const auto inv = [&](double r) { return 1.0 / (std::pow(r, N - 1.0) * V(r)); };
        const auto wgt = [&](double r) { return std::pow(r, N - 1.0) * V(r); };
        const double r1 = eps, r2 = 8.0 * eps;
        const double s_inv = std::log(inv(r2) / inv(r1)) / std::log(r2 / r1);
        const double s_wgt = std::log(wgt(r2) / wgt(r1)) / std::log(r2 / r1);
        verdict.inv_weight_integral_diverges = s_inv <= -1.0 + 1e-9;
        verdict.weight_integral_finite = s_wgt > -1.0 + 1e-9;
    }

    const ShotRhs rhs{V, W, N};
    const double r_end = R * (1.0 - 1e-9);

    double r = eps, phi = 1.0, p = 0.0, dphi = 0.0, dp = 0.0;
    rhs(r, phi, p, dphi, dp);
    verdict.samples.push_back({r, phi, p});

    // Cash-Karp tableau.
    static const double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static const double b21 = 0.2;
    static const double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static const double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static const double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static const double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                        b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static const double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                        c6 = 512.0 / 1771.0;
    static const double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                        d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = c6 - 0.25;

    const double rtol = 1e-10, atol = 1e-16;
    double h = (r_end - eps) * 1e-6;
    double scale_accum = 1.0;  // the system is linear: renormalize freely
    long steps = 0;
    const long max_steps = 2000000;

    while (r < r_end) {
        if (++steps > max_steps)
            throw std::runtime_error("check_pair: step budget exhausted at r = " + std::to_string(r));
        if (r + h > r_end) h = r_end - r;

        const double k1p = dphi, k1q = dp;
        double k2p, k2q, k3p, k3q, k4p, k4q, k5p, k5q, k6p, k6q;
        rhs(r + a2 * h, phi + h * b21 * k1p, p + h * b21 * k1q, k2p, k2q);
        rhs(r + a3 * h, phi + h * (b31 * k1p + b32 * k2p), p + h * (b31 * k1q + b32 * k2q), k3p, k3q);
        rhs(r + a4 * h, phi + h * (b41 * k1p + b42 * k2p + b43 * k3p),
            p + h * (b41 * k1q + b42 * k2q + b43 * k3q), k4p, k4q);
        rhs(r + a5 * h, phi + h * (b51 * k1p + b52 * k2p + b53 * k3p + b54 * k4p),
            p + h * (b51 * k1q + b52 * k2q + b53 * k3q + b54 * k4q), k5p, k5q);
        rhs(r + a6 * h, phi + h * (b61 * k1p + b62 * k2p + b63 * k3p + b64 * k4p + b65 * k5p),
            p + h * (b61 * k1q + b62 * k2q + b63 * k3q + b64 * k4q + b65 * k5q), k6p, k6q);

        const double phi_new = phi + h * (c1 * k1p + c3 * k3p + c4 * k4p + c6 * k6p);
        const double p_new = p + h * (c1 * k1q + c3 * k3q + c4 * k4q + c6 * k6q);
        const double err_phi = h * (d1 * k1p + d3 * k3p + d4 * k4p + d5 * k5p + d6 * k6p);
        const double err_p = h * (d1 * k1q + d3 * k3q + d4 * k4q + d5 * k5q + d6 * k6q);
        const double tol_phi = atol + rtol * std::max(std::fabs(phi), std::fabs(phi_new));
        const double tol_p = atol + rtol * std::max(std::fabs(p), std::fabs(p_new));
        const double err = std::max(std::fabs(err_phi) / tol_phi, std::fabs(err_p) / tol_p);

        if (err > 1.0) {
            h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
            if (h < 1e-14 * std::max(1.0, r))
                throw std::runtime_error("check_pair: step underflow (stiffness) at r = " +
                                         std::to_string(r));
            continue;
        }

        const double r_new = r + h;
        double dphi_new, dp_new;
        rhs(r_new, phi_new, p_new, dphi_new, dp_new);

        if (phi > 0.0 && phi_new <= 0.0) {
            // Cubic Hermite localization of the crossing inside the step.
            const double h0 = h;
            const auto hermite = [&](double t) {
                const double t2 = t * t, t3 = t2 * t;
                return (2 * t3 - 3 * t2 + 1) * phi + (t3 - 2 * t2 + t) * h0 * dphi +
                       (-2 * t3 + 3 * t2) * phi_new + (t3 - t2) * h0 * dphi_new;
            };
            double lo = 0.0, hi = 1.0;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (hermite(mid) > 0.0) lo = mid; else hi = mid;
            }
            verdict.first_zero = r + 0.5 * (lo + hi) * h0;
            verdict.samples.push_back({r_new, phi_new * scale_accum, p_new * scale_accum});
            verdict.is_pair = false;
            return verdict;
        }

        r = r_new;
        phi = phi_new;
        p = p_new;
        dphi = dphi_new;
        dp = dp_new;
        if (verdict.samples.size() < 100000)
            verdict.samples.push_back({r, phi * scale_accum, p * scale_accum});
        // keep the state near unit size so the error control stays relative
        // across the many decades a decaying solution can span
        const double norm = std::max(std::fabs(phi), std::fabs(p));
        if (norm > 0.0 && (norm < 1e-3 || norm > 1e3)) {
            scale_accum *= norm;
            phi /= norm;
            p /= norm;
            dphi /= norm;
            dp /= norm;
        }
        h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-4), -0.2));
    }

    verdict.is_pair = true;
    if (verdict.samples.size() > 1024) {
        std::vector<std::array<double, 3>> thinned;
        const std::size_t stride = verdict.samples.size() / 1024 + 1;
        for (std::size_t i = 0; i < verdict.samples.size(); i += stride)
            thinned.push_back(verdict.samples[i]);
        thinned.push_back(verdict.samples.back());
        verdict.samples = std::move(thinned);
    }
    return verdict;
}

PairVerdict check_pair(const exprlang::Expr& V, const exprlang::Expr& W, double R, int N, double eps,
                       const exprlang::Bindings& extra) {
    exprlang::Bindings bindings = extra;
    bindings["N"] = static_cast<double>(N);
    bindings["R"] = R;
    const RadialFn vf = [&V, bindings](double r) { return exprlang::eval(V, r, bindings); };
    const RadialFn wf = [&W, bindings](double r) { return exprlang::eval(W, r, bindings); };
    return check_pair(vf, wf, R, N, eps);
}

}  // namespace hardyforge::besselpair
