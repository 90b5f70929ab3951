#include "hardyforge/identities.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardyforge/quadrature.hpp"
#include "hardyforge/specfun.hpp"

namespace hardyforge::identities {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using besselpair::RadialFn;

double need(const std::map<std::string, double>& params, const std::string& name,
            const std::string& id) {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument("case '" + id + "' requires parameter '" + name + "'");
    return it->second;
}

double get_or(const std::map<std::string, double>& params, const std::string& name, double fb) {
    auto it = params.find(name);
    return it == params.end() ? fb : it->second;
}

int need_dim(const std::map<std::string, double>& params, const std::string& id) {
    const double n = need(params, "N", id);
    if (n != std::floor(n) || n < 3)
        throw std::domain_error("case '" + id + "': N must be an integer >= 3");
    return static_cast<int>(n);
}

// coth(y) - 1/y; this equals (y cosh y - sinh y)/(y sinh y), the hyperbolic
// remainder weight of the explicit identities. Kept separate from the
// geometry module so the two sides of a verification share no code.
double cothm(double y) {
    if (std::fabs(y) < 1e-4) {
        const double y2 = y * y;
        return y * (1.0 / 3.0 - y2 / 45.0 + 2.0 * y2 * y2 / 945.0);
    }
    return 1.0 / std::tanh(y) - 1.0 / y;
}

RadialFn pow_weight(double e) {
    return [e](double r) { return std::pow(r, e); };
}

std::function<Radial(const Radial&)> over(RadialFn phi, RadialFn dphi) {
    return [phi, dphi](const Radial& g) {
        Radial h;
        const auto gv = g.f;
        const auto gd = g.df;
        h.f = [gv, phi](double r) { return gv(r) / phi(r); };
        h.df = [gv, gd, phi, dphi](double r) {
            const double p = phi(r);
            return (gd(r) * p - gv(r) * dphi(r)) / (p * p);
        };
        return h;
    };
}

std::function<Radial(const Radial&)> times(RadialFn psi, RadialFn dpsi) {
    return [psi, dpsi](const Radial& g) {
        Radial h;
        const auto gv = g.f;
        const auto gd = g.df;
        h.f = [gv, psi](double r) { return gv(r) * psi(r); };
        h.df = [gv, gd, psi, dpsi](double r) { return gd(r) * psi(r) + gv(r) * dpsi(r); };
        return h;
    };
}

Term term(std::string name, int side, double sign, double coeff, RadialFn weight,
          std::function<Radial(const Radial&)> transform, Functional fn) {
    Term t;
    t.name = std::move(name);
    t.side = side;
    t.sign = sign;
    t.coeff = coeff;
    t.weight = std::move(weight);
    t.transform = std::move(transform);
    t.functional = fn;
    return t;
}

Functional grad_fn(Variant v) { return v == Variant::gradient ? Functional::grad_sq : Functional::radial_sq; }

// Catalog pairs usable on geodesic-chart cases.
besselpair::BesselPair geodesic_pair(const std::string& pair_id,
                                     const std::map<std::string, double>& params,
                                     const std::string& case_id) {
    if (pair_id == "hyperbolic-G")
        throw std::invalid_argument("case '" + case_id +
                                    "': hyperbolic-G is a ball-chart pair; use T6-ballmodel/V2-hyperbolic");
    return besselpair::catalog(pair_id, params);
}

// The T1 backbone: V |grad f|^2 - W f^2 = V phi^2 |grad(f/phi)|^2 - V (phi'/phi)(J'/J) f^2.
void t1_terms(IdentityCase& c, const besselpair::BesselPair& p, Variant v) {
    const auto V = p.V;
    const auto W = p.W;
    const auto phi = p.phi;
    const auto dphi = p.phi_prime;
    c.lhs.push_back(term("V*grad(f)^2", 0, +1.0, 1.0, V, nullptr, grad_fn(v)));
    c.lhs.push_back(term("W*f^2", 0, -1.0, 1.0, W, nullptr, Functional::value_sq));
    const RadialFn vphi2 = [V, phi](double r) {
        const double ph = phi(r);
        return V(r) * ph * ph;
    };
    c.rhs.push_back(term("V*phi^2*grad(f/phi)^2", 1, +1.0, 1.0, vphi2, over(phi, dphi), grad_fn(v)));
    const RadialFn vlog = [V, phi, dphi](double r) { return V(r) * dphi(r) / phi(r); };
    c.rhs.push_back(term("V*(phi'/phi)*(J'/J)*f^2", 1, -1.0, 1.0, vlog, nullptr, Functional::logderiv_sq));
}

}  // namespace

std::vector<std::string> case_ids() {
    return {"T1-generic", "T2-shifted", "CT1-ineq",      "C1",         "C2",       "C3-global",
            "C4-stability", "BV-ball",  "T6-ballmodel",  "V2-hyperbolic", "H1-generic", "T3.1",
            "T3.2",        "T3.3",      "H-lambda",      "H-critlog",  "H-bessel-R"};
}

std::vector<CaseInfo> case_catalog() {
    return {
        {"T1-generic", "N>=3, b>=0, pair id + its params",
         "weighted energy identity: int V|grad f|^2 - int W f^2 equals the pair remainder plus the "
         "density log-derivative term, for any catalog Bessel pair"},
        {"T2-shifted", "N>=3, b>=0, R>0",
         "global shifted identity for f - f(R) with a solution vanishing at R; needs profiles flat "
         "to second order at R"},
        {"CT1-ineq", "N>=3, b>=0, monotone pair",
         "comparison inequality: dropping the nonnegative log-derivative remainder for "
         "nonincreasing solutions"},
        {"C1", "N>=3, b>=0, lambda<N-2",
         "power-weight Hardy identity with constant ((N-lambda-2)/2)^2 and gradient remainder in "
         "weight r^{2-N}"},
        {"C2", "N>=3, b>=0, R>0",
         "critical log-weight Hardy identity on (0,R) with constant 1/4 and weight "
         "1/(r^N ln^2(r/R))"},
        {"C3-global", "N>=3, b>=0, R>0",
         "global version of the critical log identity for shifted functions, across r = R"},
        {"C4-stability", "N>=3, b>=0, lambda<N-2, R>0",
         "stability inequality: the Hardy deficit controls the distance to the virtual optimizer "
         "r^{-(N-lambda-2)/2}"},
        {"BV-ball", "N>=3, b>=0, lambda<=N-2, R>0",
         "ball identity adding z0^2/R^2 times the weighted mass, built on the Bessel-function "
         "solution r^{-(N-lambda-2)/2} J0(z0 r/R)"},
        {"T6-ballmodel", "N>=3, b=1",
         "hyperbolic identity produced from a Euclidean pair on the unit ball through the "
         "conformal ball chart"},
        {"V2-hyperbolic", "N>=3, b=1",
         "hyperbolic Hardy identity with the fundamental-solution weight V2 built from "
         "G(r) = int_r^1 (1-t^2)^{N-2} t^{1-N} dt"},
        {"H1-generic", "N>=3, b=1, pair id + its params",
         "hyperbolic form of the energy identity with the explicit remainder weight "
         "(r cosh r - sinh r)/(r sinh r)"},
        {"T3.1", "N>=3, b=1",
         "hyperbolic Hardy identity with constant ((N-2)/2)^2 and exact remainder "
         "((N-2)(N-1)/2) (r cosh r - sinh r)/(r^2 sinh r)"},
        {"T3.2", "N>=3, b=1",
         "spectral-gap identity with bracket (N-1)^2/4 + 1/(4r^2) + (N-1)(N-3)/(4 sinh^2 r) and "
         "remainder through (r/sinh r)^{(N-1)/2}"},
        {"T3.3", "N>=3, b=1, 0<=alpha<=(N-2)/2, R>0",
         "hyperbolic ball identity with constants ((N-2)^2/4 - alpha^2) and z_alpha^2/R^2, plus "
         "the two-step inequality chain"},
        {"H-lambda", "N>=3, b=1, lambda<N-2",
         "power-weight hyperbolic identity with remainder ((N-lambda-2)(N-1)/2) "
         "(r cosh r - sinh r)/(r^{lambda+2} sinh r)"},
        {"H-critlog", "N>=3, b=1, R>0",
         "critical log-weight hyperbolic identity on (0,R) with its curvature remainder"},
        {"H-bessel-R", "N>=3, b=1, R>0",
         "hyperbolic ball identity for the weight r^{2-N} with constant z0^2/R^2 and J0-based "
         "remainder"},
    };
}

IdentityCase build_case(const std::string& id, const std::map<std::string, double>& params,
                        Variant variant, const std::string& pair_id) {
    IdentityCase c;
    c.id = id;
    c.variant = variant;
    c.params = params;
    c.dim = need_dim(params, id);
    const int n = c.dim;
    const double nd = n;
    c.r_max = kInf;

    if (id == "T1-generic" || id == "CT1-ineq") {
        const std::string pid = pair_id.empty() ? "euclid-power" : pair_id;
        auto p = geodesic_pair(pid, params, id);
        if (id == "CT1-ineq" && !p.monotone)
            throw std::domain_error("CT1-ineq requires a pair with nonincreasing solution");
        t1_terms(c, p, variant);
        if (id == "CT1-ineq") {
            c.rhs.pop_back();  // drop the log-derivative remainder: it is the margin
            c.inequality = true;
        }
        c.r_max = p.r_max;
        c.singular_points = p.singular_points;
        return c;
    }

    if (id == "T2-shifted") {
        const double R = need(params, "R", id);
        const std::string pid = pair_id.empty() ? "critical-log" : pair_id;
        auto p = geodesic_pair(pid, params, id);
        t1_terms(c, p, variant);
        c.shifted = true;
        c.r_max = kInf;
        c.singular_points = {R};
        return c;
    }

    if (id == "H1-generic") {
        const std::string pid = pair_id.empty() ? "poincare-sobolev-phi" : pair_id;
        auto p = geodesic_pair(pid, params, id);
        c.hyperbolic_only = true;
        const auto V = p.V;
        const auto W = p.W;
        const auto phi = p.phi;
        const auto dphi = p.phi_prime;
        c.lhs.push_back(term("V*grad(f)^2", 0, +1.0, 1.0, V, nullptr, grad_fn(variant)));
        c.lhs.push_back(term("W*f^2", 0, -1.0, 1.0, W, nullptr, Functional::value_sq));
        const RadialFn vphi2 = [V, phi](double r) {
            const double ph = phi(r);
            return V(r) * ph * ph;
        };
        c.rhs.push_back(
            term("V*phi^2*grad(f/phi)^2", 1, +1.0, 1.0, vphi2, over(phi, dphi), grad_fn(variant)));
        const RadialFn w = [V, phi, dphi](double r) { return V(r) * (dphi(r) / phi(r)) * cothm(r); };
        c.rhs.push_back(
            term("(N-1)*V*(phi'/phi)*hyp*f^2", 1, -1.0, nd - 1.0, w, nullptr, Functional::value_sq));
        c.r_max = p.r_max;
        c.singular_points = p.singular_points;
        return c;
    }

    if (id == "C1" || id == "H-lambda") {
        const double lam = get_or(params, "lambda", 0.0);
        if (!(lam < nd - 2.0)) throw std::domain_error(id + ": requires lambda < N-2");
        const double kappa = 0.5 * (nd - lam - 2.0);
        c.hyperbolic_only = (id == "H-lambda");
        c.lhs.push_back(
            term("r^-lambda*grad(f)^2", 0, +1.0, 1.0, pow_weight(-lam), nullptr, grad_fn(variant)));
        c.lhs.push_back(term("((N-lambda-2)/2)^2*r^-(lambda+2)*f^2", 0, -1.0, kappa * kappa,
                             pow_weight(-lam - 2.0), nullptr, Functional::value_sq));
        c.rhs.push_back(term("r^(2-N)*grad(r^kappa*f)^2", 1, +1.0, 1.0, pow_weight(2.0 - nd),
                             times(pow_weight(kappa),
                                   [kappa](double r) { return kappa * std::pow(r, kappa - 1.0); }),
                             grad_fn(variant)));
        if (id == "C1") {
            // -V (phi'/phi)(J'/J) f^2 with phi'/phi = -kappa/r
            c.rhs.push_back(term("kappa*r^-(lambda+1)*(J'/J)*f^2", 1, +1.0, kappa,
                                 pow_weight(-lam - 1.0), nullptr, Functional::logderiv_sq));
        } else {
            const RadialFn w = [lam](double r) { return cothm(r) * std::pow(r, -lam - 1.0); };
            c.rhs.push_back(term("((N-lambda-2)(N-1)/2)*hyp*r^-(lambda+2)*f^2", 1, +1.0,
                                 (nd - lam - 2.0) * (nd - 1.0) * 0.5, w, nullptr,
                                 Functional::value_sq));
        }
        return c;
    }

    if (id == "C2" || id == "C3-global" || id == "H-critlog") {
        const double R = need(params, "R", id);
        if (!(R > 0.0)) throw std::domain_error(id + ": requires R > 0");
        c.hyperbolic_only = (id == "H-critlog");
        c.shifted = (id == "C3-global");
        const RadialFn w_hardy = [n, R](double r) {
            const double l = std::log(r / R);
            return 1.0 / (std::pow(r, static_cast<double>(n)) * l * l);
        };
        const RadialFn w_gradrem = [n, R](double r) {
            return std::pow(r, 2.0 - n) * std::fabs(std::log(r / R));
        };
        const RadialFn sqrt_log = [R](double r) { return std::sqrt(std::fabs(std::log(r / R))); };
        const RadialFn dsqrt_log = [R](double r) {
            const double l = std::log(r / R);
            const double sgn = l < 0.0 ? -1.0 : 1.0;
            return sgn / (2.0 * r * std::sqrt(std::fabs(l)));
        };
        c.lhs.push_back(
            term("r^(2-N)*grad(f)^2", 0, +1.0, 1.0, pow_weight(2.0 - nd), nullptr, grad_fn(variant)));
        c.lhs.push_back(term("(1/4)*f^2/(r^N*ln^2(r/R))", 0, -1.0, 0.25, w_hardy, nullptr,
                             Functional::value_sq));
        c.rhs.push_back(term("r^(2-N)*|ln(r/R)|*grad(f/sqrt|ln|)^2", 1, +1.0, 1.0, w_gradrem,
                             over(sqrt_log, dsqrt_log), grad_fn(variant)));
        if (id == "H-critlog") {
            const RadialFn w = [n, R](double r) {
                return std::pow(r, 1.0 - n) * cothm(r) / (2.0 * std::fabs(std::log(r / R)));
            };
            c.rhs.push_back(term("(N-1)*hyp*f^2/(2|ln(r/R)|r^{N-1})", 1, +1.0, nd - 1.0, w, nullptr,
                                 Functional::value_sq));
            c.r_max = R;
            c.singular_points = {R};
        } else {
            // -V(phi'/phi)(J'/J) f^2 with phi'/phi = sign(r-R)/(2r|ln(r/R)|)
            const RadialFn w = [n, R](double r) {
                const double l = std::log(r / R);
                const double sgn = l < 0.0 ? -1.0 : 1.0;
                return -sgn * std::pow(r, 1.0 - n) / (2.0 * std::fabs(l));
            };
            c.rhs.push_back(
                term("-V*(phi'/phi)*(J'/J)*f^2", 1, +1.0, 1.0, w, nullptr, Functional::logderiv_sq));
            if (id == "C2") {
                c.r_max = R;
                c.singular_points = {R};
            } else {
                c.r_max = kInf;
                c.singular_points = {R};
            }
        }
        return c;
    }

    if (id == "C4-stability") {
        const double lam = get_or(params, "lambda", 0.0);
        const double R = need(params, "R", id);
        if (!(lam < nd - 2.0)) throw std::domain_error("C4-stability: requires lambda < N-2");
        if (!(R > 0.0)) throw std::domain_error("C4-stability: requires R > 0");
        const double kappa = 0.5 * (nd - lam - 2.0);
        c.inequality = true;
        c.lhs.push_back(
            term("r^-lambda*grad(f)^2", 0, +1.0, 1.0, pow_weight(-lam), nullptr, grad_fn(variant)));
        c.rhs.push_back(term("((N-lambda-2)/2)^2*r^-(lambda+2)*f^2", 1, +1.0, kappa * kappa,
                             pow_weight(-lam - 2.0), nullptr, Functional::value_sq));
        const RadialFn w_stab = [lam, R](double r) {
            const double l = std::log(r / R);
            return 1.0 / (std::pow(r, lam + 2.0) * l * l);
        };
        // h = f - R^kappa f(R) r^-kappa, the distance to the virtual optimizer
        const auto stab_transform = [kappa, R](const Radial& g) {
            Radial h;
            const auto gv = g.f;
            const auto gd = g.df;
            h.f = [gv, kappa, R](double r) {
                return gv(r) - std::pow(R, kappa) * gv(R) * std::pow(r, -kappa);
            };
            h.df = [gv, gd, kappa, R](double r) {
                return gd(r) + kappa * std::pow(R, kappa) * gv(R) * std::pow(r, -kappa - 1.0);
            };
            return h;
        };
        c.rhs.push_back(term("(1/4)*|f - R^k f(R) r^-k|^2/(r^{lambda+2} ln^2(r/R))", 1, +1.0, 0.25,
                             w_stab, stab_transform, Functional::value_sq));
        c.singular_points = {R};
        return c;
    }

    if (id == "BV-ball") {
        const double lam = get_or(params, "lambda", 0.0);
        const double R = need(params, "R", id);
        if (!(lam <= nd - 2.0)) throw std::domain_error("BV-ball: requires lambda <= N-2");
        if (!(R > 0.0)) throw std::domain_error("BV-ball: requires R > 0");
        const double kappa = 0.5 * (nd - lam - 2.0);
        const double z0 = specfun::bessel_first_zero(0.0);
        c.lhs.push_back(
            term("r^-lambda*grad(f)^2", 0, +1.0, 1.0, pow_weight(-lam), nullptr, grad_fn(variant)));
        c.lhs.push_back(term("((N-lambda-2)/2)^2*r^-(lambda+2)*f^2", 0, -1.0, kappa * kappa,
                             pow_weight(-lam - 2.0), nullptr, Functional::value_sq));
        c.rhs.push_back(term("(z0/R)^2*r^-lambda*f^2", 1, +1.0, z0 * z0 / (R * R),
                             pow_weight(-lam), nullptr, Functional::value_sq));
        const RadialFn j0 = [z0, R](double r) { return specfun::bessel_j(0.0, z0 * r / R); };
        const RadialFn w_grad = [n, j0](double r) {
            const double j = j0(r);
            return std::pow(r, 2.0 - n) * j * j;
        };
        const RadialFn psi = [kappa, j0](double r) { return std::pow(r, kappa) / j0(r); };
        const RadialFn dpsi = [kappa, j0, z0, R](double r) {
            const double j = j0(r);
            const double dj = (z0 / R) * specfun::bessel_j_deriv(0.0, z0 * r / R);
            return kappa * std::pow(r, kappa - 1.0) / j - std::pow(r, kappa) * dj / (j * j);
        };
        c.rhs.push_back(term("r^(2-N)*J0^2*grad(r^kappa f/J0)^2", 1, +1.0, 1.0, w_grad,
                             times(psi, dpsi), grad_fn(variant)));
        const RadialFn w_log = [lam, kappa, j0, z0, R](double r) {
            const double philog =
                -kappa / r + (z0 / R) * specfun::bessel_j_deriv(0.0, z0 * r / R) / j0(r);
            return -std::pow(r, -lam) * philog;
        };
        c.rhs.push_back(
            term("-V*(phi'/phi)*(J'/J)*f^2", 1, +1.0, 1.0, w_log, nullptr, Functional::logderiv_sq));
        c.r_max = R;
        c.singular_points = {R};
        return c;
    }

    if (id == "T6-ballmodel" || id == "V2-hyperbolic") {
        c.hyperbolic_only = true;
        c.ball_chart = true;
        const auto ball = [](double rho) { return std::tanh(0.5 * rho); };
        const auto dball = [ball](double rho) {
            const double s = ball(rho);
            return 0.5 * (1.0 - s * s);
        };
        if (id == "T6-ballmodel") {
            // Euclidean pair (1, ((N-2)/2)^2/s^2) with phi = s^{-(N-2)/2} moved
            // through the ball chart: V(s) = (1-s^2)^{N-2}, W(s) = ((N-2)/2)^2 (1-s^2)^N/(4s^2).
            const double kappa = 0.5 * (nd - 2.0);
            const RadialFn v_w = [n, ball](double rho) {
                const double s = ball(rho);
                return std::pow(1.0 - s * s, static_cast<double>(n - 2));
            };
            const RadialFn w_w = [n, kappa, ball](double rho) {
                const double s = ball(rho);
                return kappa * kappa * std::pow(1.0 - s * s, static_cast<double>(n)) / (4.0 * s * s);
            };
            const RadialFn phi_c = [kappa, ball](double rho) { return std::pow(ball(rho), -kappa); };
            const RadialFn dphi_c = [kappa, ball, dball](double rho) {
                const double s = ball(rho);
                return -kappa * std::pow(s, -kappa - 1.0) * dball(rho);
            };
            c.lhs.push_back(term("V(s)*grad(f)^2", 0, +1.0, 1.0, v_w, nullptr, grad_fn(variant)));
            c.lhs.push_back(term("W(s)*f^2", 0, -1.0, 1.0, w_w, nullptr, Functional::value_sq));
            const RadialFn vphi2 = [v_w, phi_c](double rho) {
                const double p = phi_c(rho);
                return v_w(rho) * p * p;
            };
            c.rhs.push_back(term("V(s)*phi(s)^2*grad(f/phi(s))^2", 1, +1.0, 1.0, vphi2,
                                 over(phi_c, dphi_c), grad_fn(variant)));
        } else {
            const double kappa0 = 0.5 * (nd - 2.0);
            const RadialFn v2_w = [n, ball](double rho) {
                const double s = ball(rho);
                const double f = besselpair::hyperbolic_f(n, s);
                const double g = besselpair::hyperbolic_g(n, s);
                const double om = 1.0 - s * s;
                return f * f * om * om / (4.0 * (n - 2.0) * (n - 2.0) * g * g);
            };
            const RadialFn g_w = [n, ball](double rho) { return besselpair::hyperbolic_g(n, ball(rho)); };
            const RadialFn phi_c = [g_w](double rho) { return std::sqrt(g_w(rho)); };
            const RadialFn dphi_c = [n, ball, dball](double rho) {
                const double s = ball(rho);
                return -besselpair::hyperbolic_f(n, s) * dball(rho) /
                       (2.0 * std::sqrt(besselpair::hyperbolic_g(n, s)));
            };
            c.lhs.push_back(term("grad(f)^2", 0, +1.0, 1.0, nullptr, nullptr, grad_fn(variant)));
            c.lhs.push_back(term("((N-2)/2)^2*V2(s)*f^2", 0, -1.0, kappa0 * kappa0, v2_w, nullptr,
                                 Functional::value_sq));
            c.rhs.push_back(term("G(s)*grad(f/sqrt G)^2", 1, +1.0, 1.0, g_w, over(phi_c, dphi_c),
                                 grad_fn(variant)));
        }
        return c;
    }

    if (id == "T3.1") {
        c.hyperbolic_only = true;
        const double kappa = 0.5 * (nd - 2.0);
        c.lhs.push_back(term("grad(f)^2", 0, +1.0, 1.0, nullptr, nullptr, grad_fn(variant)));
        c.lhs.push_back(term("((N-2)/2)^2*f^2/r^2", 0, -1.0, kappa * kappa, pow_weight(-2.0),
                             nullptr, Functional::value_sq));
        c.rhs.push_back(term("r^(2-N)*grad(r^((N-2)/2) f)^2", 1, +1.0, 1.0, pow_weight(2.0 - nd),
                             times(pow_weight(kappa),
                                   [kappa](double r) { return kappa * std::pow(r, kappa - 1.0); }),
                             grad_fn(variant)));
        const RadialFn w = [](double r) { return cothm(r) / r; };
        c.rhs.push_back(term("((N-2)(N-1)/2)*(rcosh-sinh)/(r^2 sinh)*f^2", 1, +1.0,
                             0.5 * (nd - 2.0) * (nd - 1.0), w, nullptr, Functional::value_sq));
        return c;
    }

    if (id == "T3.2") {
        c.hyperbolic_only = true;
        c.lhs.push_back(term("grad(f)^2", 0, +1.0, 1.0, nullptr, nullptr, grad_fn(variant)));
        c.lhs.push_back(term("((N-1)^2/4)*f^2", 0, -1.0, 0.25 * (nd - 1.0) * (nd - 1.0), nullptr,
                             nullptr, Functional::value_sq));
        c.lhs.push_back(
            term("(1/4)*f^2/r^2", 0, -1.0, 0.25, pow_weight(-2.0), nullptr, Functional::value_sq));
        const RadialFn invsinh2 = [](double r) {
            const double s = std::sinh(r);
            return 1.0 / (s * s);
        };
        c.lhs.push_back(term("((N-1)(N-3)/4)*f^2/sinh^2", 0, -1.0, 0.25 * (nd - 1.0) * (nd - 3.0),
                             invsinh2, nullptr, Functional::value_sq));
        const RadialFn w = [n](double r) {
            return r / std::pow(std::sinh(r), static_cast<double>(n - 1));
        };
        const RadialFn psi = [n](double r) {
            return std::pow(std::sinh(r), 0.5 * (n - 1.0)) / std::sqrt(r);
        };
        const RadialFn dpsi = [n](double r) {
            const double s = std::sinh(r);
            const double half = 0.5 * (n - 1.0);
            return half * std::pow(s, half - 1.0) * std::cosh(r) / std::sqrt(r) -
                   std::pow(s, half) / (2.0 * r * std::sqrt(r));
        };
        c.rhs.push_back(term("(r/sinh^{N-1})*grad(sinh^{(N-1)/2} f/sqrt r)^2", 1, +1.0, 1.0, w,
                             times(psi, dpsi), grad_fn(variant)));
        return c;
    }

    if (id == "T3.3") {
        c.hyperbolic_only = true;
        const double alpha = get_or(params, "alpha", 0.0);
        const double R = need(params, "R", id);
        if (!(R > 0.0)) throw std::domain_error("T3.3: requires R > 0");
        if (!(alpha >= 0.0) || !(alpha <= 0.5 * (nd - 2.0)))
            throw std::domain_error("T3.3: requires 0 <= alpha <= (N-2)/2");
        const double kappa = 0.5 * (nd - 2.0);
        const double za = specfun::bessel_first_zero(alpha);
        c.lhs.push_back(term("grad(f)^2", 0, +1.0, 1.0, nullptr, nullptr, grad_fn(variant)));
        c.lhs.push_back(term("((N-2)^2/4 - alpha^2)*f^2/r^2", 0, -1.0,
                             kappa * kappa - alpha * alpha, pow_weight(-2.0), nullptr,
                             Functional::value_sq));
        c.rhs.push_back(term("(z_a/R)^2*f^2", 1, +1.0, za * za / (R * R), nullptr, nullptr,
                             Functional::value_sq));
        const RadialFn ja = [alpha, za, R](double r) {
            return specfun::bessel_j(alpha, za * r / R);
        };
        const RadialFn w_grad = [n, ja](double r) {
            const double j = ja(r);
            return std::pow(r, 2.0 - n) * j * j;
        };
        const RadialFn psi = [kappa, ja](double r) { return std::pow(r, kappa) / ja(r); };
        const RadialFn dpsi = [kappa, ja, alpha, za, R](double r) {
            const double j = ja(r);
            const double dj = (za / R) * specfun::bessel_j_deriv(alpha, za * r / R);
            return kappa * std::pow(r, kappa - 1.0) / j - std::pow(r, kappa) * dj / (j * j);
        };
        c.rhs.push_back(term("r^(2-N)*Ja^2*grad(r^{(N-2)/2} f/Ja)^2", 1, +1.0, 1.0, w_grad,
                             times(psi, dpsi), grad_fn(variant)));
        const RadialFn philog = [kappa, ja, alpha, za, R](double r) {
            return -kappa / r + (za / R) * specfun::bessel_j_deriv(alpha, za * r / R) / ja(r);
        };
        const RadialFn w_rem = [philog](double r) { return philog(r) * cothm(r); };
        c.rhs.push_back(term("(N-1)*(phi'/phi)*hyp*f^2", 1, -1.0, nd - 1.0, w_rem, nullptr,
                             Functional::value_sq));
        // the two inequality steps: the dropped flux term and the dropped remainder
        MarginCheck m1;
        m1.name = "radial-deficit-minus-remainder";
        m1.terms.push_back(term("radial(f)^2", 0, +1.0, 1.0, nullptr, nullptr, Functional::radial_sq));
        m1.terms.push_back(term("hardy", 0, -1.0, kappa * kappa - alpha * alpha, pow_weight(-2.0),
                                nullptr, Functional::value_sq));
        m1.terms.push_back(
            term("bessel", 0, -1.0, za * za / (R * R), nullptr, nullptr, Functional::value_sq));
        m1.terms.push_back(
            term("remainder", 0, +1.0, nd - 1.0, w_rem, nullptr, Functional::value_sq));
        c.margins.push_back(std::move(m1));
        MarginCheck m2;
        m2.name = "comparison-remainder";
        m2.terms.push_back(
            term("remainder", 0, -1.0, nd - 1.0, w_rem, nullptr, Functional::value_sq));
        c.margins.push_back(std::move(m2));
        c.r_max = R;
        c.singular_points = {R};
        return c;
    }

    if (id == "H-bessel-R") {
        c.hyperbolic_only = true;
        const double R = need(params, "R", id);
        if (!(R > 0.0)) throw std::domain_error("H-bessel-R: requires R > 0");
        const double z0 = specfun::bessel_first_zero(0.0);
        const RadialFn j0 = [z0, R](double r) { return specfun::bessel_j(0.0, z0 * r / R); };
        c.lhs.push_back(
            term("r^(2-N)*grad(f)^2", 0, +1.0, 1.0, pow_weight(2.0 - nd), nullptr, grad_fn(variant)));
        c.lhs.push_back(term("(z0/R)^2*r^(2-N)*f^2", 0, -1.0, z0 * z0 / (R * R),
                             pow_weight(2.0 - nd), nullptr, Functional::value_sq));
        const RadialFn w_grad = [n, j0](double r) {
            const double j = j0(r);
            return std::pow(r, 2.0 - n) * j * j;
        };
        c.rhs.push_back(term("r^(2-N)*J0^2*grad(f/J0)^2", 1, +1.0, 1.0, w_grad,
                             over(j0,
                                  [z0, R](double r) {
                                      return (z0 / R) * specfun::bessel_j_deriv(0.0, z0 * r / R);
                                  }),
                             grad_fn(variant)));
        const RadialFn w_rem = [n, j0, z0, R](double r) {
            return (specfun::bessel_j_deriv(0.0, z0 * r / R) / j0(r)) * cothm(r) *
                   std::pow(r, 2.0 - n);
        };
        c.rhs.push_back(term("(N-1)(z0/R)*(J0'/J0)*hyp*f^2", 1, -1.0, (nd - 1.0) * z0 / R, w_rem,
                             nullptr, Functional::value_sq));
        c.r_max = R;
        c.singular_points = {R};
        return c;
    }

    throw std::invalid_argument("unknown case id '" + id + "'");
}

std::function<double(double)> reduce(const RadialProfile& f, const geometry::ModelManifold& m,
                                     const Term& t) {
    Radial base{f.g, f.dg};
    const Radial h = t.transform ? t.transform(base) : base;
    const double el = geometry::angular_eigenvalue(m.dim, f.ell);
    const double s = t.sign * t.coeff;
    const auto w = t.weight;
    const geometry::ModelManifold mm = m;
    switch (t.functional) {
        case Functional::grad_sq:
            return [h, el, s, w, mm](double r) {
                const double sn = geometry::metric_radius(mm, r);
                const double d = h.df(r);
                const double v = h.f(r);
                const double core = d * d + el * v * v / (sn * sn);
                return s * (w ? w(r) : 1.0) * core * geometry::volume_density(mm, r);
            };
        case Functional::radial_sq:
            return [h, s, w, mm](double r) {
                const double d = h.df(r);
                return s * (w ? w(r) : 1.0) * d * d * geometry::volume_density(mm, r);
            };
        case Functional::value_sq:
            return [h, s, w, mm](double r) {
                const double v = h.f(r);
                return s * (w ? w(r) : 1.0) * v * v * geometry::volume_density(mm, r);
            };
        case Functional::logderiv_sq:
            return [h, s, w, mm](double r) {
                const double v = h.f(r);
                return s * (w ? w(r) : 1.0) * v * v * geometry::log_density_deriv(mm, r) *
                       geometry::volume_density(mm, r);
            };
    }
    throw std::logic_error("reduce: bad functional");
}

RadialProfile default_profile(const IdentityCase& c, int which, int ell) {
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

namespace {

quadrature::Result integrate_term(const IdentityCase& c, const geometry::ModelManifold& m,
                                  const RadialProfile& f, const Term& t) {
    quadrature::Spec qs;
    for (double s : c.singular_points)
        if (s > f.lo && s <= f.hi) qs.singular_points.push_back(s);
    const auto integrand = reduce(f, m, t);
    try {
        return quadrature::integrate(integrand, f.lo, f.hi, qs);
    } catch (const quadrature::ToleranceError& e) {
        throw std::runtime_error("term '" + t.name + "': " + e.what());
    } catch (const quadrature::NonFiniteError& e) {
        throw std::runtime_error("term '" + t.name + "': " + e.what());
    }
}

}  // namespace

VerificationReport verify(const IdentityCase& c, const geometry::ModelManifold& m,
                          const RadialProfile& f, double tol) {
    if (m.dim != c.dim)
        throw std::invalid_argument("verify: manifold dimension " + std::to_string(m.dim) +
                                    " does not match case dimension " + std::to_string(c.dim));
    if (c.hyperbolic_only && m.curv != 1.0)
        throw std::invalid_argument("verify: case '" + c.id + "' is stated on b = 1");
    if (!(f.lo > 0.0)) throw std::domain_error("verify: profile support must exclude r = 0");
    if (!c.shifted && std::isfinite(c.r_max) && f.hi > c.r_max)
        throw std::domain_error("verify: profile support must stay inside (0, R)");
    if (c.shifted) {
        if (!f.flat_shift)
            throw std::domain_error("verify: case '" + c.id + "' needs a flat profile (flat:R=...)");
        const double R = c.singular_points.empty() ? 0.0 : c.singular_points.front();
        if (std::fabs(f.shift_radius - R) > 1e-12 * std::max(1.0, R))
            throw std::domain_error("verify: profile flat radius must equal the case radius R");
    }

    VerificationReport rep;
    rep.case_id = c.id;
    rep.dim = c.dim;
    rep.curv = m.curv;
    rep.variant = c.variant;
    rep.params = c.params;
    rep.profile_desc = f.desc;
    rep.ell = f.ell;
    rep.tol = tol;
    rep.inequality = c.inequality;

    double scale = 0.0;
    for (const Term* t : [&] {
             std::vector<const Term*> all;
             for (const auto& x : c.lhs) all.push_back(&x);
             for (const auto& x : c.rhs) all.push_back(&x);
             return all;
         }()) {
        const auto res = integrate_term(c, m, f, *t);
        rep.terms.push_back({t->name, t->side, res.value, res.err_est});
        (t->side == 0 ? rep.lhs_total : rep.rhs_total) += res.value;
        scale = std::max(scale, std::fabs(res.value));
    }

    rep.abs_residual = rep.lhs_total - rep.rhs_total;
    if (!c.inequality) rep.abs_residual = std::fabs(rep.abs_residual);
    rep.rel_residual = scale > 0.0 ? rep.abs_residual / scale : 0.0;

    bool pass = c.inequality ? (rep.rel_residual >= -tol) : (rep.rel_residual <= tol);

    for (const auto& mc : c.margins) {
        double value = 0.0, mscale = 0.0;
        for (const auto& t : mc.terms) {
            const auto res = integrate_term(c, m, f, t);
            value += res.value;
            mscale = std::max(mscale, std::fabs(res.value));
        }
        const double normalized = mscale > 0.0 ? value / mscale : 0.0;
        rep.margins.emplace_back(mc.name, normalized);
        if (normalized < -tol) pass = false;
    }

    rep.pass = pass;
    return rep;
}

VerificationReport verify_ballmodel_oracle(const IdentityCase& c, const RadialProfile& f,
                                           double tol, double chart_tol) {
    if (!c.ball_chart)
        throw std::invalid_argument("verify_ballmodel_oracle: case '" + c.id +
                                    "' has no ball-chart form");
    const auto m = geometry::make_manifold(c.dim, 1.0);
    VerificationReport geo = verify(c, m, f, tol);

    const int n = c.dim;
    const double nd = n;
    const double el = geometry::angular_eigenvalue(n, f.ell);

    // profile moved to the ball chart: s = tanh(rho/2), rho = ln((1+s)/(1-s))
    const auto g = f.g;
    const auto dg = f.dg;
    const auto gb = [g](double s) { return g(std::log1p(s) - std::log1p(-s)); };
    const auto dgb = [dg](double s) {
        const double rho = std::log1p(s) - std::log1p(-s);
        return dg(rho) * 2.0 / (1.0 - s * s);
    };
    const double s_lo = std::tanh(0.5 * f.lo);
    const double s_hi = std::tanh(0.5 * f.hi);

    // ball-chart radial measure (sphere factor dropped, as in the geodesic chart)
    const auto measure = [nd](double s) {
        return std::pow(2.0, nd) * std::pow(s, nd - 1.0) * std::pow(1.0 - s * s, -nd);
    };
    const bool gradient = c.variant == Variant::gradient;
    const auto energy = [el, gradient](double dv, double v, double s) {
        return gradient ? dv * dv + el * v * v / (s * s) : dv * dv;
    };
    // |grad_H|^2 contributes ((1-s^2)/2)^2 per squared Euclidean gradient
    const auto conf2 = [](double s) {
        const double q = 0.5 * (1.0 - s * s);
        return q * q;
    };

    std::vector<std::function<double(double)>> integrands;
    std::vector<std::string> names;
    std::vector<int> sides;
    const double kappa0 = 0.5 * (nd - 2.0);
    if (c.id == "T6-ballmodel") {
        names = {"V(s)*grad(f)^2", "W(s)*f^2", "V(s)*phi(s)^2*grad(f/phi(s))^2"};
        sides = {0, 0, 1};
        integrands.push_back([=](double s) {
            const double w = std::pow(1.0 - s * s, nd - 2.0);
            return w * conf2(s) * energy(dgb(s), gb(s), s) * measure(s);
        });
        integrands.push_back([=](double s) {
            const double w = kappa0 * kappa0 * std::pow(1.0 - s * s, nd) / (4.0 * s * s);
            const double v = gb(s);
            return -w * v * v * measure(s);
        });
        integrands.push_back([=](double s) {
            const double w = std::pow(1.0 - s * s, nd - 2.0);
            const double phi = std::pow(s, -kappa0);
            const double dphi = -kappa0 * std::pow(s, -kappa0 - 1.0);
            const double v = gb(s) / phi;
            const double dv = (dgb(s) * phi - gb(s) * dphi) / (phi * phi);
            return w * phi * phi * conf2(s) * energy(dv, v, s) * measure(s);
        });
    } else {  // V2-hyperbolic
        names = {"grad(f)^2", "((N-2)/2)^2*V2(s)*f^2", "G(s)*grad(f/sqrt G)^2"};
        sides = {0, 0, 1};
        integrands.push_back(
            [=](double s) { return conf2(s) * energy(dgb(s), gb(s), s) * measure(s); });
        integrands.push_back([=](double s) {
            const double fs = besselpair::hyperbolic_f(n, s);
            const double gs = besselpair::hyperbolic_g(n, s);
            const double om = 1.0 - s * s;
            const double v2 = fs * fs * om * om / (4.0 * (nd - 2.0) * (nd - 2.0) * gs * gs);
            const double v = gb(s);
            return -kappa0 * kappa0 * v2 * v * v * measure(s);
        });
        integrands.push_back([=](double s) {
            const double gs = besselpair::hyperbolic_g(n, s);
            const double phi = std::sqrt(gs);
            const double dphi = -besselpair::hyperbolic_f(n, s) / (2.0 * phi);
            const double v = gb(s) / phi;
            const double dv = (dgb(s) * phi - gb(s) * dphi) / (phi * phi);
            return gs * conf2(s) * energy(dv, v, s) * measure(s);
        });
    }

    VerificationReport rep;
    rep.case_id = c.id + "+ball-oracle";
    rep.dim = c.dim;
    rep.curv = 1.0;
    rep.variant = c.variant;
    rep.params = c.params;
    rep.profile_desc = f.desc;
    rep.ell = f.ell;
    rep.tol = tol;

    double scale = 0.0;
    for (std::size_t i = 0; i < integrands.size(); ++i) {
        const auto res = quadrature::integrate(integrands[i], s_lo, s_hi);
        rep.terms.push_back({names[i], sides[i], res.value, res.err_est});
        (sides[i] == 0 ? rep.lhs_total : rep.rhs_total) += res.value;
        scale = std::max(scale, std::fabs(res.value));
    }
    rep.abs_residual = std::fabs(rep.lhs_total - rep.rhs_total);
    rep.rel_residual = scale > 0.0 ? rep.abs_residual / scale : 0.0;
    bool pass = rep.rel_residual <= tol;

    // term-by-term cross check against the geodesic chart
    for (std::size_t i = 0; i < rep.terms.size() && i < geo.terms.size(); ++i) {
        const double a = rep.terms[i].value, b = geo.terms[i].value;
        const double delta = std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
        rep.margins.emplace_back("chart-delta:" + rep.terms[i].name, delta);
        if (delta > chart_tol) pass = false;
    }
    // plain mass and energy, the raw change-of-variables check
    {
        const auto mass_ball = quadrature::integrate(
            [&](double s) {
                const double v = gb(s);
                return v * v * measure(s);
            },
            s_lo, s_hi);
        const auto mass_geo = quadrature::integrate(
            [&](double rho) {
                const double v = g(rho);
                return v * v * geometry::volume_density(m, rho);
            },
            f.lo, f.hi);
        const double delta =
            std::fabs(mass_ball.value - mass_geo.value) / std::max(std::fabs(mass_geo.value), 1e-300);
        rep.margins.emplace_back("chart-delta:mass", delta);
        if (delta > chart_tol) pass = false;

        const auto dir_ball = quadrature::integrate(
            [&](double s) { return conf2(s) * energy(dgb(s), gb(s), s) * measure(s); }, s_lo, s_hi);
        const auto dir_geo = quadrature::integrate(
            [&](double rho) {
                const double sn = geometry::metric_radius(m, rho);
                const double d = dg(rho);
                const double v = g(rho);
                const double core =
                    c.variant == Variant::gradient ? d * d + el * v * v / (sn * sn) : d * d;
                return core * geometry::volume_density(m, rho);
            },
            f.lo, f.hi);
        const double ddelta =
            std::fabs(dir_ball.value - dir_geo.value) / std::max(std::fabs(dir_geo.value), 1e-300);
        rep.margins.emplace_back("chart-delta:dirichlet", ddelta);
        if (ddelta > chart_tol) pass = false;
    }

    rep.pass = pass && geo.pass;
    return rep;
}

}  // namespace hardyforge::identities
