#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardyforge/exprlang.hpp"

namespace hardyforge::besselpair {

using RadialFn = std::function<double(double)>;

// Weights (V, W) on (0, r_max) together with the positive solution phi of
//   (r^{N-1} V phi')' + r^{N-1} W phi = 0
// and its derivative. Catalog pairs carry closed forms; phi may vanish at
// r_max itself (log and Bessel-zero entries), which is flagged through
// singular_points.
struct BesselPair {
    RadialFn V, W, phi, phi_prime;
    double r_max = 0.0;  // +inf allowed
    int dim = 0;
    std::string provenance;
    bool monotone = false;  // phi nonincreasing on (0, r_max)
    std::vector<double> singular_points;
};

// Construct a catalog pair. Known ids:
//   euclid-power        (N, lambda < N-2)                 on (0, inf)
//   critical-log        (N, R)                            on (0, R)
//   bv-bessel           (N, lambda <= N-2, R)             on (0, R)
//   bv-bessel-alpha     (N, lambda, 0<=alpha<=(N-lambda-2)/2, R) on (0, R)
//   poincare-sobolev-phi(N)                               on (0, inf)
//   hyperbolic-G        (N)                               on (0, 1), ball chart
//   poincare-bessel-R   (N, R)                            on (0, R)
BesselPair catalog(const std::string& id, const std::map<std::string, double>& params);

std::vector<std::string> catalog_ids();

// Defect of the pair ODE at r: central difference (step 1e-5 r) of the flux
// p = r^{N-1} V phi' plus r^{N-1} W phi.
double ode_residual(const BesselPair& pair, double r);

struct PairVerdict {
    bool is_pair = false;
    std::optional<double> first_zero;
    std::vector<std::array<double, 3>> samples;  // (r, phi, flux)
    // Side conditions near r = 0, probed by a local power-law fit and
    // reported without gating the verdict.
    bool inv_weight_integral_diverges = false;  // int dr/(r^{N-1}V) = inf
    bool weight_integral_finite = false;        // int r^{N-1}V dr < inf
};

// Shoot the first-order system phi' = p/(r^{N-1}V), p' = -r^{N-1}W phi from
// r = eps with phi = 1, p = 0 and report the first zero of phi, if any,
// before R. The divergence form avoids needing V'.
PairVerdict check_pair(const RadialFn& V, const RadialFn& W, double R, int N, double eps);

// Expression-language front end; bindings for N and R are filled in.
PairVerdict check_pair(const exprlang::Expr& V, const exprlang::Expr& W, double R, int N, double eps,
                       const exprlang::Bindings& extra = {});

// Radial part F and primitive G = int_r^1 F of the ball-chart fundamental
// solution, exact for integer dimensions.
double hyperbolic_f(int dim, double r);
double hyperbolic_g(int dim, double r);

}  // namespace hardyforge::besselpair
