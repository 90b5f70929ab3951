#pragma once

#include <string>
#include <vector>

#include "hardyforge/geometry.hpp"
#include "hardyforge/profile.hpp"

namespace hardyforge::sharpness {

// A Rayleigh quotient whose infimum over admissible profiles is the sharp
// constant being probed. Known targets:
//   hardy-hyperbolic  int |d_rho f|^2 dV / int f^2/rho^2 dV      on b=1, -> ((N-2)/2)^2
//   poincare          int |d_rho f|^2 dV / int f^2 dV            on b=1, -> ((N-1)/2)^2
//   bv-ball           (int |grad f|^2 - ((N-2)/2)^2 int f^2/r^2) / int f^2
//                                                        flat ball (0,R), -> z0^2/R^2
struct QuotientCase {
    std::string target_id;
    int dim = 0;
    double R = 1.0;
    double target = 0.0;
    double curv = 1.0;  // curvature parameter of the underlying model
};

QuotientCase make_quotient(const std::string& target, int dim, double R = 1.0);

// Quotient of an explicit profile on the model m.
double rayleigh(const QuotientCase& q, const geometry::ModelManifold& m,
                const identities::RadialProfile& f);

struct ScanPoint {
    int k;
    double quotient;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double min_quotient = 0.0;
    double target = 0.0;
    double ratio = 0.0;  // min_quotient / target
};

// Evaluate the concentrating trial family g_k along a ladder of k values up
// to k_max and report the best quotient against the target constant.
ScanResult sharpness_scan(const QuotientCase& q, int k_max);

// Gradient-free cross-check: Nelder-Mead over bump parameters (c, w, p) for
// profiles r^-p bump((r-c)/w). Validates the hand-built family without
// assuming the optimizer shape.
struct OptResult {
    double quotient = 0.0;
    double c = 0.0, w = 0.0, p = 0.0;
    int evaluations = 0;
};

OptResult optimize_profile(const QuotientCase& q, int max_evaluations = 400);

}  // namespace hardyforge::sharpness
