#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyforge::quadrature {

struct Spec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    // Points where the integrand is singular or non-smooth. The interval is
    // split there and the endpoints are approached one-sidedly with
    // geometric refinement; the rule never samples them.
    std::vector<double> singular_points;
};

struct Result {
    double value = 0.0;
    double err_est = 0.0;
};

// Subdivision budget exhausted before the tolerance was met.
class ToleranceError : public std::runtime_error {
  public:
    ToleranceError(const std::string& msg, double value, double err_est)
        : std::runtime_error(msg), value(value), err_est(err_est) {}
    double value;
    double err_est;
};

// The integrand returned NaN or +-inf.
class NonFiniteError : public std::runtime_error {
  public:
    NonFiniteError(const std::string& msg, double abscissa)
        : std::runtime_error(msg), abscissa(abscissa) {}
    double abscissa;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. The 7-point Gauss value embedded in
// the 15-point Kronrod rule provides the per-interval error estimate; the
// worst interval is bisected until the global estimate meets the tolerance.
Result integrate(const std::function<double(double)>& f, double a, double b, const Spec& spec = {});

}  // namespace hardyforge::quadrature
