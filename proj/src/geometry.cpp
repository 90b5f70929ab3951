#include "hardyforge/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hardyforge::geometry {

namespace {

// sinh(y)/y with the series taken over for small y.
double sinhc(double y) {
    if (std::fabs(y) < 1e-4) {
        const double y2 = y * y;
        return 1.0 + y2 / 6.0 + y2 * y2 / 120.0 + y2 * y2 * y2 / 5040.0;
    }
    return std::sinh(y) / y;
}

// coth(y) - 1/y, the cancellation-prone part of ct_b.
double cothm(double y) {
    if (std::fabs(y) < 1e-4) {
        const double y2 = y * y;
        return y * (1.0 / 3.0 - y2 / 45.0 + 2.0 * y2 * y2 / 945.0);
    }
    return 1.0 / std::tanh(y) - 1.0 / y;
}

}  // namespace

ModelManifold make_manifold(int dim, double curv) {
    if (dim < 3) throw std::domain_error("ModelManifold: dimension must be >= 3");
    if (!(curv >= 0.0)) throw std::domain_error("ModelManifold: curvature parameter must be >= 0");
    return ModelManifold{dim, curv};
}

double metric_radius(const ModelManifold& m, double t) {
    if (m.curv == 0.0) return t;
    const double s = std::sqrt(m.curv);
    return t * sinhc(s * t);
}

double volume_density(const ModelManifold& m, double t) {
    return std::pow(metric_radius(m, t), m.dim - 1);
}

double log_density_deriv(const ModelManifold& m, double t) {
    if (m.curv == 0.0) return 0.0;
    const double s = std::sqrt(m.curv);
    return (m.dim - 1) * s * cothm(s * t);
}

double comparison_d(const ModelManifold& m, double t) {
    if (m.curv == 0.0) return 0.0;
    const double s = std::sqrt(m.curv);
    return s * t * cothm(s * t);
}

double ball_to_geodesic(double r) {
    if (!(r >= 0.0) || r >= 1.0) throw std::domain_error("ball_to_geodesic: radius must lie in [0,1)");
    return std::log1p(r) - std::log1p(-r);
}

double geodesic_to_ball(double rho) {
    if (!(rho >= 0.0)) throw std::domain_error("geodesic_to_ball: radius must be >= 0");
    return std::tanh(0.5 * rho);
}

double angular_eigenvalue(int dim, int ell) {
    if (ell < 0) throw std::domain_error("angular_eigenvalue: mode must be >= 0");
    return static_cast<double>(ell) * (ell + dim - 2);
}

}  // namespace hardyforge::geometry
