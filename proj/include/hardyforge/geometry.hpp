#pragma once

namespace hardyforge::geometry {

// Rotationally symmetric model space of constant sectional curvature -curv,
// curv >= 0. curv = 0 is Euclidean space, curv = 1 the hyperbolic space H^N.
struct ModelManifold {
    int dim;      // N >= 3
    double curv;  // b >= 0
};

ModelManifold make_manifold(int dim, double curv);

// sn_b(t): t for flat space, sinh(sqrt(b) t)/sqrt(b) otherwise.
double metric_radius(const ModelManifold& m, double t);

// Full radial measure factor sn_b(t)^{N-1} (sphere area excluded).
double volume_density(const ModelManifold& m, double t);

// d/dt log of the density relative to t^{N-1}:
// (N-1)(ct_b(t) - 1/t) with ct_b(t) = sqrt(b) coth(sqrt(b) t) (1/t when b=0).
double log_density_deriv(const ModelManifold& m, double t);

// D_b(t) = t ct_b(t) - 1, the comparison quantity (>= 0 for all t > 0).
double comparison_d(const ModelManifold& m, double t);

// Poincare ball <-> geodesic radius: rho = ln((1+r)/(1-r)), r = tanh(rho/2).
double ball_to_geodesic(double r);
double geodesic_to_ball(double rho);

// Eigenvalue L = ell (ell + N - 2) of the sphere Laplacian on S^{N-1}.
double angular_eigenvalue(int dim, int ell);

}  // namespace hardyforge::geometry
