#pragma once

namespace hardyforge::specfun {

// Bessel function of the first kind J_alpha(x), alpha >= 0, x >= 0.
// Ascending series below the switch point, asymptotic expansion plus
// stable upward order recurrence above it. Absolute error <= 1e-13 for
// x <= 50 and orders up to ~20.
double bessel_j(double alpha, double x);

// dJ_alpha/dx. Uses J_alpha' = (J_{alpha-1} - J_{alpha+1})/2 for
// alpha >= 1, J_0' = -J_1, and J_alpha' = (alpha/x) J_alpha - J_{alpha+1}
// for fractional orders below 1 (which need x > 0).
double bessel_j_deriv(double alpha, double x);

// Smallest positive root z_alpha of J_alpha: bracket scan with step 0.1
// up to x = alpha + 20, then bisection plus Newton polish.
double bessel_first_zero(double alpha);

// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

}  // namespace hardyforge::specfun
