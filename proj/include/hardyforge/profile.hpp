#pragma once

#include <functional>
#include <string>

namespace hardyforge::identities {

// Radial part of a separated test function f = g(rho) Y_ell(u). For shifted
// (flat-at-R) profiles, g and dg are the already-shifted part
// g(r) - g(R) = (r-R)^2 bump(r), the only combination the identities use.
struct RadialProfile {
    std::function<double(double)> g, dg;
    double lo = 0.0, hi = 0.0;  // support
    int ell = 0;
    bool flat_shift = false;
    double shift_radius = 0.0;  // R where the profile is flat
    double base_value = 0.0;    // g(R) of the unshifted profile
    std::string desc;
};

// exp(-1/(1-s^2)) on |s| < 1 with s = (r-c)/w.
RadialProfile bump_profile(double c, double w, int ell = 0);

// (1-s^2)^4 on |s| < 1.
RadialProfile poly_bump_profile(double c, double w, int ell = 0);

// base + (r-R)^2 bump((r-c)/w): flat to second order at R, as the shifted
// global identities require.
RadialProfile flat_profile(double shift_radius, double c, double w, int ell = 0, double base = 1.0);

RadialProfile scaled(const RadialProfile& p, double factor);

// Parse "bump:c=1.5,w=1.0", "poly:c=...,w=...", "flat:R=...,c=...,w=..."
// with an optional ",ell=". Used by the CLI and the config file.
RadialProfile parse_profile(const std::string& spec);

}  // namespace hardyforge::identities
