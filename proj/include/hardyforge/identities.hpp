#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardyforge/besselpair.hpp"
#include "hardyforge/geometry.hpp"
#include "hardyforge/profile.hpp"

namespace hardyforge::identities {

enum class Variant { gradient, radial };

// Functional applied to the transformed radial part h:
//   grad_sq     h'^2 + L h^2 / sn_b^2      (L = ell(ell+N-2))
//   radial_sq   h'^2
//   value_sq    h^2
//   logderiv_sq h^2 * (d/dt log J_b)(r)    (the density log-derivative)
enum class Functional { grad_sq, radial_sq, value_sq, logderiv_sq };

struct Radial {
    std::function<double(double)> f, df;
};

struct Term {
    std::string name;
    int side = 0;  // 0 = lhs, 1 = rhs
    double sign = 1.0;
    double coeff = 1.0;
    besselpair::RadialFn weight;                      // null = 1
    std::function<Radial(const Radial&)> transform;   // null = identity
    Functional functional = Functional::value_sq;
};

// Extra sign conditions (the inequality chains): sum of terms must be
// >= -tol * scale.
struct MarginCheck {
    std::string name;
    std::vector<Term> terms;
};

struct IdentityCase {
    std::string id;
    int dim = 0;
    bool hyperbolic_only = false;  // curvature pinned to b = 1
    std::map<std::string, double> params;
    std::vector<Term> lhs, rhs;
    bool inequality = false;  // pass condition is a margin, not a residual
    bool shifted = false;     // requires a flat profile (condition at r = R)
    double r_max = 0.0;       // case interval (0, r_max); +inf for global
    std::vector<double> singular_points;
    bool ball_chart = false;  // two-chart cross-check available
    Variant variant = Variant::gradient;
    std::vector<MarginCheck> margins;
};

struct TermValue {
    std::string name;
    int side;
    double value;
    double err_est;
};

struct VerificationReport {
    std::string case_id;
    int dim = 0;
    double curv = 0.0;
    Variant variant = Variant::gradient;
    std::map<std::string, double> params;
    std::string profile_desc;
    int ell = 0;
    std::vector<TermValue> terms;
    double lhs_total = 0.0, rhs_total = 0.0;
    // For identity cases abs_residual = |lhs - rhs|; for inequality cases it
    // is the signed margin lhs - rhs. rel_residual is the same normalized by
    // the largest term magnitude.
    double abs_residual = 0.0, rel_residual = 0.0;
    double tol = 0.0;
    bool inequality = false;
    std::vector<std::pair<std::string, double>> margins;  // normalized values
    bool pass = false;
};

// The identity catalog.
std::vector<std::string> case_ids();

struct CaseInfo {
    std::string id;
    std::string params;   // accepted parameters and ranges
    std::string summary;  // what the identity/inequality says
};
std::vector<CaseInfo> case_catalog();

// Build a fully wired case. params must contain N; lambda/alpha/R as the
// entry requires. pair_id overrides the default Bessel pair for the generic
// entries (T1-generic, T2-shifted, CT1-ineq, H1-generic).
IdentityCase build_case(const std::string& id, const std::map<std::string, double>& params,
                        Variant variant = Variant::gradient, const std::string& pair_id = "");

// 1-D integrand of a single term for a separated profile on the model m.
std::function<double(double)> reduce(const RadialProfile& f, const geometry::ModelManifold& m,
                                     const Term& term);

// Stock profiles fitted to a case's interval: three distinct shapes
// (which = 0, 1, 2), flat at R for the shifted cases.
RadialProfile default_profile(const IdentityCase& c, int which, int ell);

VerificationReport verify(const IdentityCase& c, const geometry::ModelManifold& m,
                          const RadialProfile& f, double tol = 1e-8);

// Evaluate the hyperbolic ball-chart cases in Euclidean ball coordinates and
// cross-check every term against the geodesic-chart evaluation.
VerificationReport verify_ballmodel_oracle(const IdentityCase& c, const RadialProfile& f,
                                           double tol = 1e-8, double chart_tol = 1e-9);

}  // namespace hardyforge::identities
