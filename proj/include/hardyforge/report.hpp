#pragma once

#include <string>
#include <vector>

#include "hardyforge/besselpair.hpp"
#include "hardyforge/identities.hpp"
#include "hardyforge/sharpness.hpp"

namespace hardyforge::report {

// Verification report files, schema "1":
// {"schema":"1","results":[{"meta":{"case","N","b","params","profile","tol",
//  "variant"},"terms":[{"name","side","value","err_est"}],"lhs","rhs",
//  "abs_residual","rel_residual","margins",{...},"pass"}]}
// CSV flattens one row per (case, N, b, profile, ell).
std::string verifications_to_json(const std::vector<identities::VerificationReport>& reports);
std::string verifications_to_csv(const std::vector<identities::VerificationReport>& reports);
std::string verifications_to_human(const std::vector<identities::VerificationReport>& reports);

std::string scan_to_json(const sharpness::QuotientCase& q, const sharpness::ScanResult& s);
std::string scan_to_csv(const sharpness::QuotientCase& q, const sharpness::ScanResult& s);

std::string verdict_to_json(const besselpair::PairVerdict& v);
std::string samples_to_csv(const besselpair::PairVerdict& v);

}  // namespace hardyforge::report
