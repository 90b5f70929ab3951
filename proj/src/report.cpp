#include "hardyforge/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace hardyforge::report {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json report_cell(const identities::VerificationReport& r) {
    ordered_json meta;
    meta["case"] = r.case_id;
    meta["N"] = r.dim;
    meta["b"] = r.curv;
    ordered_json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    meta["params"] = params;
    meta["profile"] = r.profile_desc;
    meta["tol"] = r.tol;
    meta["variant"] = r.variant == identities::Variant::gradient ? "gradient" : "radial";

    ordered_json cell;
    cell["meta"] = meta;
    ordered_json terms = ordered_json::array();
    for (const auto& t : r.terms) {
        ordered_json jt;
        jt["name"] = t.name;
        jt["side"] = t.side == 0 ? "lhs" : "rhs";
        jt["value"] = t.value;
        jt["err_est"] = t.err_est;
        terms.push_back(jt);
    }
    cell["terms"] = terms;
    cell["lhs"] = r.lhs_total;
    cell["rhs"] = r.rhs_total;
    cell["abs_residual"] = r.abs_residual;
    cell["rel_residual"] = r.rel_residual;
    if (!r.margins.empty()) {
        ordered_json margins;
        for (const auto& [name, value] : r.margins) margins[name] = value;
        cell["margins"] = margins;
    }
    cell["pass"] = r.pass;
    return cell;
}

}  // namespace

std::string verifications_to_json(const std::vector<identities::VerificationReport>& reports) {
    ordered_json doc;
    doc["schema"] = "1";
    ordered_json results = ordered_json::array();
    for (const auto& r : reports) results.push_back(report_cell(r));
    doc["results"] = results;
    return doc.dump(2) + "\n";
}

std::string verifications_to_csv(const std::vector<identities::VerificationReport>& reports) {
    std::ostringstream os;
    os << "schema,case,N,b,variant,profile,ell,tol,lhs,rhs,abs_residual,rel_residual,pass\n";
    for (const auto& r : reports) {
        os << "1," << r.case_id << ',' << r.dim << ',' << fmt(r.curv) << ','
           << (r.variant == identities::Variant::gradient ? "gradient" : "radial") << ",\""
           << r.profile_desc << "\"," << r.ell << ',' << fmt(r.tol) << ',' << fmt(r.lhs_total) << ','
           << fmt(r.rhs_total) << ',' << fmt(r.abs_residual) << ',' << fmt(r.rel_residual) << ','
           << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string verifications_to_human(const std::vector<identities::VerificationReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.case_id << "  N=" << r.dim
           << " b=" << fmt(r.curv) << "  " << r.profile_desc
           << (r.inequality ? "  margin=" : "  rel_residual=") << fmt(r.rel_residual) << '\n';
        for (const auto& [name, value] : r.margins)
            os << "      " << name << " = " << fmt(value) << '\n';
    }
    return os.str();
}

std::string scan_to_json(const sharpness::QuotientCase& q, const sharpness::ScanResult& s) {
    ordered_json doc;
    doc["schema"] = "1";
    doc["target"] = q.target_id;
    doc["N"] = q.dim;
    doc["R"] = q.R;
    doc["target_constant"] = s.target;
    ordered_json pts = ordered_json::array();
    for (const auto& p : s.points) {
        ordered_json jp;
        jp["k"] = p.k;
        jp["quotient"] = p.quotient;
        pts.push_back(jp);
    }
    doc["points"] = pts;
    doc["min_quotient"] = s.min_quotient;
    doc["ratio"] = s.ratio;
    return doc.dump(2) + "\n";
}

std::string scan_to_csv(const sharpness::QuotientCase& q, const sharpness::ScanResult& s) {
    std::ostringstream os;
    os << "target,N,R,target_constant,k,quotient\n";
    for (const auto& p : s.points)
        os << q.target_id << ',' << q.dim << ',' << fmt(q.R) << ',' << fmt(s.target) << ',' << p.k
           << ',' << fmt(p.quotient) << '\n';
    return os.str();
}

std::string verdict_to_json(const besselpair::PairVerdict& v) {
    ordered_json doc;
    doc["schema"] = "1";
    doc["is_pair"] = v.is_pair;
    if (v.first_zero)
        doc["first_zero"] = *v.first_zero;
    else
        doc["first_zero"] = nullptr;
    doc["inv_weight_integral_diverges"] = v.inv_weight_integral_diverges;
    doc["weight_integral_finite"] = v.weight_integral_finite;
    doc["sample_count"] = v.samples.size();
    return doc.dump(2) + "\n";
}

std::string samples_to_csv(const besselpair::PairVerdict& v) {
    std::ostringstream os;
    os << "r,phi,flux\n";
    for (const auto& s : v.samples)
        os << fmt(s[0]) << ',' << fmt(s[1]) << ',' << fmt(s[2]) << '\n';
    return os.str();
}

}  // namespace hardyforge::report
