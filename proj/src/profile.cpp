#include "hardyforge/profile.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hardyforge::identities {

namespace {

void check_support(double c, double w) {
    if (!(w > 0.0)) throw std::domain_error("profile: width must be positive");
    if (!(c - w > 0.0))
        throw std::domain_error("profile: support [c-w, c+w] must stay away from r = 0");
}

double bump_val(double r, double c, double w) {
    const double s = (r - c) / w;
    if (std::fabs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double bump_deriv(double r, double c, double w) {
    const double s = (r - c) / w;
    if (std::fabs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return std::exp(-1.0 / q) * (-2.0 * s / (q * q)) / w;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

RadialProfile bump_profile(double c, double w, int ell) {
    check_support(c, w);
    RadialProfile p;
    p.g = [c, w](double r) { return bump_val(r, c, w); };
    p.dg = [c, w](double r) { return bump_deriv(r, c, w); };
    p.lo = c - w;
    p.hi = c + w;
    p.ell = ell;
    p.desc = "bump:c=" + fmt(c) + ",w=" + fmt(w) + ",ell=" + fmt(ell);
    return p;
}

RadialProfile poly_bump_profile(double c, double w, int ell) {
    check_support(c, w);
    RadialProfile p;
    p.g = [c, w](double r) {
        const double s = (r - c) / w;
        if (std::fabs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return q * q * q * q;
    };
    p.dg = [c, w](double r) {
        const double s = (r - c) / w;
        if (std::fabs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return -8.0 * s * q * q * q / w;
    };
    p.lo = c - w;
    p.hi = c + w;
    p.ell = ell;
    p.desc = "poly:c=" + fmt(c) + ",w=" + fmt(w) + ",ell=" + fmt(ell);
    return p;
}

RadialProfile flat_profile(double shift_radius, double c, double w, int ell, double base) {
    check_support(c, w);
    if (!(shift_radius > 0.0)) throw std::domain_error("profile: shift radius must be positive");
    RadialProfile p;
    // shifted part only: (r - R)^2 bump
    p.g = [shift_radius, c, w](double r) {
        const double d = r - shift_radius;
        return d * d * bump_val(r, c, w);
    };
    p.dg = [shift_radius, c, w](double r) {
        const double d = r - shift_radius;
        return 2.0 * d * bump_val(r, c, w) + d * d * bump_deriv(r, c, w);
    };
    p.lo = c - w;
    p.hi = c + w;
    p.ell = ell;
    p.flat_shift = true;
    p.shift_radius = shift_radius;
    p.base_value = base;
    p.desc = "flat:R=" + fmt(shift_radius) + ",c=" + fmt(c) + ",w=" + fmt(w) + ",ell=" + fmt(ell);
    return p;
}

RadialProfile scaled(const RadialProfile& p, double factor) {
    RadialProfile q = p;
    const auto g = p.g;
    const auto dg = p.dg;
    q.g = [g, factor](double r) { return factor * g(r); };
    q.dg = [dg, factor](double r) { return factor * dg(r); };
    q.desc = p.desc + ",scale=" + fmt(factor);
    return q;
}

RadialProfile parse_profile(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("profile spec must look like kind:key=value,...  got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, double> kv;
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("profile spec: expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    const auto need = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end())
            throw std::invalid_argument("profile spec '" + spec + "' is missing '" + k + "'");
        return it->second;
    };
    const int ell = kv.count("ell") ? static_cast<int>(kv["ell"]) : 0;
    if (kind == "bump") return bump_profile(need("c"), need("w"), ell);
    if (kind == "poly") return poly_bump_profile(need("c"), need("w"), ell);
    if (kind == "flat") return flat_profile(need("R"), need("c"), need("w"), ell);
    throw std::invalid_argument("unknown profile kind '" + kind + "'");
}

}  // namespace hardyforge::identities
