#include "hardyforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hardyforge::quadrature {

namespace {

// 15-point Kronrod abscissae (positive half, outermost first) and weights,
// with the embedded 7-point Gauss weights on the shared nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv[2 * j] = f(c - dx);
        fv[2 * j + 1] = f(c + dx);
    }
    fv[14] = f(c);
    for (int j = 0; j < 15; ++j) {
        if (!std::isfinite(fv[j])) {
            const double x = (j == 14) ? c : (j % 2 == 0 ? c - h * kXgk[j / 2] : c + h * kXgk[j / 2]);
            throw NonFiniteError("integrand returned a non-finite value at x = " + std::to_string(x), x);
        }
    }
    double resk = kWgk[7] * fv[14];
    double resg = kWg[3] * fv[14];
    for (int j = 0; j < 7; ++j) {
        const double s = fv[2 * j] + fv[2 * j + 1];
        resk += kWgk[j] * s;
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fv[14] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[2 * j] - reskh) + std::fabs(fv[2 * j + 1] - reskh));
    resasc *= h;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return Segment{a, b, resk * h, err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Spec& spec) {
    if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw std::invalid_argument("integrate: tolerances must be positive");

    // Break the interval at the declared singular points.
    std::vector<double> pts{a, b};
    for (double s : spec.singular_points)
        if (s > a && s < b) pts.push_back(s);
    std::sort(pts.begin(), pts.end());

    const auto is_singular = [&](double x) {
        for (double s : spec.singular_points)
            if (x == s) return true;
        return false;
    };

    // Geometric refinement (ratio 1/2) toward singular endpoints before any
    // adaptive control, so integrable endpoint singularities start resolved.
    constexpr int kGeomLevels = 40;
    std::vector<std::pair<double, double>> base;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        const bool sing_lo = is_singular(lo), sing_hi = is_singular(hi);
        std::vector<double> cuts{lo};
        if (sing_lo && sing_hi) {
            const double mid = 0.5 * (lo + hi);
            for (int j = kGeomLevels; j >= 1; --j) cuts.push_back(lo + (mid - lo) * std::ldexp(1.0, -j));
            cuts.push_back(mid);
            for (int j = 1; j <= kGeomLevels; ++j) cuts.push_back(hi - (hi - mid) * std::ldexp(1.0, -j));
        } else if (sing_lo) {
            for (int j = kGeomLevels; j >= 1; --j) cuts.push_back(lo + (hi - lo) * std::ldexp(1.0, -j));
        } else if (sing_hi) {
            for (int j = kGeomLevels; j >= 1; --j) cuts.push_back(hi - (hi - lo) * std::ldexp(1.0, -j));
        }
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        for (size_t j = 0; j + 1 < cuts.size(); ++j)
            if (cuts[j] < cuts[j + 1]) base.emplace_back(cuts[j], cuts[j + 1]);
    }

    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;
    for (const auto& [lo, hi] : base) {
        Segment s = gk15(f, lo, hi);
        total += s.value;
        total_err += s.err;
        heap.push(s);
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (splits >= spec.max_subdivisions || heap.empty())
            throw ToleranceError("integrate: subdivision budget exhausted (best value " +
                                     std::to_string(total) + ", err " + std::to_string(total_err) + ")",
                                 total, total_err);
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) continue;  // machine resolution, error stays counted
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    return Result{total, total_err};
}

}  // namespace hardyforge::quadrature
