// hardyforge: verify Hardy-type identities and inequalities on constant
// curvature model spaces, certify Bessel pairs, and run sharpness scans.
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hardyforge/besselpair.hpp"
#include "hardyforge/exprlang.hpp"
#include "hardyforge/identities.hpp"
#include "hardyforge/report.hpp"
#include "hardyforge/sharpness.hpp"
#include "hardyforge/specfun.hpp"

namespace {

using namespace hardyforge;

constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

int thread_budget() {
    if (const char* env = std::getenv("HARDYFORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw CLI::ValidationError("expected a comma separated list");
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    os << content;
}

struct VerifyOptions {
    std::string case_id = "all";
    std::string dims = "3,4,5,8";
    double curv = 1.0;
    double lambda = 0.0;
    bool lambda_set = false;
    double alpha = 0.0;
    double R = 1.0;
    std::string pair_id;
    std::vector<std::string> profiles;
    std::string ells = "0";
    std::string variant = "gradient";
    double tol = 1e-8;
    std::string out;
    std::string format = "json";
};

struct Cell {
    std::string case_id;
    int dim;
    std::string profile_spec;  // empty = default #which
    int which = 0;
    int ell = 0;
};

int run_verify(const VerifyOptions& opt) {
    std::vector<std::string> ids;
    if (opt.case_id == "all") {
        ids = identities::case_ids();
    } else {
        ids.push_back(opt.case_id);
    }
    const auto dims = parse_int_list(opt.dims);
    const auto ells = parse_int_list(opt.ells);
    const auto variant =
        opt.variant == "radial" ? identities::Variant::radial : identities::Variant::gradient;
    if (opt.variant != "radial" && opt.variant != "gradient")
        throw CLI::ValidationError("--variant must be gradient or radial");

    // Build the grid up front; every parameter failure is a usage error.
    std::vector<Cell> cells;
    std::vector<identities::IdentityCase> cases;
    std::vector<identities::RadialProfile> profs;
    std::vector<geometry::ModelManifold> manifolds;
    for (const auto& id : ids) {
        for (int n : dims) {
            std::map<std::string, double> params{{"N", static_cast<double>(n)}};
            params["R"] = opt.R;
            if (opt.lambda_set) params["lambda"] = opt.lambda;
            params["alpha"] = opt.alpha;
            auto c = identities::build_case(id, params, variant, opt.pair_id);
            const double b = c.hyperbolic_only ? 1.0 : opt.curv;
            const auto m = geometry::make_manifold(n, b);
            if (!opt.profiles.empty()) {
                for (const auto& spec : opt.profiles) {
                    // a spec carrying its own ell= is taken verbatim; otherwise
                    // the --ell list is applied on top of it
                    const bool has_ell = spec.find("ell=") != std::string::npos;
                    for (int ell : has_ell ? std::vector<int>{0} : ells) {
                        auto f = identities::parse_profile(
                            has_ell ? spec : spec + ",ell=" + std::to_string(ell));
                        cells.push_back({id, n, spec, 0, f.ell});
                        cases.push_back(c);
                        profs.push_back(f);
                        manifolds.push_back(m);
                    }
                }
            } else {
                for (int which : {0, 1, 2}) {
                    for (int ell : ells) {
                        cells.push_back({id, n, "", which, ell});
                        cases.push_back(c);
                        profs.push_back(identities::default_profile(c, which, ell));
                        manifolds.push_back(m);
                    }
                }
            }
        }
    }

    std::vector<identities::VerificationReport> reports(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(thread_budget(), static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                try {
                    reports[i] = identities::verify(cases[i], manifolds[i], profs[i], opt.tol);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    bool any_fail = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!errors[i].empty()) {
            any_fail = true;
            identities::VerificationReport r;
            r.case_id = cells[i].case_id;
            r.dim = cells[i].dim;
            r.profile_desc = "error: " + errors[i];
            r.pass = false;
            reports[i] = r;
        } else if (!reports[i].pass) {
            any_fail = true;
        }
    }

    std::string content;
    if (opt.format == "json") {
        content = report::verifications_to_json(reports);
    } else if (opt.format == "csv") {
        content = report::verifications_to_csv(reports);
    } else if (opt.format == "human") {
        content = report::verifications_to_human(reports);
    } else {
        throw CLI::ValidationError("--format must be json, csv or human");
    }
    write_output(opt.out, content);
    return any_fail ? kExitMathFailure : kExitPass;
}

struct PairOptions {
    std::string v_src, w_src;
    int dim = 0;
    double R = 0.0;
    double eps = -1.0;
    std::string samples_path;
    std::string out;
};

int run_pair(const PairOptions& opt) {
    const auto v = exprlang::parse(opt.v_src);
    const auto w = exprlang::parse(opt.w_src);
    const double eps = opt.eps > 0.0 ? opt.eps : 1e-6 * opt.R;
    const auto verdict = besselpair::check_pair(v, w, opt.R, opt.dim, eps);
    write_output(opt.out, report::verdict_to_json(verdict));
    if (!opt.samples_path.empty()) {
        std::ofstream os(opt.samples_path, std::ios::binary);
        os << report::samples_to_csv(verdict);
    }
    return verdict.is_pair ? kExitPass : kExitMathFailure;
}

struct SharpnessOptions {
    std::string target;
    int dim = 0;
    int kmax = 64;
    double R = 1.0;
    std::string out;
    std::string format = "csv";
};

int run_sharpness(const SharpnessOptions& opt) {
    const auto q = sharpness::make_quotient(opt.target, opt.dim, opt.R);
    const auto s = sharpness::sharpness_scan(q, opt.kmax);
    std::string content;
    if (opt.format == "json") {
        content = report::scan_to_json(q, s);
    } else if (opt.format == "csv") {
        content = report::scan_to_csv(q, s);
    } else {
        throw CLI::ValidationError("--format must be json or csv");
    }
    write_output(opt.out, content);
    for (const auto& p : s.points)
        if (p.quotient < s.target * (1.0 - 1e-8)) return kExitMathFailure;
    return kExitPass;
}

int run_catalog() {
    std::cout << "identity cases:\n";
    for (const auto& info : identities::case_catalog()) {
        std::cout << "  " << info.id << "  (" << info.params << ")\n      " << info.summary
                  << "\n";
    }
    std::cout << "bessel pairs:\n";
    for (const auto& id : besselpair::catalog_ids()) std::cout << "  " << id << "\n";
    std::cout << "sharpness targets:\n";
    std::cout << "  hardy-hyperbolic  ((N-2)/2)^2 on the b=1 model\n";
    std::cout << "  poincare          ((N-1)/2)^2 on the b=1 model\n";
    std::cout << "  bv-ball           z0^2/R^2 on the flat ball (0,R)\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hardyforge: numerical verification of Hardy-type identities, Bessel pair\n"
        "certification and sharp-constant scans on constant-curvature models"};
    app.set_config("--config", "", "flat key=value config file; command line flags win");
    app.require_subcommand(1);

    VerifyOptions vopt;
    auto* verify = app.add_subcommand(
        "verify", "run identity/inequality verifications over a case x dims x profile grid");
    verify->add_option("--case", vopt.case_id, "case id or 'all'")->capture_default_str();
    verify->add_option("--dims", vopt.dims, "comma separated dimensions")->capture_default_str();
    verify->add_option("--b", vopt.curv, "curvature parameter for curvature-free cases")
        ->capture_default_str();
    verify->add_option("--lambda", vopt.lambda, "power weight exponent")
        ->each([&vopt](const std::string&) { vopt.lambda_set = true; });
    verify->add_option("--alpha", vopt.alpha, "Bessel order for T3.3")->capture_default_str();
    verify->add_option("--R", vopt.R, "interval radius for R-bounded cases")->capture_default_str();
    verify->add_option("--pair", vopt.pair_id, "override the Bessel pair of the generic cases");
    verify->add_option("--profile", vopt.profiles,
                       "profile spec kind:key=value,... (bump/poly/flat); repeatable; "
                       "defaults to three stock profiles per case");
    verify->add_option("--ell", vopt.ells, "comma separated angular modes")->capture_default_str();
    verify->add_option("--variant", vopt.variant, "gradient | radial")->capture_default_str();
    verify->add_option("--tol", vopt.tol, "relative residual tolerance")->capture_default_str();
    verify->add_option("--out", vopt.out, "output path (default stdout)");
    verify->add_option("--format", vopt.format, "json | csv | human")->capture_default_str();

    PairOptions popt;
    auto* pair = app.add_subcommand(
        "pair",
        "shoot a user-supplied (V, W) and report the verdict.\n"
        "Expressions are over the variable r with parameters N R b lambda alpha,\n"
        "the constant pi, operators + - * / ^ (usual precedence, ^ right-assoc,\n"
        "binding tighter than unary minus, exponents must not depend on r) and\n"
        "functions sinh cosh tanh coth exp ln abs sqrt sin cos sign\n"
        "besselj(order, .). Example: --W \"((N-2)/2)^2 / r^2\"");
    pair->add_option("--V", popt.v_src, "weight V(r) expression")->required();
    pair->add_option("--W", popt.w_src, "weight W(r) expression")->required();
    pair->add_option("--N", popt.dim, "dimension")->required();
    pair->add_option("--R", popt.R, "interval end")->required();
    pair->add_option("--eps", popt.eps, "shooting start (default 1e-6 R)");
    pair->add_option("--samples", popt.samples_path, "write the sampled phi curve as CSV");
    pair->add_option("--out", popt.out, "verdict output path (default stdout)");

    SharpnessOptions sopt;
    auto* sharp = app.add_subcommand("sharpness", "scan a concentrating family toward a constant");
    sharp->add_option("--target", sopt.target, "hardy-hyperbolic | poincare | bv-ball")->required();
    sharp->add_option("--N", sopt.dim, "dimension")->required();
    sharp->add_option("--kmax", sopt.kmax, "largest family index")->capture_default_str();
    sharp->add_option("--R", sopt.R, "ball radius for bv-ball")->capture_default_str();
    sharp->add_option("--out", sopt.out, "output path (default stdout)");
    sharp->add_option("--format", sopt.format, "json | csv")->capture_default_str();

    auto* cat = app.add_subcommand("catalog", "list case ids, parameters and pair ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(vopt);
        if (pair->parsed()) return run_pair(popt);
        if (sharp->parsed()) return run_sharpness(sopt);
        if (cat->parsed()) return run_catalog();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const exprlang::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}
