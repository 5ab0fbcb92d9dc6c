// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
// Heavy experiments read their committed configs from --experiments-dir.
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ytf/bubble.hpp"
#include "ytf/comparator.hpp"
#include "ytf/energy.hpp"
#include "ytf/experiment.hpp"
#include "ytf/hemisphere.hpp"
#include "ytf/report.hpp"
#include "ytf/rng.hpp"

using namespace ytf;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_experiments_dir = "experiments";

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

nlohmann::json load_config(const std::string& name) {
    std::ifstream in(g_experiments_dir + "/" + name);
    if (!in) throw std::runtime_error("missing experiment config: " + name);
    nlohmann::json j;
    in >> j;
    return j;
}

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------- criterion 1
bool crit_exact_identities(std::string& detail) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream os;
    for (int n : {6, 8, 10}) {
        const int d = (n - 2) / 2;
        auto outcome = cli::verify_suite(n, d, 25, 20250801 + n);
        os << "n=" << n << (outcome.pass ? " ok" : " FAIL") << " (" << outcome.seconds << "s) ";
        ok = ok && outcome.pass;
    }
    const double secs = seconds_since(t0);
    os << "total " << secs << "s";
    detail = os.str();
    return ok && secs < 120.0;
}

// ---------------------------------------------------------------- criterion 2
bool crit_z_kernel(std::string& detail) {
    const auto t0 = Clock::now();
    auto k62 = sym::z_kernel(6, 2);
    auto k83 = sym::z_kernel(8, 3);
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << "dim ker(6,2)=" << k62.size() << ", dim ker(8,3)=" << k83.size() << ", " << secs << "s";
    detail = os.str();
    return k62.empty() && k83.empty() && secs < 600.0;
}

// ---------------------------------------------------------------- criterion 3
bool crit_gram_k1(std::string& detail) {
    auto res1 = sym::gram_K1(6, 2);
    auto res2 = sym::gram_K1(6, 2);  // fresh assembly, reproducibility
    const bool positive = res1.lambda_min > 0;
    const bool reproducible = std::abs(res1.lambda_min - res2.lambda_min) <= 1e-10;
    const bool scaling = sym::gram_scaling_check(6, 2, rat(2)) &&
                         sym::gram_scaling_check(8, 3, rat(2)) &&
                         sym::gram_scaling_check(8, 2, rat(3, 2));
    std::ostringstream os;
    os << "lambda_min=" << res1.lambda_min << " (dim " << res1.dimension << "), K1^=" << res1.k1_hat
       << ", scaling exact=" << (scaling ? "yes" : "no");
    detail = os.str();
    return positive && reproducible && scaling;
}

// ---------------------------------------------------------------- criterion 4
bool crit_bubble_identities(std::string& detail) {
    Rng rng(424242);
    double worst_lap = 0, worst_hess = 0, worst_fd = 0;
    for (double eps : {0.25, 1.0, 4.0}) {
        bubble::BubbleParams p{6, eps};
        for (int t = 0; t < 100; ++t) {
            double x[6];
            for (int i = 0; i < 6; ++i) x[i] = rng.uniform(-2, 2);
            x[5] = std::abs(x[5]);
            auto res = bubble::identity_residuals(p, x);
            worst_lap = std::max(worst_lap,
                                 std::abs(res.laplace_residual) / std::max(res.laplace_scale, 1e-300));
            worst_hess = std::max(worst_hess, std::abs(res.hessian_residual) /
                                                  std::max(res.hessian_scale, 1e-300));
            // gradient/hessian vs central differences
            auto jet = bubble::u_eval(p, x);
            const double h = 1e-5 * std::max(1.0, eps);
            for (int i = 0; i < 6; ++i) {
                double xp[6], xm[6];
                std::copy(x, x + 6, xp);
                std::copy(x, x + 6, xm);
                xp[i] += h;
                xm[i] -= h;
                const double fd = (bubble::u_value(p, xp) - bubble::u_value(p, xm)) / (2 * h);
                const double scale = std::abs(fd) + std::abs(jet.value) / std::max(1.0, eps);
                worst_fd = std::max(worst_fd, std::abs(jet.gradient[i] - fd) / scale);
                double gp[6], gm[6];
                bubble::u_gradient(p, xp, gp);
                bubble::u_gradient(p, xm, gm);
                for (int k = 0; k < 6; ++k) {
                    const double fd2 = (gp[k] - gm[k]) / (2 * h);
                    const double sc2 = std::abs(fd2) + std::abs(jet.value) /
                                                          std::max(1.0, eps * eps);
                    worst_fd = std::max(worst_fd, std::abs(jet.hessian[i * 6 + k] - fd2) / sc2);
                }
            }
        }
    }
    std::ostringstream os;
    os << "max rel residuals: laplace " << worst_lap << ", hessian " << worst_hess
       << ", fd gap " << worst_fd;
    detail = os.str();
    return worst_lap < report::Tolerances::bubble_identity_rel &&
           worst_hess < report::Tolerances::bubble_identity_rel &&
           worst_fd < report::Tolerances::bubble_fd_rel;
}

// ---------------------------------------------------------------- criterion 5
bool crit_sphere_constant(std::string& detail) {
    const double oracle = 120.0 * std::pow(std::pow(M_PI, 3) / 120.0, 1.0 / 3.0);
    auto sc = bubble::sphere_constant(6);
    const double gap = std::abs(sc.value - oracle);
    double sigma = 0;
    auto mc = bubble::sphere_constant_mc(6, 987654321, 1000000, &sigma);
    const double mc_gap = std::abs(mc.value - oracle);
    std::ostringstream os;
    os << "Y=" << sc.value << " (oracle gap " << gap << "), MC gap " << mc_gap << " vs 3sigma "
       << 3 * sigma;
    detail = os.str();
    return gap <= report::Tolerances::sphere_constant_abs && mc_gap <= 3.0 * sigma;
}

// ---------------------------------------------------------------- criterion 6
bool crit_hemisphere_identity(std::string& detail) {
    const int n = 6;
    bool ok = true;
    double worst = 0;
    // translations e_1, e_2
    for (int a : {0, 1}) {
        std::vector<Poly> v(n, Poly(n));
        v[a] = Poly::constant(n, rat(1));
        auto norms = gauge::hemisphere_identity(v);
        ok = ok && norms.d_norm2 <= 1e-8 * norms.grad_norm2;
        worst = std::max(worst, norms.residual_abs() / norms.scale());
    }
    // three polynomial parity fields
    auto ansatz = gauge::build_ansatz(n, 3);
    Rng rng(55);
    for (int t = 0; t < 3; ++t) {
        std::vector<double> coef(ansatz.fields.size());
        for (auto& c : coef) c = rng.uniform(-1, 1);
        auto norms = gauge::hemisphere_identity(gauge::assemble_field(ansatz, coef));
        worst = std::max(worst, norms.residual_abs() / norms.scale());
    }
    std::ostringstream os;
    os << "worst relative identity residual " << worst;
    detail = os.str();
    return ok && worst < report::Tolerances::hemisphere_identity_rel;
}

// ---------------------------------------------------------------- criterion 7
bool crit_gauge_solver(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    // weak orthogonality on E0 (n = 6, D = d+1 = 3)
    CoeffSet e0 = CoeffSet::standard_quadratic(6);
    auto sol6 = gauge::solve_V(e0, 1.0, 4.0, gauge::build_ansatz(6, 3));
    os << "orthogonality(E0,n=6)=" << sol6.normal_eq_residual_rel;
    ok = ok && sol6.normal_eq_residual_rel < report::Tolerances::weak_orthogonality_rel;

    // strict decrease over three active levels needs mixed-degree data; at
    // n = 6 the weighted space caps the degree at 3 and E0's parity leaves
    // even levels inert, so the 3-level sweep runs at n = 10, D in {3,4,5}.
    const int n10 = 10;
    sym::AdmissibleSpace space(n10, 4);
    CoeffSet c10 = space.random_element(778899, 48);
    double prev = -1, first = -1, last = -1;
    bool decreasing = true;
    os << ", strong RMS(n=10)=[";
    for (int D : {3, 4, 5}) {
        auto sol = gauge::solve_V(c10, 1.0, 4.0, gauge::build_ansatz(n10, D));
        ok = ok && sol.normal_eq_residual_rel < report::Tolerances::weak_orthogonality_rel;
        const double rms = gauge::strong_residual(sol, 384);
        os << rms << (D < 5 ? " " : "]");
        if (prev >= 0 && !(rms < prev * (1.0 + report::Tolerances::strong_residual_slack)))
            decreasing = false;
        if (first < 0) first = rms;
        last = rms;
        prev = rms;
    }
    decreasing = decreasing && last < first;  // net strict decrease
    ok = ok && decreasing;

    // boundary parity residuals exactly zero; xi_n and dn S_nn non-increasing
    double prev_xi = -1, prev_snn = -1;
    bool monotone = true;
    for (int D : {1, 2, 3}) {
        auto sol = gauge::solve_V(e0, 1.0, 4.0, gauge::build_ansatz(6, D));
        auto rep = gauge::boundary_lemma_check(sol);
        ok = ok && rep.max_S_in == 0.0 && rep.max_T_in == 0.0 && rep.max_dn_S_tangential == 0.0;
        const double floor_xi = 1e-12 * std::max(rep.xi_n_term_scale, 1e-300);
        if (prev_xi >= 0 && rep.max_xi_n > std::max(prev_xi, floor_xi)) monotone = false;
        if (prev_snn >= 0 && rep.max_dn_S_nn > std::max(prev_snn, 1e-14)) monotone = false;
        prev_xi = rep.max_xi_n;
        prev_snn = rep.max_dn_S_nn;
    }
    os << ", parity zeros ok, boundary xi_n/dnS_nn non-increasing=" << (monotone ? "yes" : "no");
    detail = os.str();
    return ok && monotone;
}

// ---------------------------------------------------------------- criterion 8
bool crit_integrated_estimate(std::string& detail) {
    const int n = 6;
    CoeffSet e0 = CoeffSet::standard_quadratic(n).scaled(rat(1, 5));
    const double delta = 0.25;
    quad::QuadratureSpec q = quad::QuadratureSpec::acceptance(31415, 12000);
    std::ostringstream os;
    bool ok = true;
    os << "lambda_hat = [";
    for (double frac : {0.5, 0.25, 0.125}) {
        auto sol = gauge::solve_V(e0, delta * frac, delta, gauge::build_ansatz(n, 3));
        auto est = energy::integrated_estimate(sol, q);
        os << " " << est.lambda_hat;
        ok = ok && est.lambda_hat > 0;
    }
    os << " ]";
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 9
bool crit_flux_scaling(std::string& detail) {
    const int n = 6;
    const double delta = 0.25;
    quad::QuadratureSpec q = quad::QuadratureSpec::acceptance(2718, 16000);
    std::ostringstream os;
    // E0 closes the pointwise identity with zero remainder (its radial
    // contraction vanishes identically), so |int rho| must sit at the machine
    // floor: stronger than any slope.
    CoeffSet e0 = CoeffSet::standard_quadratic(n).scaled(rat(1, 5));
    auto scan0 =
        energy::pointwise_identity_scan(e0, delta, {delta / 8, delta / 16, delta / 32}, 3, q);
    os << "E0: identity remainder at machine floor = "
       << (scan0.identically_zero ? "yes" : "NO");
    // The eps^{n-2} flux scaling is measured on seeded generic admissible
    // data, where the xi-flux is nonzero.
    CoeffSet cg = sym::AdmissibleSpace(n, 2).random_element(90210, 14).scaled(rat(1, 4));
    auto scan = energy::pointwise_identity_scan(cg, delta, {delta / 8, delta / 16, delta / 32},
                                                3, q);
    os << "; generic slope " << scan.slope << " (target " << n - 2 << " +- "
       << report::Tolerances::slope_flux_scaling_tol << ")";
    detail = os.str();
    return scan0.identically_zero && !scan.identically_zero &&
           std::abs(scan.slope - (n - 2.0)) <= report::Tolerances::slope_flux_scaling_tol;
}

// --------------------------------------------------------------- criterion 10
bool crit_flat_calibration(std::string& detail) {
    const int n = 6;
    const double Y = bubble::sphere_constant(n).value;
    // flat flux identically zero
    CoeffSet zero(n, 2);
    auto gm = green::solve_green(zero, 0.0, 1.0);
    quad::QuadratureSpec q = quad::QuadratureSpec::acceptance(99, 2000);
    bool flux_zero = true;
    for (double d : {0.25, 0.125})
        flux_zero = flux_zero && green::flux_integral(gm, d, q).value == 0.0;

    const double delta = 0.25;
    std::vector<double> gaps, gaps_cut;
    for (double frac : {0.25, 0.125, 0.0625}) {
        gaps.push_back(comp::flat_energy(n, frac * delta, delta, true).energy - Y);
        gaps_cut.push_back(comp::flat_energy(n, frac * delta, delta, false).energy - Y);
    }
    const bool positive = gaps[0] > 0 && gaps[1] > 0 && gaps[2] > 0;
    const bool decreasing = gaps[1] < gaps[0] && gaps[2] < gaps[1];
    // the truncation penalty carries the (eps/delta)^{n-2} law the criterion
    // pins; the glued profile improves it to ~ (eps/delta)^{n+2} (reported)
    const double slope_cut = std::log(gaps_cut[0] / gaps_cut[2]) / std::log(4.0);
    const double slope_glued = std::log(gaps[0] / gaps[2]) / std::log(4.0);
    std::ostringstream os;
    os << "glued gaps = [" << gaps[0] << " " << gaps[1] << " " << gaps[2] << "] slope "
       << slope_glued << "; truncation slope " << slope_cut << " (target " << n - 2 << " +- "
       << report::Tolerances::slope_flat_calibration_tol
       << "); flux zero=" << (flux_zero ? "yes" : "no");
    detail = os.str();
    return flux_zero && positive && decreasing &&
           std::abs(slope_cut - (n - 2.0)) <= report::Tolerances::slope_flat_calibration_tol &&
           slope_glued > n - 2.0;  // the glued profile must do at least as well
}

// --------------------------------------------------------------- criterion 11
bool crit_headline(std::string& detail) {
    const auto t0 = Clock::now();
    auto cfg = load_config("headline.json");
    auto cc = cli::parse_compare_config(cfg);
    std::vector<std::string> csv;
    std::string verdict;
    auto rep = cli::run_compare(cc, csv, verdict);
    (void)rep;
    const double secs = seconds_since(t0);
    // find the best margin point for the detail line
    std::ostringstream os;
    os << "verdict '" << verdict << "' in " << secs << "s";
    detail = os.str();
    return verdict == "inequality demonstrated" && secs < 3600.0;
}

// --------------------------------------------------------------- criterion 12
bool crit_degenerate(std::string& detail) {
    auto cfg = load_config("degenerate.json");
    auto cc = cli::parse_compare_config(cfg);
    std::ostringstream os;

    // flux convergence: defect halving per delta halving
    auto gm = green::solve_green(cc.inputs.coeffs, cc.inputs.scale, cc.inputs.rho_outer,
                                 cc.inputs.rho_inner);
    auto sweep = green::flux_convergence(gm, cc.deltas, cc.inputs.quadrature);
    bool halving = sweep.defects.size() >= 2;
    for (size_t t = 1; t < sweep.defects.size(); ++t)
        halving = halving && std::abs(sweep.defects[t]) <=
                                 0.5 * std::abs(sweep.defects[t - 1]) + 2.0 * sweep.sigmas[t];
    os << "flux limit " << sweep.limit_estimate << ", defects halve=" << (halving ? "yes" : "no");

    // demonstrated on the constructed sign; no conclusion on the flip
    std::string verdict_pos;
    {
        std::vector<std::string> csv;
        auto rep = cli::run_compare(cc, csv, verdict_pos);
        (void)rep;
    }
    cli::CompareConfig flipped = cc;
    flipped.inputs.scale = -cc.inputs.scale;
    std::string verdict_neg;
    {
        std::vector<std::string> csv;
        auto rep = cli::run_compare(flipped, csv, verdict_neg);
        (void)rep;
    }
    os << "; verdicts: +scale '" << verdict_pos << "', -scale '" << verdict_neg << "'";
    detail = os.str();
    return halving && verdict_pos == "inequality demonstrated" &&
           verdict_neg == "no conclusion from this criterion";
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--experiments-dir") == 0 && a + 1 < argc) {
            g_experiments_dir = argv[++a];
        } else if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) {
            std::stringstream ss(argv[++a]);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
        }
    }

    std::vector<Criterion> criteria = {
        {1, "exact identity suite (divergence identity, boundary A_in)", crit_exact_identities},
        {2, "Z-kernel triviality by exact elimination", crit_z_kernel},
        {3, "K1 Gram positivity and exact scaling law", crit_gram_k1},
        {4, "bubble identities and derivative oracles", crit_bubble_identities},
        {5, "hemisphere constant, exact and Monte Carlo", crit_sphere_constant},
        {6, "hemisphere integral identity", crit_hemisphere_identity},
        {7, "gauge solver: orthogonality, refinement, boundary lemmas", crit_gauge_solver},
        {8, "integrated estimate positivity over the sweep", crit_integrated_estimate},
        {9, "flux-scaling slope of the pointwise identity", crit_flux_scaling},
        {10, "flat calibration", crit_flat_calibration},
        {11, "headline inequality E(v) < Y(S^6_+)", crit_headline},
        {12, "degenerate-case machinery", crit_degenerate},
    };

    int failures = 0;
    for (auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        std::string detail;
        bool pass = false;
        const auto t0 = Clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.label
                  << " -- " << detail << " (" << seconds_since(t0) << "s)" << std::endl;
        if (!pass) ++failures;
    }
    return failures;
}
