#include "ytf/experiment.hpp"

#include <chrono>

#include "ytf/report.hpp"
#include "ytf/rng.hpp"

namespace ytf::cli {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json VerifyOutcome::to_json() const {
    ordered_json j;
    j["n"] = n;
    j["d"] = d;
    j["cases"] = cases;
    j["pass"] = pass;
    j["seconds"] = seconds;
    j["failures"] = failures;
    return j;
}

VerifyOutcome verify_suite(int n, int d, int cases, uint64_t seed) {
    VerifyOutcome out;
    out.n = n;
    out.d = d;
    out.cases = cases;
    const auto t0 = std::chrono::steady_clock::now();
    sym::AdmissibleSpace space(n, d);
    bool ok = true;
    for (int t = 0; t < cases; ++t) {
        CoeffSet c = space.random_element(seed + 977 * t);
        sym::PolyTensor H = sym::make_H(c);
        auto rep = sym::check_admissible(H);
        if (!rep.all_pass()) {
            ok = false;
            out.failures.push_back("case " + std::to_string(t) + ": admissibility failed");
            continue;
        }
        sym::PolyTensor A = sym::compute_A(H);
        // Lemma: A_in vanishes on the boundary for tangential i
        for (int i = 0; i < n - 1; ++i) {
            if (!A.at(i, n - 1).substitute(n - 1, Rational(0)).is_zero()) {
                ok = false;
                out.failures.push_back("case " + std::to_string(t) + ": boundary A_in != 0");
            }
        }
        sym::PolyTensor R = sym::divergence_identity_residual(H);
        if (!R.is_zero()) {
            ok = false;
            out.failures.push_back("case " + std::to_string(t) + ": divergence identity violated");
        }
        // Z symmetries on a couple of random slots
        sym::PolyTensor Z = sym::compute_Z(H, A);
        Rng rng(seed + 31 * t);
        for (int probe = 0; probe < 4; ++probe) {
            int i = rng.uniform_int(0, n - 1), jj = rng.uniform_int(0, n - 1);
            int k = rng.uniform_int(0, n - 1), l = rng.uniform_int(0, n - 1);
            if (!((Z.at(i, jj, k, l) + Z.at(jj, i, k, l)).is_zero()) ||
                !((Z.at(i, jj, k, l) + Z.at(i, jj, l, k)).is_zero()) ||
                !((Z.at(i, jj, k, l) - Z.at(k, l, i, jj)).is_zero())) {
                ok = false;
                out.failures.push_back("case " + std::to_string(t) + ": Z symmetry violated");
            }
        }
    }
    out.pass = ok;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

comp::ExperimentInputs parse_experiment_inputs(const json& config) {
    comp::ExperimentInputs in;
    if (!config.contains("coeffs")) throw std::invalid_argument("config: missing 'coeffs'");
    in.coeffs = CoeffSet::from_json(config.at("coeffs").dump());
    in.scale = config.value("scale", 0.0);
    in.rho_outer = config.value("rho_outer", 1.0);
    in.rho_inner = config.value("rho_inner", 0.0);
    in.ansatz_degree = config.value("degree", 0);
    if (config.contains("quadrature")) {
        const auto& q = config.at("quadrature");
        in.quadrature.samples = q.value("samples", 10000L);
        in.quadrature.seed = q.value("seed", uint64_t(1));
        in.quadrature.gauss_points = q.value("gauss_points", 16);
        in.quadrature.threads = q.value("threads", 1);
        const std::string mode = q.value("mode", "radial_angular_mc");
        in.quadrature.mode = (mode == "exact_moment")
                                 ? quad::QuadratureSpec::Mode::ExactMoment
                                 : quad::QuadratureSpec::Mode::RadialAngularMC;
    }
    return in;
}

ordered_json inputs_to_json(const comp::ExperimentInputs& in) {
    ordered_json j;
    j["coeffs"] = ordered_json::parse(in.coeffs.to_json());
    j["scale"] = in.scale;
    j["rho_outer"] = in.rho_outer;
    j["rho_inner"] = in.rho_inner;
    j["degree"] = in.ansatz_degree;
    j["quadrature"] = {{"samples", in.quadrature.samples},
                       {"seed", in.quadrature.seed},
                       {"gauss_points", in.quadrature.gauss_points},
                       {"threads", in.quadrature.threads},
                       {"mode", in.quadrature.mode == quad::QuadratureSpec::Mode::ExactMoment
                                    ? "exact_moment"
                                    : "radial_angular_mc"}};
    return j;
}

CompareConfig parse_compare_config(const json& config) {
    CompareConfig cfg;
    cfg.inputs = parse_experiment_inputs(config);
    cfg.degenerate = config.value("degenerate", false);
    if (config.contains("deltas")) {
        cfg.deltas = config.at("deltas").get<std::vector<double>>();
    } else {
        const double r = cfg.inputs.rho_outer;
        cfg.deltas = {r / 4, r / 8, r / 16};
    }
    if (config.contains("eps_fractions"))
        cfg.eps_fractions = config.at("eps_fractions").get<std::vector<double>>();
    else
        cfg.eps_fractions = {0.5, 0.25, 0.125, 0.0625};
    return cfg;
}

ordered_json run_compare(const CompareConfig& cfg, std::vector<std::string>& csv_lines,
                         std::string& verdict_out) {
    comp::VerdictResult res =
        cfg.degenerate
            ? comp::theorem_check_degenerate(cfg.inputs, cfg.deltas, cfg.eps_fractions)
            : comp::theorem_check_nondegenerate(cfg.inputs, cfg.deltas, cfg.eps_fractions);
    csv_lines.clear();
    csv_lines.push_back(comp::ComparisonReport::csv_header());
    for (const auto& p : res.points) csv_lines.push_back(p.csv_row());
    verdict_out = res.verdict;
    ordered_json cfgj;
    cfgj["inputs"] = inputs_to_json(cfg.inputs);
    cfgj["deltas"] = cfg.deltas;
    cfgj["eps_fractions"] = cfg.eps_fractions;
    cfgj["degenerate"] = cfg.degenerate;
    return report::wrap_report(cfgj, ordered_json::parse(res.to_json()));
}

}  // namespace ytf::cli
