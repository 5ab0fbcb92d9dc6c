// ytf: test-function experiments for the Yamabe problem on the half-space
// with umbilic (totally geodesic) boundary. Subcommands:
//   verify     exact symbolic identity suite
//   constants  hemisphere Yamabe constant and bubble moment
//   solve-v    weighted Galerkin gauge solve
//   green      Green function solve and flux sweep
//   energy     J-decomposition and integrated estimate at one (eps, delta)
//   compare    full test-function experiment over an (eps, delta) grid
//   sweep      compare over an explicit point list from the config
#include <CLI11.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "ytf/bubble.hpp"
#include "ytf/experiment.hpp"
#include "ytf/report.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        ytf::report::write_text_file(out_path, j.dump(2) + "\n");
        std::cout << "wrote " << out_path << std::endl;
    }
}

void emit_csv(const std::vector<std::string>& lines, const std::string& path) {
    if (path.empty()) return;
    std::string body;
    for (const auto& l : lines) body += l + "\n";
    ytf::report::write_text_file(path, body);
    std::cout << "wrote " << path << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Yamabe test-function experiments on the half-space"};
    app.require_subcommand(1);

    std::string out_path, csv_path, config_path;
    uint64_t seed = 7;
    int threads = 1;

    auto* verify = app.add_subcommand("verify", "exact symbolic identity suite");
    int vn = 6, vd = 2, vcases = 25;
    verify->add_option("--n", vn, "dimension");
    verify->add_option("--d", vd, "degree cap");
    verify->add_option("--cases", vcases, "number of random admissible instances");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--out", out_path, "output JSON path");

    auto* constants = app.add_subcommand("constants", "hemisphere constant Y(S^n_+)");
    int cn = 6;
    constants->add_option("--n", cn, "dimension");
    constants->add_option("--out", out_path, "output JSON path");

    auto* solvev = app.add_subcommand("solve-v", "weighted Galerkin gauge solve");
    double sv_eps = 1.0, sv_delta = 4.0;
    int sv_degree = 0;
    solvev->add_option("--config", config_path, "CoeffSet config JSON")->required();
    solvev->add_option("--epsilon", sv_eps, "bubble scale");
    solvev->add_option("--delta", sv_delta, "cutoff radius");
    solvev->add_option("--degree", sv_degree, "ansatz degree (0 = default)");
    solvev->add_option("--seed", seed, "random seed");
    solvev->add_option("--out", out_path, "output JSON path");

    auto* greenc = app.add_subcommand("green", "Green function solve and flux sweep");
    greenc->add_option("--config", config_path, "config JSON")->required();
    greenc->add_option("--out", out_path, "output JSON path");
    greenc->add_option("--csv", csv_path, "flux sweep CSV path");

    auto* energyc = app.add_subcommand("energy", "J-decomposition and integrated estimate");
    energyc->add_option("--config", config_path, "config JSON")->required();
    energyc->add_option("--out", out_path, "output JSON path");

    auto* comparec = app.add_subcommand("compare", "test-function experiment over a grid");
    bool require_demonstrated = false;
    comparec->add_option("--config", config_path, "experiment config JSON")->required();
    comparec->add_flag("--require-demonstrated", require_demonstrated,
                       "exit 1 unless the inequality is demonstrated");
    comparec->add_option("--out", out_path, "output JSON path");
    comparec->add_option("--csv", csv_path, "summary CSV path");
    comparec->add_option("--threads", threads, "worker threads");

    auto* sweepc = app.add_subcommand("sweep", "compare over explicit (eps, delta) points");
    sweepc->add_option("--config", config_path, "experiment config JSON")->required();
    sweepc->add_option("--out", out_path, "output JSON path");
    sweepc->add_option("--csv", csv_path, "summary CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            auto outcome = ytf::cli::verify_suite(vn, vd, vcases, seed);
            ordered_json cfg{{"n", vn}, {"d", vd}, {"cases", vcases}, {"seed", seed}};
            emit(ytf::report::wrap_report(cfg, outcome.to_json()), out_path);
            return outcome.pass ? 0 : 1;
        }
        if (*constants) {
            auto sc = ytf::bubble::sphere_constant(cn);
            ordered_json payload{{"n", sc.n}, {"Y", sc.value}, {"moment", sc.moment}};
            emit(ytf::report::wrap_report(ordered_json{{"n", cn}}, payload), out_path);
            return 0;
        }
        if (*solvev) {
            json cfg = load_json(config_path);
            auto inputs = ytf::cli::parse_experiment_inputs(cfg);
            int degree = sv_degree > 0 ? sv_degree
                                       : (cfg.value("degree", 0) > 0
                                              ? cfg.value("degree", 0)
                                              : std::min(inputs.coeffs.d() + 1,
                                                         ytf::gauge::max_ansatz_degree(
                                                             inputs.coeffs.n())));
            double eps = cfg.value("epsilon", sv_eps);
            double delta = cfg.value("delta", sv_delta);
            auto ansatz = ytf::gauge::build_ansatz(inputs.coeffs.n(), degree);
            auto sol = ytf::gauge::solve_V(
                inputs.coeffs.scaled(ytf::Rational(inputs.scale == 0 ? 1.0 : inputs.scale)), eps,
                delta, ansatz);
            ordered_json cfgj = ytf::cli::inputs_to_json(inputs);
            cfgj["epsilon"] = eps;
            cfgj["delta"] = delta;
            cfgj["degree"] = degree;
            emit(ytf::report::wrap_report(cfgj, ordered_json::parse(sol.to_json())), out_path);
            return 0;
        }
        if (*greenc) {
            json cfg = load_json(config_path);
            auto inputs = ytf::cli::parse_experiment_inputs(cfg);
            ytf::green::GreenOptions opt;
            opt.cloud_size = cfg.value("samples", 4096);
            opt.seed = cfg.value("seed", uint64_t(2024));
            opt.tol = cfg.value("tol", 1e-5);
            auto gm = ytf::green::solve_green(inputs.coeffs, inputs.scale, inputs.rho_outer,
                                              inputs.rho_inner, opt);
            std::vector<double> deltas =
                cfg.contains("deltas")
                    ? cfg.at("deltas").get<std::vector<double>>()
                    : std::vector<double>{inputs.rho_outer / 4, inputs.rho_outer / 8,
                                          inputs.rho_outer / 16, inputs.rho_outer / 32};
            auto sweep = ytf::green::flux_convergence(gm, deltas, inputs.quadrature);
            ordered_json payload = ordered_json::parse(gm.to_json());
            payload["flux"] = {{"deltas", sweep.deltas},
                               {"values", sweep.values},
                               {"sigmas", sweep.sigmas},
                               {"limit_estimate", sweep.limit_estimate},
                               {"max_defect", sweep.max_defect}};
            emit(ytf::report::wrap_report(ytf::cli::inputs_to_json(inputs), payload), out_path);
            std::vector<std::string> lines{"delta,flux,sigma"};
            for (size_t t = 0; t < sweep.deltas.size(); ++t)
                lines.push_back(std::to_string(sweep.deltas[t]) + "," +
                                std::to_string(sweep.values[t]) + "," +
                                std::to_string(sweep.sigmas[t]));
            emit_csv(lines, csv_path);
            return 0;
        }
        if (*energyc) {
            json cfg = load_json(config_path);
            auto inputs = ytf::cli::parse_experiment_inputs(cfg);
            const double eps = cfg.value("epsilon", 0.25);
            const double delta = cfg.value("delta", 1.0);
            const int n = inputs.coeffs.n();
            int degree = inputs.ansatz_degree > 0
                             ? inputs.ansatz_degree
                             : std::min(inputs.coeffs.d() + 1, ytf::gauge::max_ansatz_degree(n));
            auto ansatz = ytf::gauge::build_ansatz(n, degree);
            auto sol = ytf::gauge::solve_V(inputs.coeffs.scaled(ytf::Rational(inputs.scale)), eps,
                                           delta, ansatz);
            ytf::energy::MetricField metric(inputs.coeffs, inputs.scale, inputs.rho_outer,
                                            inputs.rho_inner);
            auto breakdown = ytf::energy::j_decomposition(sol, metric, inputs.quadrature);
            auto est = ytf::energy::integrated_estimate(sol, inputs.quadrature);
            ordered_json payload = ordered_json::parse(breakdown.to_json());
            payload["integrated_estimate"] = {{"lhs", est.lhs},
                                              {"positive_part", est.positive_part},
                                              {"boundary_term", est.boundary_term},
                                              {"denom", est.denom},
                                              {"lambda_hat", est.lambda_hat}};
            ordered_json cfgj = ytf::cli::inputs_to_json(inputs);
            cfgj["epsilon"] = eps;
            cfgj["delta"] = delta;
            emit(ytf::report::wrap_report(cfgj, payload), out_path);
            return 0;
        }
        if (*comparec || *sweepc) {
            json cfg = load_json(config_path);
            auto cc = ytf::cli::parse_compare_config(cfg);
            cc.inputs.quadrature.threads = threads;
            std::vector<std::string> csv_lines;
            std::string verdict;
            ordered_json rep = ytf::cli::run_compare(cc, csv_lines, verdict);
            emit(rep, out_path);
            emit_csv(csv_lines, csv_path);
            if (require_demonstrated && verdict != "inequality demonstrated") return 1;
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}
