#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "ytf/comparator.hpp"

namespace ytf::cli {

// Exact-identity verification suite over seeded random admissible data:
// admissibility report, divergence identity, boundary A_in, Z symmetries.
struct VerifyOutcome {
    int n = 0, d = 0;
    int cases = 0;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> failures;
    nlohmann::ordered_json to_json() const;
};

VerifyOutcome verify_suite(int n, int d, int cases, uint64_t seed);

// Config parsing shared by the CLI subcommands and the acceptance suite.
comp::ExperimentInputs parse_experiment_inputs(const nlohmann::json& config);
nlohmann::ordered_json inputs_to_json(const comp::ExperimentInputs& in);

struct CompareConfig {
    comp::ExperimentInputs inputs;
    std::vector<double> deltas;
    std::vector<double> eps_fractions;
    bool degenerate = false;
};

CompareConfig parse_compare_config(const nlohmann::json& config);

// Runs the compare pipeline; fills the CSV lines and returns the wrapped report.
nlohmann::ordered_json run_compare(const CompareConfig& cfg, std::vector<std::string>& csv_lines,
                                   std::string& verdict_out);

}  // namespace ytf::cli
