#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace ytf::report {

// git-style blob hash (sha1 over "blob <len>\0<content>") of a string.
std::string content_hash(const std::string& content);

// Pinned tolerances used by the acceptance suite; versioned so reports can
// state exactly which thresholds produced a verdict.
struct Tolerances {
    static constexpr const char* version = "1";
    static constexpr double bubble_identity_rel = 1e-10;
    static constexpr double bubble_fd_rel = 1e-6;
    static constexpr double sphere_constant_abs = 1e-8;
    static constexpr double hemisphere_identity_rel = 1e-4;
    static constexpr double weak_orthogonality_rel = 1e-10;
    static constexpr double margin_budget_factor = 5.0;
    static constexpr double slope_flux_scaling_tol = 0.3;
    static constexpr double slope_flat_calibration_tol = 0.5;
    static constexpr double strong_residual_slack = 0.05;
};

nlohmann::ordered_json tolerances_json();

// Wraps a payload with the resolved config, its hash, tolerance version and
// a timestamp field (the timestamp is excluded from the hash).
nlohmann::ordered_json wrap_report(const nlohmann::ordered_json& resolved_config,
                                   const nlohmann::ordered_json& payload);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ytf::report
