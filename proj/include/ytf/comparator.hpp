#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ytf/energy.hpp"
#include "ytf/testfunction.hpp"

namespace ytf::comp {

struct ErrorBudget {
    double quad_sigma = 0;      // propagated Monte-Carlo error on E
    double galerkin_proxy = 0;  // normal-equation residual folded into the gain scale
    double green_proxy = 0;     // evaluation bias of the Green gradient (exclusion halving)
    double baseline_tail = 0;   // 1-D baseline truncation estimate
    double total() const { return quad_sigma + galerkin_proxy + green_proxy + baseline_tail; }
};

struct ComparisonReport {
    int n = 0;
    double eps = 0, delta = 0, scale = 0;
    double energy = 0;
    double sphere_constant = 0;
    double margin = 0;  // Y - E(v)
    double flux_term = 0;  // eps^{n-2} I(p, delta)
    double baseline_energy = 0;   // flat glued profile energy (radial, near-exact)
    double numerator = 0, denominator_integral = 0;
    ErrorBudget budget;
    std::string verdict;  // "inequality demonstrated" | "inconclusive" | "error"
    std::string note;
    std::string to_json() const;
    std::string csv_row() const;
    static std::string csv_header();
};

// Flat-data test-function energy by pure radial quadrature (machine
// precision). with_tail = true is the glued profile chi u + (1-chi) eps^.. G0
// (gluing penalty ~ (eps/delta)^{n+2}); with_tail = false is the classical
// hard truncation chi u (truncation penalty ~ (eps/delta)^{n-2}).
struct FlatCalibration {
    double energy = 0;
    double numerator = 0;
    double denominator_integral = 0;
};
FlatCalibration flat_energy(int n, double eps, double delta, bool with_tail = true);

struct ExperimentInputs {
    CoeffSet coeffs;          // unscaled shape
    double scale = 0;
    double rho_outer = 1.0;
    double rho_inner = 0.0;   // > 0 for the degenerate (annulus) data
    int ansatz_degree = 0;    // 0 = default d+1 capped by integrability
    quad::QuadratureSpec quadrature;
};

// Full pipeline at one (eps, delta): gauge solve, Green solve (or reuse),
// glued test function, variance-reduced energy, budget, verdict.
ComparisonReport total_energy_report(const ExperimentInputs& in, double eps, double delta,
                                     const green::GreenModel* shared_green = nullptr);

struct SweepPoint {
    double delta;
    double eps;
};

struct VerdictResult {
    std::string verdict;
    ComparisonReport best;
    std::vector<ComparisonReport> points;
    std::string to_json() const;
};

// Searches the (eps, delta) grid for a demonstrated strict inequality.
VerdictResult theorem_check_nondegenerate(const ExperimentInputs& in,
                                          const std::vector<double>& deltas,
                                          const std::vector<double>& eps_fractions);

// Degenerate route: estimates lim I(p, delta) via flux convergence, then picks
// delta and eps in the proof's order. The data must vanish near the origin
// (rho_inner > 0) so the surrogate point lies in the degenerate set.
VerdictResult theorem_check_degenerate(const ExperimentInputs& in,
                                       const std::vector<double>& delta_list,
                                       const std::vector<double>& eps_fractions);

}  // namespace ytf::comp
