#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ytf/gauge.hpp"
#include "ytf/metric.hpp"
#include "ytf/quadrature.hpp"

namespace ytf::energy {

// The J^1..J^7 split of the interior Yamabe integrand around u_eps + w,
// integrated over B_delta cap half-space, with the divergence-theorem flux
// forms of J^1 and J^3 as cross-checks.
struct EnergyBreakdown {
    int n = 0;
    double eps = 0, delta = 0;
    quad::McResult J[8];           // index 1..7 used
    quad::McResult J1_flux;        // boundary-flux form of int J1
    quad::McResult J3_flux;        // boundary-flux form of int J3
    quad::McResult direct_minus_sum;  // direct integrand minus flat parts minus sum J
    quad::McResult q2;             // int sum Q^2
    quad::McResult t2_weighted;    // int u^{2n/(n-2)} sum T^2
    double lambda_hat = 0;
    double denom = 0;
    std::string to_json() const;
};

EnergyBreakdown j_decomposition(const gauge::GaugeSolution& sol, const MetricField& metric,
                                const quad::QuadratureSpec& q);

// Scalar field with gradient, for the generic Yamabe quotient.
struct ScalarField {
    std::function<double(const double*)> value;
    std::function<void(const double*, double*)> gradient;
};

struct YamabeResult {
    quad::McResult numerator;
    quad::McResult denominator_integral;  // int v^{2n/(n-2)} dvol
    double energy = 0;
    double sigma = 0;
};

// E_g(v) over the region {|x| <= radius} (radius <= 0 means all of R^n_+).
// The boundary mean-curvature term vanishes in the totally geodesic normal
// form and is not included.
YamabeResult yamabe_energy(const ScalarField& v, const MetricField& metric, double radius,
                           double cluster, const quad::QuadratureSpec& q);

struct IntegratedEstimate {
    double lhs = 0, lhs_sigma = 0;          // the four-line integral
    double positive_part = 0, positive_sigma = 0;  // 1/4 int Q^2 + 2 int u^.. T^2
    double boundary_term = 0;               // lhs - positive_part (the xi flux)
    double denom = 0;                        // sum |h|^2 eps^{n-2} profile integral
    double lambda_hat = 0;                   // positive_part / (2 denom)
};

IntegratedEstimate integrated_estimate(const gauge::GaugeSolution& sol,
                                       const quad::QuadratureSpec& q);

struct ScanResult {
    std::vector<double> eps_values;
    std::vector<double> rho_integrals;   // int_{B_delta} rho per eps
    std::vector<double> positive_parts;  // 1/4 int Q^2 + 2 int u^.. T^2 (scale reference)
    double slope = 0;                    // log-log fit
    // true when the integral is at the numerical floor of its scale at every
    // eps (the identity closes with no divergence remainder)
    bool identically_zero = false;
};

// rho = (pointwise identity LHS) - 1/4 sum Q^2 - 2 u^{2n/(n-2)} sum T^2; its
// integral is a pure xi-flux and must scale like eps^{n-2}.
ScanResult pointwise_identity_scan(const CoeffSet& c_scaled, double delta,
                                   const std::vector<double>& eps_list, int ansatz_degree,
                                   const quad::QuadratureSpec& q);

struct QBoundResult {
    double lhs = 0;     // sum |h|^2 eps^{n-2} r^{2|alpha|+2-n}
    double q2 = 0;      // int over the annulus of sum Q^2
    double ratio = 0;   // lhs / q2
    bool flat = false;  // guarded 0/0 case
};

QBoundResult annulus_Q_bound(const gauge::GaugeSolution& sol, double r,
                             const quad::QuadratureSpec& q);

// Per-degree coefficient weight sum_{|alpha|=s} |h_{ik,alpha}|^2 (double sum).
std::vector<std::pair<int, double>> coeff_norms_by_degree(const CoeffSet& c);

}  // namespace ytf::energy
