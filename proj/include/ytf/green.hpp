#pragma once

#include <string>
#include <vector>

#include "ytf/metric.hpp"
#include "ytf/quadrature.hpp"

namespace ytf::green {

// Image kernel of the flat conformal Laplacian c_n Delta with Neumann
// condition at x_n = 0: kappa_n (|x-y|^{2-n} + |x-ybar|^{2-n}).
double neumann_kernel(const double* x, const double* y, int n);
void neumann_kernel_grad(const double* x, const double* y, int n, double* grad);
// d/dx_n of the kernel (used by the boundary-condition check)
double neumann_kernel_dn(const double* x, const double* y, int n);

struct GreenOptions {
    int cloud_size = 4096;
    uint64_t seed = 2024;
    double tol = 1e-5;         // stop when the psi update falls below tol (relative)
    int max_iters = 12;
    int probe_points = 48;
    double contraction_limit = 0.9;
    double exclusion_factor = 1.0;  // times the local inter-sample spacing
};

// G = |x|^{2-n} (1 + Phi) with the correction psi = G - G0 represented by its
// Born source on a fixed seeded sample cloud. Immutable after solve.
class GreenModel {
  public:
    int n = 0;
    energy::MetricField metric;
    std::vector<std::vector<double>> cloud;
    std::vector<double> weight;
    std::vector<double> source;     // final Born source values at the cloud
    std::vector<double> psi_cloud;  // psi values at the cloud
    std::vector<double> r_excl;
    std::vector<double> contraction_history;
    std::vector<double> residual_history;
    double final_residual = 0;
    bool flat = true;

    double psi(const double* x) const;
    void psi_grad(const double* x, double* grad) const;
    // Hessian entry sum A_ik d_i d_k psi plus local PV term; needs s(x).
    void psi_hess(const double* x, double s_at_x, double* hess) const;

    double G0(const double* x) const;
    double G(const double* x) const { return G0(x) + (flat ? 0.0 : psi(x)); }
    void G_grad(const double* x, double* grad) const;
    double Phi(const double* x) const;

    std::string to_json(int max_samples = 32) const;
};

// Born/fixed-point solve of the conformal-Laplacian Green function with pole
// at the boundary origin. Throws if the iteration fails to contract.
GreenModel solve_green(const CoeffSet& c, double scale, double rho_outer,
                       double rho_inner = 0.0, const GreenOptions& opt = {});

// I(p,delta): the two boundary-sphere integrals; the G0 part of the first
// integrand cancels exactly, so the flat case returns exactly zero.
quad::McResult flux_integral(const GreenModel& gm, double delta, const quad::QuadratureSpec& q);

struct FluxSweep {
    std::vector<double> deltas;
    std::vector<double> values;
    std::vector<double> sigmas;
    std::vector<double> defects;  // successive differences
    double limit_estimate = 0;
    double max_defect = 0;
};

FluxSweep flux_convergence(const GreenModel& gm, const std::vector<double>& deltas,
                           const quad::QuadratureSpec& q);

}  // namespace ytf::green
