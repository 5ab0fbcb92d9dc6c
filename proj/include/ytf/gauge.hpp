#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ytf/ansatz.hpp"
#include "ytf/coeffset.hpp"
#include "ytf/quadrature.hpp"
#include "ytf/symtensor.hpp"

namespace ytf::gauge {

struct SolveOptions {
    double kernel_rel_tol = 1e-11;   // eigenvalues below this (relative) are kernel
    double cond_limit = 1e13;        // reject worse-conditioned Gram blocks
    int refine_steps = 2;
    uint64_t seed = 1;
};

// Smooth cutoff: 1 for t <= 4/3, 0 for t >= 5/3.
double chi_cut(double t);
double chi_cut_derivative(double t);

// Compiled rank-2 symmetric polynomial tensor with first derivatives, for
// fast pointwise evaluation in the quadrature loops.
struct CompiledSymTensor {
    int n = 0;
    std::vector<CompiledPoly> entry;   // upper triangle, index i*n+k-...
    std::vector<CompiledPoly> dentry;  // derivative l of entry (i,k)
    void build(const sym::PolyTensor& T);
    int tri(int i, int k) const { return (i <= k) ? i * n - i * (i - 1) / 2 + (k - i)
                                                  : k * n - k * (k - 1) / 2 + (i - k); }
    double value(int i, int k, const double* x) const { return entry[tri(i, k)].eval(x); }
    double deriv(int i, int k, int l, const double* x) const {
        return dentry[tri(i, k) * n + l].eval(x);
    }
};

// Solution of the weighted least-squares gauge problem together with the
// derived fields S = DV, T = chi_delta H - S, Q and w. Immutable after solve.
class GaugeSolution {
  public:
    int n = 0;
    double eps = 0;
    double delta = 0;
    CoeffSet coeffs;
    VectorPolyAnsatz ansatz;
    std::vector<double> coef;

    std::vector<Poly> V;          // n components
    sym::PolyTensor H;            // the source tensor
    sym::PolyTensor S;            // conformal Killing image of V
    sym::PolyTensor T_inside;     // H - S (valid where chi_delta = 1)

    // diagnostics
    double weighted_h_norm2 = 0;       // ||chi H||_w^2
    double weighted_residual2 = 0;     // ||chi H - DV||_w^2
    double weighted_v_norm2 = 0;       // int u^{2(n+2)/(n-2)} |V|^2
    double normal_eq_residual_rel = 0;
    double cond_estimate = 0;
    int kernel_dim = 0;

    // pointwise evaluation (valid in the chi = 1 region for T/Q)
    double w_value(const double* x) const;
    void w_gradient(const double* x, double* grad) const;
    double xi_n(const double* x) const;
    double T_value(int i, int k, const double* x) const;
    double T_deriv(int i, int k, int l, const double* x) const;
    double S_value(int i, int k, const double* x) const;
    double S_deriv(int i, int k, int l, const double* x) const;
    double Q_value(int i, int k, int l, const double* x) const;
    double V_value(int comp, const double* x) const;
    double divV_value(const double* x) const;
    double sumQ2(const double* x) const;
    double sumT2(const double* x) const;
    double H_value(int i, int k, const double* x) const;
    double H_deriv(int i, int k, int l, const double* x) const;
    double divH_deriv(int i, int k, const double* x) const;  // d_k (div H)_i
    double sum_ddH(const double* x) const;                   // sum_{i,k} d_i d_k H_ik

    void finalize();  // builds compiled evaluators

    std::string to_json() const;

  private:
    CompiledSymTensor cS_, cT_, cH_;
    std::vector<CompiledPoly> cV_, cdV_;  // V and dV components (comp*n+dir)
    CompiledPoly cdiv_;
    std::vector<CompiledPoly> cddiv_;
    std::vector<CompiledPoly> cdivH_dk_;  // d_k (div H)_i at i*n+k
    CompiledPoly csum_ddH_;
};

// Minimiser of int u_eps^{2n/(n-2)} |chi_delta H - DV|^2 over the ansatz,
// modulo the discrete conformal-Killing kernel.
GaugeSolution solve_V(const CoeffSet& c, double eps, double delta,
                      const VectorPolyAnsatz& ansatz, const SolveOptions& opt = {});

// RMS over interior samples of B_delta of sum_k d_k(u^{2n/(n-2)} T_{ik}).
double strong_residual(const GaugeSolution& sol, int samples = 2048, uint64_t seed = 7);

struct BoundaryLemmaReport {
    double max_S_in = 0;
    double max_T_in = 0;
    double max_dn_S_tangential = 0;
    double max_dn_S_nn = 0;
    double max_dn_w = 0;
    double max_xi_n = 0;
    double xi_n_term_scale = 0;  // largest constituent term of xi_n seen
};
BoundaryLemmaReport boundary_lemma_check(const GaugeSolution& sol, int samples = 512,
                                         uint64_t seed = 11);

// r^{-2 sigma - n - 2} * int_{annulus(r, 2r)} |V|^2, exact polynomial moments.
std::map<double, double> decay_profile(const GaugeSolution& sol,
                                       const std::vector<double>& radii = {1, 2, 4, 8});

// Kernel report: dimension of the discrete conformal-Killing kernel.
struct KernelReport {
    int dimension = 0;
    std::vector<std::vector<double>> basis;  // coefficient vectors on the ansatz
};
KernelReport kernel_report(const VectorPolyAnsatz& ansatz, double eps);

}  // namespace ytf::gauge
