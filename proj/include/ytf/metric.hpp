#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ytf/coeffset.hpp"
#include "ytf/gauge.hpp"
#include "ytf/symtensor.hpp"

namespace ytf::energy {

// Pointwise jet of the metric g = exp(h), h = scale * window(|x|) * H(x).
// window is the smooth cutoff at rho_outer, optionally with the inner cutoff
// removed (annulus-supported data for the degenerate experiments).
struct MetricJet {
    int n = 0;
    Eigen::MatrixXd g, ginv;
    std::vector<Eigen::MatrixXd> dg;                 // dg[a] = d_a g
    std::vector<std::vector<Eigen::MatrixXd>> ddg;   // ddg[a][b], b <= a filled symmetric
    double det = 1;
    double R = 0;            // scalar curvature via finite differences
    double R_lin = 0;        // scale * window * sum_{i,k} d_i d_k H_ik at x
    double mean_curvature = 0;  // boundary II trace surrogate, 0 in normal form
};

class MetricField {
  public:
    MetricField() = default;
    MetricField(const CoeffSet& c, double scale, double rho_outer, double rho_inner = 0.0);

    bool flat() const { return flat_; }
    int n() const { return n_; }
    double scale() const { return scale_; }
    double rho_outer() const { return rho_outer_; }
    double rho_inner() const { return rho_inner_; }
    double support_radius() const { return 5.0 * rho_outer_ / 3.0; }
    const CoeffSet& coeffs() const { return coeffs_; }

    double window(double r) const;
    double window_derivative(double r) const;

    // Bare polynomial H entries (no scale/window factor).
    double H_entry(int i, int k, const double* x) const { return cH_.value(i, k, x); }
    double H_entry_deriv(int i, int k, int l, const double* x) const {
        return cH_.deriv(i, k, l, x);
    }

    // h and g at a point; exp of the symmetric matrix by eigendecomposition.
    void h_at(const double* x, Eigen::MatrixXd& h) const;
    Eigen::MatrixXd g_at(const double* x) const;

    // Full jet; derivatives of g by second-order central differences of the
    // pointwise exponential with step fd_step (0 picks a default).
    MetricJet eval(const double* x, double fd_step = 0.0) const;

    // Scalar curvature only (cheaper call path for quadrature loops).
    double scalar_curvature(const double* x, double fd_step = 0.0) const;

    // g^{ik}, sqrt(det), and R bundled for the energy integrands. Uses the
    // analytic Frechet derivative of the matrix exponential (eigenbasis
    // divided differences) instead of finite differences; the two routes are
    // cross-checked in the tests.
    struct Light {
        double R;
        double det;
        Eigen::MatrixXd ginv;
        Eigen::MatrixXd g;
    };
    Light light(const double* x) const;

  private:
    int n_ = 0;
    bool flat_ = true;
    CoeffSet coeffs_;
    double scale_ = 0, rho_outer_ = 1, rho_inner_ = 0;
    sym::PolyTensor H_;
    gauge::CompiledSymTensor cH_;
    std::vector<CompiledPoly> cddH_;  // d_a d_b H_ik at tri(i,k)*n*n + a*n + b
    Poly lin_;            // sum d_i d_k H_ik
    CompiledPoly clin_;
};

// Scalar curvature from a metric jet (no finite differences of Gamma; the
// formula uses g, dg, ddg directly).
double scalar_curvature_from_jet(const MetricJet& jet);

}  // namespace ytf::energy
