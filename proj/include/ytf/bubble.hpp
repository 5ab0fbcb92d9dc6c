#pragma once

#include <cstdint>
#include <vector>

#include "ytf/multiindex.hpp"

namespace ytf::bubble {

// u_eps(x) = (eps / (eps^2 + |x|^2))^{(n-2)/2} and the closed forms derived
// from it. q below is always eps^2 + |x|^2.
struct BubbleParams {
    int n;
    double eps;
};

struct BubbleJet {
    double value;
    std::vector<double> gradient;
    std::vector<double> hessian;  // row-major n x n
};

BubbleJet u_eval(const BubbleParams& p, const double* x);

double u_value(const BubbleParams& p, const double* x);
void u_gradient(const BubbleParams& p, const double* x, double* grad);
// d_i d_k u as a function of value; fills row-major.
void u_hessian(const BubbleParams& p, const double* x, double* hess);
double u_laplacian(const BubbleParams& p, const double* x);

struct IdentityResiduals {
    double laplace_residual;   // Delta u + n(n-2) u^{(n+2)/(n-2)}
    double laplace_scale;      // |Delta u|
    double hessian_residual;   // max-norm of the traceless Hessian identity
    double hessian_scale;      // max-norm of its largest constituent
};

IdentityResiduals identity_residuals(const BubbleParams& p, const double* x);

// integral over the half-space of (1+|x|^2)^{-p} x^alpha; exact up to Gamma
// evaluation. Throws if 2p <= n + |alpha| (divergent) or alpha has an odd
// tangential exponent paired with... (odd tangential exponents give zero).
double halfspace_moment(int n, double p, const MultiIndex& alpha);

struct McEstimate {
    double value;
    double sigma;
};
McEstimate halfspace_moment_mc(int n, double p, const MultiIndex& alpha, uint64_t seed,
                               long samples);

struct SphereConstant {
    int n;
    double value;   // Y(S^n_+, boundary)
    double moment;  // integral of u_1^{2n/(n-2)} over the half-space
};

// Y = 4n(n-1) * moment^{2/n}; the moment is eps-independent.
SphereConstant sphere_constant(int n);
SphereConstant sphere_constant_mc(int n, uint64_t seed, long samples, double* sigma_out);

}  // namespace ytf::bubble
