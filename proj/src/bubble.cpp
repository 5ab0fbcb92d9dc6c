#include "ytf/bubble.hpp"

#include <cmath>
#include <stdexcept>

#include "ytf/rng.hpp"

namespace ytf::bubble {

namespace {
double radius2(int n, const double* x) {
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    return r2;
}
}  // namespace

double u_value(const BubbleParams& p, const double* x) {
    const double q = p.eps * p.eps + radius2(p.n, x);
    return std::pow(p.eps / q, 0.5 * (p.n - 2));
}

void u_gradient(const BubbleParams& p, const double* x, double* grad) {
    const int n = p.n;
    const double q = p.eps * p.eps + radius2(n, x);
    const double u = std::pow(p.eps / q, 0.5 * (n - 2));
    const double f = -(n - 2) * u / q;
    for (int i = 0; i < n; ++i) grad[i] = f * x[i];
}

void u_hessian(const BubbleParams& p, const double* x, double* hess) {
    const int n = p.n;
    const double q = p.eps * p.eps + radius2(n, x);
    const double u = std::pow(p.eps / q, 0.5 * (n - 2));
    const double f = -(n - 2) * u / q;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            hess[i * n + k] = f * ((i == k ? 1.0 : 0.0) - n * x[i] * x[k] / q);
}

double u_laplacian(const BubbleParams& p, const double* x) {
    const int n = p.n;
    const double q = p.eps * p.eps + radius2(n, x);
    const double u = std::pow(p.eps / q, 0.5 * (n - 2));
    return -n * (n - 2) * u * p.eps * p.eps / (q * q);
}

BubbleJet u_eval(const BubbleParams& p, const double* x) {
    BubbleJet jet;
    jet.value = u_value(p, x);
    jet.gradient.resize(p.n);
    u_gradient(p, x, jet.gradient.data());
    jet.hessian.resize(p.n * p.n);
    u_hessian(p, x, jet.hessian.data());
    return jet;
}

IdentityResiduals identity_residuals(const BubbleParams& p, const double* x) {
    const int n = p.n;
    BubbleJet jet = u_eval(p, x);
    const double u = jet.value;

    double lap = 0;
    for (int i = 0; i < n; ++i) lap += jet.hessian[i * n + i];
    const double ucrit = std::pow(u, double(n + 2) / double(n - 2));
    IdentityResiduals res;
    res.laplace_residual = lap + n * (n - 2) * ucrit;
    res.laplace_scale = std::abs(lap);

    double du2 = 0;
    for (int i = 0; i < n; ++i) du2 += jet.gradient[i] * jet.gradient[i];
    const double trace_part = (u * lap - double(n) / (n - 2) * du2) / n;
    double max_res = 0, max_scale = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double lhs = u * jet.hessian[i * n + k] -
                         double(n) / (n - 2) * jet.gradient[i] * jet.gradient[k];
            double rhs = (i == k) ? trace_part : 0.0;
            max_res = std::max(max_res, std::abs(lhs - rhs));
            max_scale = std::max({max_scale, std::abs(lhs), std::abs(rhs)});
        }
    res.hessian_residual = max_res;
    res.hessian_scale = max_scale;
    return res;
}

double halfspace_moment(int n, double p, const MultiIndex& alpha) {
    if (alpha.dim() != n) throw std::invalid_argument("halfspace_moment: dimension mismatch");
    const int deg = alpha.degree();
    if (2 * p <= n + deg)
        throw std::invalid_argument("halfspace_moment: divergent (needs 2p > n + |alpha|)");
    for (int i = 0; i < n - 1; ++i)
        if (alpha[i] % 2 != 0) return 0.0;
    // prod Gamma((a_i+1)/2) * Gamma(p - (n+|a|)/2) / (2 Gamma(p))
    double lg = 0;
    for (int i = 0; i < n; ++i) lg += std::lgamma(0.5 * (alpha[i] + 1));
    lg += std::lgamma(p - 0.5 * (n + deg)) - std::lgamma(p);
    return 0.5 * std::exp(lg);
}

McEstimate halfspace_moment_mc(int n, double p, const MultiIndex& alpha, uint64_t seed,
                               long samples) {
    // Importance proposal: half-Cauchy radius (r = tan(pi t / 2)) times a
    // uniform hemisphere direction.
    Rng rng(seed);
    Kahan acc, acc2;
    const double hemi = std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));
    for (long s = 0; s < samples; ++s) {
        auto w = rng.hemisphere_direction(n);
        double t = rng.uniform();
        double r = std::tan(0.5 * M_PI * t);
        // proposal density in r: (2/pi) / (1+r^2)
        double xpow = 1.0;
        for (int i = 0; i < n; ++i) xpow *= std::pow(r * w[i], alpha[i]);
        double g = std::pow(1.0 + r * r, -p) * xpow * std::pow(r, n - 1);
        double est = g * (M_PI / 2) * (1.0 + r * r) * hemi;
        acc.add(est);
        acc2.add(est * est);
    }
    double mean = acc.sum() / samples;
    double var = std::max(0.0, acc2.sum() / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

SphereConstant sphere_constant(int n) {
    if (n < 3) throw std::invalid_argument("sphere_constant: n >= 3");
    SphereConstant sc;
    sc.n = n;
    sc.moment = halfspace_moment(n, n, MultiIndex(n));
    sc.value = 4.0 * n * (n - 1) * std::pow(sc.moment, 2.0 / n);
    return sc;
}

SphereConstant sphere_constant_mc(int n, uint64_t seed, long samples, double* sigma_out) {
    auto est = halfspace_moment_mc(n, n, MultiIndex(n), seed, samples);
    SphereConstant sc;
    sc.n = n;
    sc.moment = est.value;
    sc.value = 4.0 * n * (n - 1) * std::pow(est.value, 2.0 / n);
    if (sigma_out) {
        // propagate d/dm of 4n(n-1) m^{2/n}
        *sigma_out = 4.0 * n * (n - 1) * (2.0 / n) * std::pow(est.value, 2.0 / n - 1) * est.sigma;
    }
    return sc;
}

}  // namespace ytf::bubble
