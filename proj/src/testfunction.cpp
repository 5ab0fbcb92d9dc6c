#include "ytf/testfunction.hpp"

#include <cmath>
#include <stdexcept>

#include "ytf/bubble.hpp"
#include "ytf/rng.hpp"

namespace ytf::comp {

TestFunction::TestFunction(int n, double eps, double delta, const gauge::GaugeSolution* sol,
                           const green::GreenModel* gm)
    : n_(n), eps_(eps), delta_(delta), sol_(sol), gm_(gm) {
    if (!(eps > 0) || !(delta > 0) || 2 * eps > delta)
        throw std::invalid_argument("TestFunction: requires 0 < 2 eps <= delta");
}

double TestFunction::value(const double* x) const {
    double r2 = 0;
    for (int i = 0; i < n_; ++i) r2 += x[i] * x[i];
    const double r = std::sqrt(r2);
    const double chi = gauge::chi_cut(r / delta_);
    bubble::BubbleParams bp{n_, eps_};
    double inner = 0, outer = 0;
    if (chi > 0) {
        inner = bubble::u_value(bp, x);
        if (sol_) inner += sol_->w_value(x);
    }
    if (chi < 1) {
        const double g = gm_ ? gm_->G(x) : std::pow(r, 2 - n_);
        outer = std::pow(eps_, 0.5 * (n_ - 2)) * g;
    }
    return chi * inner + (1 - chi) * outer;
}

void TestFunction::gradient(const double* x, double* grad) const {
    double r2 = 0;
    for (int i = 0; i < n_; ++i) r2 += x[i] * x[i];
    const double r = std::sqrt(r2);
    const double chi = gauge::chi_cut(r / delta_);
    bubble::BubbleParams bp{n_, eps_};
    const double epow = std::pow(eps_, 0.5 * (n_ - 2));

    for (int i = 0; i < n_; ++i) grad[i] = 0.0;
    if (chi > 0) {
        double du[kMaxDim];
        bubble::u_gradient(bp, x, du);
        if (sol_) {
            double dw[kMaxDim];
            sol_->w_gradient(x, dw);
            for (int i = 0; i < n_; ++i) grad[i] += chi * (du[i] + dw[i]);
        } else {
            for (int i = 0; i < n_; ++i) grad[i] += chi * du[i];
        }
    }
    if (chi < 1) {
        double dg[kMaxDim];
        if (gm_) {
            gm_->G_grad(x, dg);
        } else {
            const double f = (2 - n_) * std::pow(r2, 0.5 * (2 - n_) - 1);
            for (int i = 0; i < n_; ++i) dg[i] = f * x[i];
        }
        for (int i = 0; i < n_; ++i) grad[i] += (1 - chi) * epow * dg[i];
    }
    if (chi > 0 && chi < 1) {
        const double dchi = gauge::chi_cut_derivative(r / delta_) / delta_;
        double inner = bubble::u_value(bp, x);
        if (sol_) inner += sol_->w_value(x);
        const double g = gm_ ? gm_->G(x) : std::pow(r, 2 - n_);
        const double jump = inner - epow * g;
        for (int i = 0; i < n_; ++i) grad[i] += dchi * (x[i] / r) * jump;
    }
}

double TestFunction::flat_profile(double r) const {
    const double chi = gauge::chi_cut(r / delta_);
    const double u = std::pow(eps_ / (eps_ * eps_ + r * r), 0.5 * (n_ - 2));
    const double tail = std::pow(eps_, 0.5 * (n_ - 2)) * std::pow(r, 2 - n_);
    return chi * u + (1 - chi) * tail;
}

double TestFunction::flat_profile_deriv(double r) const {
    const double chi = gauge::chi_cut(r / delta_);
    const double dchi = gauge::chi_cut_derivative(r / delta_) / delta_;
    const double q = eps_ * eps_ + r * r;
    const double u = std::pow(eps_ / q, 0.5 * (n_ - 2));
    const double du = -(n_ - 2) * r * u / q;
    const double epow = std::pow(eps_, 0.5 * (n_ - 2));
    const double tail = epow * std::pow(r, 2 - n_);
    const double dtail = epow * (2 - n_) * std::pow(r, 1 - n_);
    return chi * du + (1 - chi) * dtail + dchi * (u - tail);
}

void TestFunction::verify_positivity(uint64_t seed, int samples) const {
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        auto w = rng.hemisphere_direction(n_);
        // log-uniform radii spanning the bubble core to beyond the gluing zone
        const double r = eps_ * std::pow(64.0 * delta_ / eps_, rng.uniform()) * 0.25;
        double x[kMaxDim];
        for (int i = 0; i < n_; ++i) x[i] = r * w[i];
        const double v = value(x);
        if (!(v > 0))
            throw std::runtime_error("TestFunction: non-positive value " + std::to_string(v) +
                                     " at |x| = " + std::to_string(r) +
                                     "; parameters outside the construction's regime");
    }
}

}  // namespace ytf::comp
