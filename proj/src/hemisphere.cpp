#include "ytf/hemisphere.hpp"

#include <cmath>
#include <stdexcept>

#include "ytf/bubble.hpp"

namespace ytf::gauge {

namespace {

// Moment of a polynomial against (1+|x|^2)^{-p} over the half-space.
double weighted_poly_moment(const Poly& p, double power) {
    const int n = p.dim();
    double total = 0;
    for (const auto& [g, c] : p.terms()) {
        bool odd = false;
        for (int i = 0; i < n - 1; ++i)
            if (g[i] % 2 != 0) odd = true;
        if (odd) continue;
        total += c.get_d() * bubble::halfspace_moment(n, power, g);
    }
    return total;
}

void check_tangential(const std::vector<Poly>& V) {
    const int n = static_cast<int>(V.size());
    if (!V[n - 1].substitute(n - 1, Rational(0)).is_zero())
        throw std::invalid_argument("hemisphere_identity: field is not tangential on the boundary");
}

}  // namespace

HemisphereNorms hemisphere_identity(const std::vector<Poly>& V) {
    const int n = static_cast<int>(V.size());
    check_tangential(V);
    HemisphereNorms out;
    out.n = n;

    Poly one_r2 = Poly::constant(n, Rational(1));
    for (int i = 0; i < n; ++i) one_r2 += Poly::variable(n, i) * Poly::variable(n, i);
    Poly vdotx(n);
    for (int i = 0; i < n; ++i) vdotx += V[i] * Poly::variable(n, i);
    Poly div(n);
    for (int i = 0; i < n; ++i) div += V[i].derivative(i);

    // ||DV||^2 with the u^{2n/(n-2)} = (1+r^2)^{-n} weight.
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Poly d = V[k].derivative(i) + V[i].derivative(k);
            if (i == k) d -= div * rat(2, n);
            if (d.is_zero()) continue;
            out.d_norm2 += weighted_poly_moment(d * d, n);
        }

    // ||V||^2: weight (1+r^2)^{-n-2}.
    for (int i = 0; i < n; ++i) out.v_norm2 += weighted_poly_moment(V[i] * V[i], n + 2);

    // div_g V = [div (1+r^2) - 2n (V.x)] / (1+r^2)
    Poly pd = div * one_r2 - vdotx * rat(2 * n);
    out.div_norm2 = weighted_poly_moment(pd * pd, n + 2);

    // nabla_i V^k = [d_i V_k (1+r^2) - 2 x_i V_k - 2 delta_ik (V.x) + 2 x_k V_i] / (1+r^2)
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Poly p = V[k].derivative(i) * one_r2;
            p -= Poly::variable(n, i) * V[k] * rat(2);
            p += Poly::variable(n, k) * V[i] * rat(2);
            if (i == k) p -= vdotx * rat(2);
            if (p.is_zero()) continue;
            out.grad_norm2 += weighted_poly_moment(p * p, n + 2);
        }
    return out;
}

HemisphereNorms hemisphere_identity_mc(const std::vector<Poly>& V,
                                       const quad::QuadratureSpec& spec) {
    const int n = static_cast<int>(V.size());
    check_tangential(V);
    std::vector<CompiledPoly> cv, cdv;
    for (int i = 0; i < n; ++i) {
        cv.emplace_back(V[i]);
        for (int k = 0; k < n; ++k) cdv.emplace_back(V[i].derivative(k));
    }
    auto field_norms = [&](const double* x, double* vals) {
        double r2 = 0;
        for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
        const double s = 1.0 + r2;
        double vv[kMaxDim];
        double vdotx = 0, div = 0;
        for (int i = 0; i < n; ++i) {
            vv[i] = cv[i].eval(x);
            vdotx += vv[i] * x[i];
            div += cdv[i * n + i].eval(x);
        }
        double d2 = 0, grad2 = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double dik = cdv[k * n + i].eval(x) + cdv[i * n + k].eval(x);
                if (i == k) dik -= 2.0 / n * div;
                d2 += dik * dik;
                double p = cdv[k * n + i].eval(x) * s - 2 * x[i] * vv[k] + 2 * x[k] * vv[i];
                if (i == k) p -= 2 * vdotx;
                grad2 += p * p;
            }
        const double pd = div * s - 2 * n * vdotx;
        vals[0] = d2 * std::pow(s, -double(n));
        vals[1] = grad2 * std::pow(s, -double(n + 2));
        vals[2] = pd * pd * std::pow(s, -double(n + 2));
        double v2 = 0;
        for (int i = 0; i < n; ++i) v2 += vv[i] * vv[i];
        vals[3] = v2 * std::pow(s, -double(n + 2));
    };
    HemisphereNorms out;
    out.n = n;
    for (int which = 0; which < 4; ++which) {
        auto f = [&](const double* x) {
            double vals[4];
            field_norms(x, vals);
            return vals[which];
        };
        auto inner = quad::integrate_shell(n, 0.0, 4.0, 1.0, f, spec, 90 + which);
        auto outer = quad::integrate_exterior(n, 4.0, f, spec, 94 + which);
        const double v = inner.value + outer.value;
        if (which == 0) out.d_norm2 = v;
        if (which == 1) out.grad_norm2 = v;
        if (which == 2) out.div_norm2 = v;
        if (which == 3) out.v_norm2 = v;
    }
    return out;
}

}  // namespace ytf::gauge
