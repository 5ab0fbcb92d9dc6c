#include "ytf/energy.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

#include "ytf/bubble.hpp"

namespace ytf::energy {

using quad::McResult;

std::vector<std::pair<int, double>> coeff_norms_by_degree(const CoeffSet& c) {
    std::map<int, double> acc;
    for (const auto& [key, v] : c.entries()) {
        const double sq = v.get_d() * v.get_d();
        acc[key.alpha.degree()] += (key.i == key.k) ? sq : 2 * sq;
    }
    return {acc.begin(), acc.end()};
}

namespace {

// Cheap slots (no metric jet): [0]=J1 [1]=J2 [2]=J3 [3]=J4 [4]=sumQ^2
// [5]=u^{2n/(n-2)} sumT^2.
constexpr int kCheap = 6;

void eval_cheap(const gauge::GaugeSolution& sol, const double* x, double* out) {
    const int n = sol.n;
    bubble::BubbleParams bp{n, sol.eps};
    const double cn = 4.0 * (n - 1) / (n - 2);
    auto uj = bubble::u_eval(bp, x);
    const double u = uj.value;
    const double w = sol.w_value(x);
    double dw[kMaxDim];
    sol.w_gradient(x, dw);

    double Hv[kMaxDim][kMaxDim], divH[kMaxDim], Hdu[kMaxDim];
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            const double v = sol.H_value(i, k, x);
            Hv[i][k] = v;
            Hv[k][i] = v;
        }
    double sum_dH2 = 0;
    for (int i = 0; i < n; ++i) {
        divH[i] = 0;
        Hdu[i] = 0;
        for (int k = 0; k < n; ++k) {
            divH[i] += sol.H_deriv(i, k, k, x);
            Hdu[i] += Hv[i][k] * uj.gradient[k];
            for (int l = 0; l < n; ++l) {
                const double d = sol.H_deriv(i, k, l, x);
                sum_dH2 += d * d;
            }
        }
    }
    double sum_divH2 = 0, sum_Hdu_divH = 0, sum_Hdu2 = 0, J1 = 0, dw2 = 0;
    for (int i = 0; i < n; ++i) {
        sum_divH2 += divH[i] * divH[i];
        sum_Hdu_divH += Hdu[i] * divH[i];
        sum_Hdu2 += Hdu[i] * Hdu[i];
        J1 += uj.gradient[i] * dw[i];
        dw2 += dw[i] * dw[i];
    }
    double du_du_H = 0, du_dw_H = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            du_du_H += uj.gradient[i] * uj.gradient[k] * Hv[i][k];
            du_dw_H += uj.gradient[i] * dw[k] * Hv[i][k];
        }

    const double rlin = sol.sum_ddH(x);
    double sum_dk_HdivH = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            sum_dk_HdivH += sol.H_deriv(i, k, k, x) * divH[i] + Hv[i][k] * sol.divH_deriv(i, k, x);

    const double ucrit4 = std::pow(u, 4.0 / (n - 2));
    out[0] = J1;
    out[1] = -cn * du_du_H + u * u * rlin;
    out[2] = -u * u * sum_dk_HdivH - 2.0 * u * sum_Hdu_divH;
    out[3] = -0.25 * u * u * sum_dH2 + 0.5 * u * u * sum_divH2 + 2.0 * u * sum_Hdu_divH +
             2.0 * (n - 1.0) / (n - 2.0) * sum_Hdu2 + 2.0 * u * w * rlin - 2.0 * cn * du_dw_H +
             cn * dw2 - cn * n * (n + 2.0) * ucrit4 * w * w;
    out[4] = sol.sumQ2(x);
    out[5] = std::pow(u, 2.0 * n / (n - 2)) * sol.sumT2(x);
}

// Metric slots: [0]=J5 [1]=J6 [2]=J7 [3]=direct - flat - (J1..J7 sum).
constexpr int kMetric = 4;

void eval_metric(const gauge::GaugeSolution& sol, const MetricField& metric, const double* x,
                 double* out) {
    const int n = sol.n;
    bubble::BubbleParams bp{n, sol.eps};
    const double cn = 4.0 * (n - 1) / (n - 2);
    auto uj = bubble::u_eval(bp, x);
    const double u = uj.value;
    const double w = sol.w_value(x);
    double dw[kMaxDim];
    sol.w_gradient(x, dw);
    auto lt = metric.light(x);

    double Hv[kMaxDim][kMaxDim];
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            const double v = sol.H_value(i, k, x);
            Hv[i][k] = v;
            Hv[k][i] = v;
        }
    const double rlin = sol.sum_ddH(x);

    double divH[kMaxDim];
    double sum_dH2 = 0;
    for (int i = 0; i < n; ++i) {
        divH[i] = 0;
        for (int k = 0; k < n; ++k) {
            divH[i] += sol.H_deriv(i, k, k, x);
            for (int l = 0; l < n; ++l) {
                const double d = sol.H_deriv(i, k, l, x);
                sum_dH2 += d * d;
            }
        }
    }
    double sum_divH2 = 0;
    for (int i = 0; i < n; ++i) sum_divH2 += divH[i] * divH[i];
    double sum_dk_HdivH = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            sum_dk_HdivH += sol.H_deriv(i, k, k, x) * divH[i] + Hv[i][k] * sol.divH_deriv(i, k, x);

    // J5
    double j5 = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double hh = 0;
            for (int l = 0; l < n; ++l) hh += Hv[i][l] * Hv[k][l];
            const double bracket =
                lt.ginv(i, k) - (i == k ? 1.0 : 0.0) + Hv[i][k] - 0.5 * hh;
            j5 += cn * bracket * uj.gradient[i] * uj.gradient[k];
        }
    j5 += (lt.R - rlin + sum_dk_HdivH - 0.5 * sum_divH2 + 0.25 * sum_dH2) * u * u;

    // J6
    double j6 = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            j6 += 2.0 * cn * (lt.ginv(i, k) - (i == k ? 1.0 : 0.0) + Hv[i][k]) * uj.gradient[i] *
                  dw[k];
    j6 += 2.0 * (lt.R - rlin) * u * w;

    // J7
    double j7 = lt.R * w * w;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            j7 += cn * (lt.ginv(i, k) - (i == k ? 1.0 : 0.0)) * dw[i] * dw[k];

    out[0] = j5;
    out[1] = j6;
    out[2] = j7;

    // direct integrand (times sqrt(det) for honesty; det == 1 for trace-free h)
    double direct = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            direct += cn * lt.ginv(i, k) * (uj.gradient[i] + dw[i]) * (uj.gradient[k] + dw[k]);
    direct += lt.R * (u + w) * (u + w);
    direct *= std::sqrt(lt.det);

    double du2 = 0;
    for (int i = 0; i < n; ++i) du2 += uj.gradient[i] * uj.gradient[i];
    const double flat = cn * du2 +
                        cn * n * (n + 2.0) * std::pow(u, 4.0 / (n - 2)) * w * w;
    double cheap[kCheap];
    eval_cheap(sol, x, cheap);
    const double jsum = 2.0 * cn * cheap[0] + cheap[1] + cheap[2] + cheap[3] + j5 + j6 + j7;
    out[3] = direct - flat - jsum;
}

}  // namespace

std::string EnergyBreakdown::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["epsilon"] = eps;
    j["delta"] = delta;
    for (int t = 1; t <= 7; ++t) {
        j["J" + std::to_string(t)] = J[t].value;
        j["J" + std::to_string(t) + "_sigma"] = J[t].sigma;
    }
    j["J1_flux"] = J1_flux.value;
    j["J1_flux_sigma"] = J1_flux.sigma;
    j["J3_flux"] = J3_flux.value;
    j["J3_flux_sigma"] = J3_flux.sigma;
    j["direct_minus_sum"] = direct_minus_sum.value;
    j["direct_minus_sum_sigma"] = direct_minus_sum.sigma;
    j["sum_Q2"] = q2.value;
    j["weighted_sum_T2"] = t2_weighted.value;
    j["lambda_hat"] = lambda_hat;
    j["denom"] = denom;
    return j.dump(2);
}

EnergyBreakdown j_decomposition(const gauge::GaugeSolution& sol, const MetricField& metric,
                                const quad::QuadratureSpec& q) {
    const int n = sol.n;
    if (sol.delta > metric.rho_outer() * 1.0001)
        throw std::invalid_argument("j_decomposition: delta must not exceed rho_outer");
    EnergyBreakdown out;
    out.n = n;
    out.eps = sol.eps;
    out.delta = sol.delta;

    auto cheap = quad::integrate_shell_multi(
        n, 0.0, sol.delta, sol.eps, kCheap,
        [&](const double* x, double* vals) { eval_cheap(sol, x, vals); }, q, 201);
    out.J[1] = cheap[0];
    out.J[2] = cheap[1];
    out.J[3] = cheap[2];
    out.J[4] = cheap[3];
    out.q2 = cheap[4];
    out.t2_weighted = cheap[5];

    quad::QuadratureSpec qm = q;
    qm.samples = std::max<long>(200, q.samples / 10);
    auto met = quad::integrate_shell_multi(
        n, 0.0, sol.delta, sol.eps, kMetric,
        [&](const double* x, double* vals) { eval_metric(sol, metric, x, vals); }, qm, 202);
    out.J[5] = met[0];
    out.J[6] = met[1];
    out.J[7] = met[2];
    out.direct_minus_sum = met[3];

    // Flux forms. J1: sum (x_i/|x|)[d_i u w + (n-2)^2/2 u^{2n/(n-2)} V_i];
    // J3: -sum (x_k/|x|) u^2 H_ik divH_i.
    bubble::BubbleParams bp{n, sol.eps};
    out.J1_flux = quad::integrate_sphere(
        n, sol.delta,
        [&](const double* x) {
            auto uj = bubble::u_eval(bp, x);
            const double w = sol.w_value(x);
            double r = 0;
            for (int i = 0; i < n; ++i) r += x[i] * x[i];
            r = std::sqrt(r);
            const double upow = std::pow(uj.value, 2.0 * n / (n - 2));
            double s = 0;
            for (int i = 0; i < n; ++i)
                s += x[i] / r *
                     (uj.gradient[i] * w +
                      0.5 * (n - 2.0) * (n - 2.0) * upow * sol.V_value(i, x));
            return s;
        },
        q, 203);
    out.J3_flux = quad::integrate_sphere(
        n, sol.delta,
        [&](const double* x) {
            const double u = bubble::u_value(bp, x);
            double r = 0;
            for (int i = 0; i < n; ++i) r += x[i] * x[i];
            r = std::sqrt(r);
            double s = 0;
            for (int i = 0; i < n; ++i) {
                double divh = 0;
                for (int l = 0; l < n; ++l) divh += sol.H_deriv(i, l, l, x);
                for (int k = 0; k < n; ++k) s += x[k] / r * u * u * sol.H_value(i, k, x) * divh;
            }
            return -s;
        },
        q, 204);

    // lambda-hat bookkeeping
    double denom = 0;
    for (const auto& [deg, norm] : coeff_norms_by_degree(sol.coeffs))
        denom += norm * std::pow(sol.eps, n - 2) *
                 quad::weight_profile_integral(n, sol.eps, sol.delta, 2 * deg + 2 - 2 * n);
    out.denom = denom;
    if (denom > 0)
        out.lambda_hat = (0.25 * out.q2.value + 2.0 * out.t2_weighted.value) / (2.0 * denom);
    return out;
}

YamabeResult yamabe_energy(const ScalarField& v, const MetricField& metric, double radius,
                           double cluster, const quad::QuadratureSpec& q) {
    const int n = metric.n();
    const double cn = 4.0 * (n - 1) / (n - 2);
    auto f = [&](const double* x, double* out) {
        double grad[kMaxDim];
        v.gradient(x, grad);
        const double val = v.value(x);
        auto lt = metric.light(x);
        double num = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) num += cn * lt.ginv(i, k) * grad[i] * grad[k];
        num += lt.R * val * val;
        const double sq = std::sqrt(lt.det);
        out[0] = num * sq;
        out[1] = std::pow(std::abs(val), 2.0 * n / (n - 2)) * sq;
    };
    std::vector<McResult> parts(2);
    if (radius > 0) {
        parts = quad::integrate_shell_multi(n, 0.0, radius, cluster, 2, f, q, 210);
    } else {
        const double split = 8.0 * cluster;
        auto inner = quad::integrate_shell_multi(n, 0.0, split, cluster, 2, f, q, 210);
        auto outer = quad::integrate_exterior_multi(n, split, 2, f, q, 211);
        parts[0] = inner[0] + outer[0];
        parts[1] = inner[1] + outer[1];
    }
    YamabeResult res;
    res.numerator = parts[0];
    res.denominator_integral = parts[1];
    if (parts[1].value <= 0) throw std::runtime_error("yamabe_energy: denominator underflow");
    const double dpow = std::pow(parts[1].value, (n - 2.0) / n);
    res.energy = parts[0].value / dpow;
    // first-order error propagation
    const double dE_dden = -res.energy * (n - 2.0) / n / parts[1].value;
    res.sigma = std::sqrt(std::pow(parts[0].sigma / dpow, 2) +
                          std::pow(dE_dden * parts[1].sigma, 2));
    return res;
}

IntegratedEstimate integrated_estimate(const gauge::GaugeSolution& sol,
                                       const quad::QuadratureSpec& q) {
    const int n = sol.n;
    if (sol.delta < 2.0 * sol.eps)
        throw std::invalid_argument("integrated_estimate: requires delta >= 2 eps");
    auto cheap = quad::integrate_shell_multi(
        n, 0.0, sol.delta, sol.eps, kCheap,
        [&](const double* x, double* vals) { eval_cheap(sol, x, vals); }, q, 220);
    IntegratedEstimate est;
    est.lhs = -cheap[3].value;
    est.lhs_sigma = cheap[3].sigma;
    est.positive_part = 0.25 * cheap[4].value + 2.0 * cheap[5].value;
    est.positive_sigma = std::hypot(0.25 * cheap[4].sigma, 2.0 * cheap[5].sigma);
    est.boundary_term = est.lhs - est.positive_part;
    double denom = 0;
    for (const auto& [deg, norm] : coeff_norms_by_degree(sol.coeffs))
        denom += norm * std::pow(sol.eps, n - 2) *
                 quad::weight_profile_integral(n, sol.eps, sol.delta, 2 * deg + 2 - 2 * n);
    est.denom = denom;
    est.lambda_hat = denom > 0 ? est.positive_part / (2.0 * denom) : 0.0;
    return est;
}

ScanResult pointwise_identity_scan(const CoeffSet& c_scaled, double delta,
                                   const std::vector<double>& eps_list, int ansatz_degree,
                                   const quad::QuadratureSpec& q) {
    ScanResult out;
    const int n = c_scaled.n();
    auto ansatz = gauge::build_ansatz(n, ansatz_degree);
    for (double eps : eps_list) {
        if (eps > delta / 2)
            throw std::invalid_argument("pointwise_identity_scan: eps must be <= delta/2");
        auto sol = gauge::solve_V(c_scaled, eps, delta, ansatz);
        auto cheap = quad::integrate_shell_multi(
            n, 0.0, delta, eps, kCheap,
            [&](const double* x, double* vals) { eval_cheap(sol, x, vals); }, q, 230);
        const double rho = -cheap[3].value - 0.25 * cheap[4].value - 2.0 * cheap[5].value;
        out.eps_values.push_back(eps);
        out.rho_integrals.push_back(rho);
        out.positive_parts.push_back(0.25 * cheap[4].value + 2.0 * cheap[5].value);
    }
    // least-squares slope of log|rho| against log eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    out.identically_zero = true;
    for (size_t t = 0; t < out.eps_values.size(); ++t) {
        if (std::abs(out.rho_integrals[t]) > 1e-10 * std::abs(out.positive_parts[t]))
            out.identically_zero = false;
        if (out.rho_integrals[t] == 0) continue;
        const double lx = std::log(out.eps_values[t]);
        const double ly = std::log(std::abs(out.rho_integrals[t]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    out.slope = (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return out;
}

QBoundResult annulus_Q_bound(const gauge::GaugeSolution& sol, double r,
                             const quad::QuadratureSpec& q) {
    const int n = sol.n;
    if (r < sol.eps) throw std::invalid_argument("annulus_Q_bound: requires r >= eps");
    QBoundResult res;
    if (sol.coeffs.empty()) {
        res.flat = true;
        return res;
    }
    for (const auto& [deg, norm] : coeff_norms_by_degree(sol.coeffs))
        res.lhs += norm * std::pow(sol.eps, n - 2) * std::pow(r, 2.0 * deg + 2 - n);
    auto q2 = quad::integrate_shell(
        n, r, 2.0 * r, r, [&](const double* x) { return sol.sumQ2(x); }, q, 240);
    res.q2 = q2.value;
    res.ratio = res.q2 > 0 ? res.lhs / res.q2 : 0.0;
    return res;
}

}  // namespace ytf::energy
