#include "ytf/green.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

#include "ytf/rng.hpp"

namespace ytf::green {

namespace {

double kappa_n(int n) { return 1.0 / (4.0 * (n - 1) * quad::sphere_area(n)); }
double c_n(int n) { return 4.0 * (n - 1.0) / (n - 2.0); }

double dist(const double* x, const double* y, int n, bool mirror) {
    double d2 = 0;
    for (int i = 0; i < n - 1; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double dn = mirror ? x[n - 1] + y[n - 1] : x[n - 1] - y[n - 1];
    return std::sqrt(d2 + dn * dn);
}

}  // namespace

double neumann_kernel(const double* x, const double* y, int n) {
    const double d1 = dist(x, y, n, false);
    const double d2 = dist(x, y, n, true);
    if (d1 == 0.0 || d2 == 0.0) throw std::invalid_argument("neumann_kernel: coincident points");
    return kappa_n(n) * (std::pow(d1, 2 - n) + std::pow(d2, 2 - n));
}

void neumann_kernel_grad(const double* x, const double* y, int n, double* grad) {
    const double k = kappa_n(n);
    const double d1 = dist(x, y, n, false);
    const double d2 = dist(x, y, n, true);
    const double f1 = k * (2 - n) * std::pow(d1, -n);
    const double f2 = k * (2 - n) * std::pow(d2, -n);
    for (int i = 0; i < n; ++i) {
        const double z1 = x[i] - y[i];
        const double z2 = (i == n - 1) ? x[i] + y[i] : x[i] - y[i];
        grad[i] = f1 * z1 + f2 * z2;
    }
}

double neumann_kernel_dn(const double* x, const double* y, int n) {
    double grad[kMaxDim];
    neumann_kernel_grad(x, y, n, grad);
    return grad[n - 1];
}

double GreenModel::G0(const double* x) const {
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    return std::pow(r2, 0.5 * (2 - n));
}

double GreenModel::psi(const double* x) const {
    if (flat) return 0.0;
    Kahan acc;
    for (size_t j = 0; j < cloud.size(); ++j) {
        if (source[j] == 0.0) continue;
        const double* y = cloud[j].data();
        const double d1 = dist(x, y, n, false);
        if (d1 < r_excl[j]) continue;
        const double d2 = dist(x, y, n, true);
        acc.add(weight[j] * source[j] * kappa_n(n) *
                (std::pow(d1, 2 - n) + std::pow(d2, 2 - n)));
    }
    return acc.sum();
}

void GreenModel::psi_grad(const double* x, double* grad) const {
    for (int i = 0; i < n; ++i) grad[i] = 0.0;
    if (flat) return;
    const double k = kappa_n(n);
    std::vector<Kahan> acc(n);
    for (size_t j = 0; j < cloud.size(); ++j) {
        if (source[j] == 0.0) continue;
        const double* y = cloud[j].data();
        const double d1 = dist(x, y, n, false);
        if (d1 < r_excl[j]) continue;
        const double d2 = dist(x, y, n, true);
        const double f1 = k * (2 - n) * std::pow(d1, -n) * weight[j] * source[j];
        const double f2 = k * (2 - n) * std::pow(d2, -n) * weight[j] * source[j];
        for (int i = 0; i < n; ++i) {
            const double z1 = x[i] - y[i];
            const double z2 = (i == n - 1) ? x[i] + y[i] : x[i] - y[i];
            acc[i].add(f1 * z1 + f2 * z2);
        }
    }
    for (int i = 0; i < n; ++i) grad[i] = acc[i].sum();
}

void GreenModel::psi_hess(const double* x, double s_at_x, double* hess) const {
    for (int t = 0; t < n * n; ++t) hess[t] = 0.0;
    if (flat) return;
    const double k = kappa_n(n);
    for (size_t j = 0; j < cloud.size(); ++j) {
        if (source[j] == 0.0) continue;
        const double* y = cloud[j].data();
        const double ws = weight[j] * source[j];
        const double d1 = dist(x, y, n, false);
        if (d1 >= r_excl[j]) {
            const double f = k * (2 - n) * std::pow(d1, -n) * ws;
            const double g = -n / (d1 * d1);
            for (int i = 0; i < n; ++i)
                for (int t = 0; t < n; ++t) {
                    const double zi = x[i] - y[i];
                    const double zt = x[t] - y[t];
                    hess[i * n + t] += f * ((i == t ? 1.0 : 0.0) + g * zi * zt);
                }
        }
        const double d2 = dist(x, y, n, true);
        if (d2 >= r_excl[j]) {
            const double f = k * (2 - n) * std::pow(d2, -n) * ws;
            const double g = -n / (d2 * d2);
            for (int i = 0; i < n; ++i)
                for (int t = 0; t < n; ++t) {
                    const double zi = (i == n - 1) ? x[i] + y[i] : x[i] - y[i];
                    const double zt = (t == n - 1) ? x[t] + y[t] : x[t] - y[t];
                    hess[i * n + t] += f * ((i == t ? 1.0 : 0.0) + g * zi * zt);
                }
        }
    }
    // principal-value trace correction from the excluded ball (direct part)
    const double local = -s_at_x / (n * c_n(n));
    for (int i = 0; i < n; ++i) hess[i * n + i] += local;
}

void GreenModel::G_grad(const double* x, double* grad) const {
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    const double f = (2 - n) * std::pow(r2, 0.5 * (2 - n) - 1);
    double pg[kMaxDim];
    psi_grad(x, pg);
    for (int i = 0; i < n; ++i) grad[i] = f * x[i] + pg[i];
}

double GreenModel::Phi(const double* x) const {
    if (flat) return 0.0;
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    return std::pow(r2, 0.5 * (n - 2)) * psi(x);
}

std::string GreenModel::to_json(int max_samples) const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["flat"] = flat;
    j["cloud_size"] = cloud.size();
    j["contraction_history"] = contraction_history;
    j["residual_history"] = residual_history;
    j["final_residual"] = final_residual;
    nlohmann::ordered_json samples = nlohmann::json::array();
    const int step = std::max<int>(1, static_cast<int>(cloud.size()) / std::max(1, max_samples));
    for (size_t t = 0; t < cloud.size(); t += step) {
        nlohmann::ordered_json e;
        e["x"] = cloud[t];
        e["psi"] = psi_cloud.empty() ? 0.0 : psi_cloud[t];
        double r2 = 0;
        for (int i = 0; i < n; ++i) r2 += cloud[t][i] * cloud[t][i];
        e["phi"] = psi_cloud.empty() ? 0.0 : std::pow(r2, 0.5 * (n - 2)) * psi_cloud[t];
        samples.push_back(e);
    }
    j["phi_samples"] = samples;
    return j.dump(2);
}

namespace {

struct CloudMetric {
    // cached metric data per cloud point for the Born source
    std::vector<Eigen::MatrixXd> ginv;           // g^{ik}
    std::vector<std::vector<double>> divginv;    // b_k = sum_i d_i g^{ik}
    std::vector<double> R;
};

CloudMetric cache_metric(const energy::MetricField& metric,
                         const std::vector<std::vector<double>>& cloud) {
    CloudMetric cm;
    const int n = metric.n();
    cm.ginv.reserve(cloud.size());
    cm.divginv.reserve(cloud.size());
    cm.R.reserve(cloud.size());
    for (const auto& y : cloud) {
        auto jet = metric.eval(y.data());
        cm.ginv.push_back(jet.ginv);
        std::vector<double> b(n, 0.0);
        for (int a = 0; a < n; ++a) {
            Eigen::MatrixXd dgi = -jet.ginv * jet.dg[a] * jet.ginv;
            for (int k = 0; k < n; ++k) b[k] += dgi(a, k);
        }
        cm.divginv.push_back(std::move(b));
        cm.R.push_back(jet.R);
    }
    return cm;
}

double born_source(const GreenModel& gm, const CloudMetric& cm, size_t j, double s_prev_at_j) {
    const int n = gm.n;
    const double* y = gm.cloud[j].data();
    const double cn = c_n(n);
    // G = G0 + psi jets
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += y[i] * y[i];
    const double g0 = std::pow(r2, 0.5 * (2 - n));
    double dg0[kMaxDim], hess0[kMaxDim * kMaxDim];
    const double f = (2 - n) * std::pow(r2, -0.5 * n);
    for (int i = 0; i < n; ++i) dg0[i] = f * y[i];
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t)
            hess0[i * n + t] = f * ((i == t ? 1.0 : 0.0) - n * y[i] * y[t] / r2);

    double psi_v = gm.psi(y);
    double dpsi[kMaxDim];
    gm.psi_grad(y, dpsi);
    double hpsi[kMaxDim * kMaxDim];
    gm.psi_hess(y, s_prev_at_j, hpsi);

    const double G = g0 + psi_v;
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) {
            const double aik = cm.ginv[j](i, t) - (i == t ? 1.0 : 0.0);
            if (aik != 0.0) s += cn * aik * (hess0[i * n + t] + hpsi[i * n + t]);
        }
    for (int k = 0; k < n; ++k) s += cn * cm.divginv[j][k] * (dg0[k] + dpsi[k]);
    s -= cm.R[j] * G;
    return s;
}

}  // namespace

GreenModel solve_green(const CoeffSet& c, double scale, double rho_outer, double rho_inner,
                       const GreenOptions& opt) {
    GreenModel gm;
    gm.n = c.n();
    gm.metric = energy::MetricField(c, scale, rho_outer, rho_inner);
    gm.flat = gm.metric.flat();
    if (gm.flat) return gm;

    const int n = gm.n;
    const double r_sup = gm.metric.support_radius();
    // inner edge: where the window turns on (annulus data) or a small floor
    const double r_lo =
        rho_inner > 0 ? rho_inner : r_sup * 1e-3;

    // radially stratified cloud
    const int strata = 16;
    const double ratio = std::pow(r_sup / r_lo, 1.0 / strata);
    const int per_stratum = std::max(1, opt.cloud_size / strata);
    Rng rng(opt.seed);
    for (int s = 0; s < strata; ++s) {
        const double r1 = r_lo * std::pow(ratio, s);
        const double r2 = r_lo * std::pow(ratio, s + 1);
        const double vol =
            quad::hemisphere_area(n) * (std::pow(r2, n) - std::pow(r1, n)) / n;
        const double spacing = std::pow(vol / per_stratum, 1.0 / n);
        for (int t = 0; t < per_stratum; ++t) {
            auto w = rng.hemisphere_direction(n);
            const double u = rng.uniform();
            const double r =
                std::pow(u * (std::pow(r2, n) - std::pow(r1, n)) + std::pow(r1, n), 1.0 / n);
            std::vector<double> y(n);
            for (int i = 0; i < n; ++i) y[i] = r * w[i];
            gm.cloud.push_back(std::move(y));
            gm.weight.push_back(vol / per_stratum);
            gm.r_excl.push_back(opt.exclusion_factor * spacing);
        }
    }

    CloudMetric cm = cache_metric(gm.metric, gm.cloud);

    const size_t m = gm.cloud.size();
    gm.source.assign(m, 0.0);
    gm.psi_cloud.assign(m, 0.0);

    // probes for the residual history
    std::vector<std::vector<double>> probes;
    {
        Rng prng(opt.seed ^ 0xabcdef12345ULL);
        for (int t = 0; t < opt.probe_points; ++t) {
            auto w = prng.hemisphere_direction(n);
            const double r = r_sup * (0.15 + 0.75 * prng.uniform());
            std::vector<double> y(n);
            for (int i = 0; i < n; ++i) y[i] = r * w[i];
            probes.push_back(std::move(y));
        }
    }
    CloudMetric pm = cache_metric(gm.metric, probes);

    // L_g G at held-out probes; at the fixed point c_n Delta psi cancels the
    // Born source exactly. Two passes resolve the PV local term which itself
    // depends on the source value at the probe.
    auto probe_residual = [&]() {
        Kahan acc;
        const double cn = c_n(n);
        for (size_t t = 0; t < probes.size(); ++t) {
            const double* y = probes[t].data();
            double r2 = 0;
            for (int i = 0; i < n; ++i) r2 += y[i] * y[i];
            const double g0 = std::pow(r2, 0.5 * (2 - n));
            double dg0[kMaxDim], hess0[kMaxDim * kMaxDim];
            const double f = (2 - n) * std::pow(r2, -0.5 * n);
            for (int i = 0; i < n; ++i) dg0[i] = f * y[i];
            for (int i = 0; i < n; ++i)
                for (int u2 = 0; u2 < n; ++u2)
                    hess0[i * n + u2] = f * ((i == u2 ? 1.0 : 0.0) - n * y[i] * y[u2] / r2);
            double dpsi[kMaxDim];
            gm.psi_grad(y, dpsi);
            const double G = g0 + gm.psi(y);

            double s_guess = 0;
            double hpsi[kMaxDim * kMaxDim];
            for (int pass = 0; pass < 2; ++pass) {
                gm.psi_hess(y, s_guess, hpsi);
                double s = 0;
                for (int i = 0; i < n; ++i)
                    for (int u2 = 0; u2 < n; ++u2) {
                        const double aik = pm.ginv[t](i, u2) - (i == u2 ? 1.0 : 0.0);
                        if (aik != 0.0) s += cn * aik * (hess0[i * n + u2] + hpsi[i * n + u2]);
                    }
                for (int k = 0; k < n; ++k) s += cn * pm.divginv[t][k] * (dg0[k] + dpsi[k]);
                s -= pm.R[t] * G;
                s_guess = s;
            }
            double lap_psi = 0;
            for (int i = 0; i < n; ++i) lap_psi += hpsi[i * n + i];
            const double resid = s_guess + cn * lap_psi;
            acc.add(resid * resid);
        }
        return std::sqrt(acc.sum() / probes.size());
    };

    double prev_change = -1;
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        // new source from the current psi (psi derived from gm.source)
        std::vector<double> s_new(m);
        for (size_t j = 0; j < m; ++j) s_new[j] = born_source(gm, cm, j, gm.source[j]);
        std::vector<double> old_source = gm.source;
        gm.source = std::move(s_new);

        // new psi values at the cloud
        std::vector<double> psi_new(m);
        for (size_t j = 0; j < m; ++j) psi_new[j] = gm.psi(gm.cloud[j].data());
        double change = 0, norm = 0;
        for (size_t j = 0; j < m; ++j) {
            change += (psi_new[j] - gm.psi_cloud[j]) * (psi_new[j] - gm.psi_cloud[j]);
            norm += psi_new[j] * psi_new[j];
        }
        change = std::sqrt(change);
        norm = std::sqrt(norm);
        gm.psi_cloud = std::move(psi_new);

        gm.residual_history.push_back(probe_residual());
        if (prev_change > 0) {
            const double factor = change / prev_change;
            gm.contraction_history.push_back(factor);
            if (factor > opt.contraction_limit && change > opt.tol * std::max(norm, 1e-300))
                throw std::runtime_error(
                    "solve_green: Born iteration is not contracting (factor " +
                    std::to_string(factor) + "); reduce the perturbation scale");
        }
        prev_change = change;
        if (norm == 0.0 || change <= opt.tol * norm) break;
        (void)old_source;
    }
    gm.final_residual = gm.residual_history.empty() ? 0.0 : gm.residual_history.back();
    return gm;
}

quad::McResult flux_integral(const GreenModel& gm, double delta, const quad::QuadratureSpec& q) {
    const int n = gm.n;
    const double cn = c_n(n);
    auto f = [&](const double* x) {
        double r2 = 0;
        for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
        const double r = std::sqrt(r2);
        double total = 0;
        if (!gm.flat) {
            // c_n sum (x_i/|x|) (|x|^{2-n} d_i psi - psi d_i |x|^{2-n})
            double dpsi[kMaxDim];
            gm.psi_grad(x, dpsi);
            double dr_psi = 0;
            for (int i = 0; i < n; ++i) dr_psi += x[i] / r * dpsi[i];
            const double psi_v = gm.psi(x);
            total += cn * (std::pow(r, 2 - n) * dr_psi + (n - 2) * std::pow(r, 1 - n) * psi_v);
        }
        // - |x|^{1-2n} sum x_i (|x|^2 d_k h_ik - 2n x_k h_ik)
        const auto& metric = gm.metric;
        if (!metric.flat()) {
            const double w = metric.scale() * metric.window(r);
            const double wp = metric.scale() * metric.window_derivative(r);
            if (w != 0.0 || wp != 0.0) {
                double x1 = 0, x2 = 0;  // sum x_i d_k h_ik and sum x_i x_k h_ik
                for (int i = 0; i < n; ++i)
                    for (int k = 0; k < n; ++k) {
                        const double hv = metric.H_entry(i, k, x);
                        const double dh =
                            w * metric.H_entry_deriv(i, k, k, x) + wp * (x[k] / r) * hv;
                        x1 += x[i] * dh;
                        x2 += x[i] * x[k] * w * hv;
                    }
                total -= std::pow(r, 1 - 2 * n) * (r2 * x1 - 2.0 * n * x2);
            }
        }
        return total;
    };
    if (gm.flat && gm.metric.flat()) return {0.0, 0.0};
    return quad::integrate_sphere(n, delta, f, q, 301);
}

FluxSweep flux_convergence(const GreenModel& gm, const std::vector<double>& deltas,
                           const quad::QuadratureSpec& q) {
    FluxSweep sweep;
    sweep.deltas = deltas;
    for (double d : deltas) {
        auto v = flux_integral(gm, d, q);
        sweep.values.push_back(v.value);
        sweep.sigmas.push_back(v.sigma);
    }
    for (size_t t = 0; t + 1 < sweep.values.size(); ++t)
        sweep.defects.push_back(sweep.values[t + 1] - sweep.values[t]);
    for (double d : sweep.defects) sweep.max_defect = std::max(sweep.max_defect, std::abs(d));
    if (!sweep.values.empty()) {
        sweep.limit_estimate = sweep.values.back();
        if (!sweep.defects.empty()) sweep.limit_estimate += sweep.defects.back() / 3.0;
    }
    return sweep;
}

}  // namespace ytf::green
