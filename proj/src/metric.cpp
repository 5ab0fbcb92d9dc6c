#include "ytf/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace ytf::energy {

MetricField::MetricField(const CoeffSet& c, double scale, double rho_outer, double rho_inner)
    : n_(c.n()), coeffs_(c), scale_(scale), rho_outer_(rho_outer), rho_inner_(rho_inner) {
    flat_ = (scale == 0.0) || c.empty();
    if (!(rho_outer > 0)) throw std::invalid_argument("MetricField: rho_outer must be positive");
    if (rho_inner < 0 || (rho_inner > 0 && rho_inner >= rho_outer))
        throw std::invalid_argument("MetricField: bad rho_inner");
    H_ = sym::make_H(c);
    cH_.build(H_);
    cddH_.resize(n_ * (n_ + 1) / 2 * n_ * n_);
    for (int i = 0; i < n_; ++i)
        for (int k = i; k < n_; ++k)
            for (int a = 0; a < n_; ++a)
                for (int b = 0; b < n_; ++b)
                    cddH_[(cH_.tri(i, k) * n_ + a) * n_ + b] =
                        CompiledPoly(H_.at(i, k).derivative(a).derivative(b));
    lin_ = Poly(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) lin_ += H_.at(i, k).derivative(i).derivative(k);
    clin_ = CompiledPoly(lin_);
}

double MetricField::window(double r) const {
    double w = gauge::chi_cut(r / rho_outer_);
    if (rho_inner_ > 0) w -= gauge::chi_cut(r / rho_inner_);
    return w;
}

double MetricField::window_derivative(double r) const {
    double w = gauge::chi_cut_derivative(r / rho_outer_) / rho_outer_;
    if (rho_inner_ > 0) w -= gauge::chi_cut_derivative(r / rho_inner_) / rho_inner_;
    return w;
}

void MetricField::h_at(const double* x, Eigen::MatrixXd& h) const {
    h.setZero(n_, n_);
    if (flat_) return;
    double r = 0;
    for (int i = 0; i < n_; ++i) r += x[i] * x[i];
    r = std::sqrt(r);
    const double w = scale_ * window(r);
    if (w == 0.0) return;
    for (int i = 0; i < n_; ++i)
        for (int k = i; k < n_; ++k) {
            const double v = w * cH_.value(i, k, x);
            h(i, k) = v;
            h(k, i) = v;
        }
}

Eigen::MatrixXd MetricField::g_at(const double* x) const {
    Eigen::MatrixXd h(n_, n_);
    h_at(x, h);
    if (h.isZero(0.0)) return Eigen::MatrixXd::Identity(n_, n_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::VectorXd lam = es.eigenvalues();
    for (int t = 0; t < n_; ++t) lam(t) = std::exp(lam(t));
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

double scalar_curvature_from_jet(const MetricJet& jet) {
    const int n = jet.n;
    const auto& g = jet.g;
    const auto& gi = jet.ginv;
    const auto& dg = jet.dg;
    const auto& ddg = jet.ddg;

    // dginv[a] = -gi dg[a] gi
    std::vector<Eigen::MatrixXd> dgi(n);
    for (int a = 0; a < n; ++a) dgi[a] = -gi * dg[a] * gi;

    auto ddg_at = [&](int a, int b) -> const Eigen::MatrixXd& {
        return (b <= a) ? ddg[a][b] : ddg[b][a];
    };

    // Gamma^l_ik and d_a Gamma^l_ik
    std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd(n, n));  // gamma[l](i,k)
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int m = 0; m < n; ++m)
                    s += gi(l, m) * (dg[i](m, k) + dg[k](m, i) - dg[m](i, k));
                gamma[l](i, k) = 0.5 * s;
            }

    double R = 0;
    (void)g;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double ric = 0;
            // d_l Gamma^l_ik - d_i Gamma^l_lk
            for (int l = 0; l < n; ++l) {
                double t1 = 0, t2 = 0;
                for (int m = 0; m < n; ++m) {
                    t1 += dgi[l](l, m) * (dg[i](m, k) + dg[k](m, i) - dg[m](i, k)) +
                          gi(l, m) * (ddg_at(l, i)(m, k) + ddg_at(l, k)(m, i) - ddg_at(l, m)(i, k));
                    t2 += dgi[i](l, m) * (dg[l](m, k) + dg[k](m, l) - dg[m](l, k)) +
                          gi(l, m) * (ddg_at(i, l)(m, k) + ddg_at(i, k)(m, l) - ddg_at(i, m)(l, k));
                }
                ric += 0.5 * (t1 - t2);
            }
            // + Gamma^l_lm Gamma^m_ik - Gamma^l_im Gamma^m_lk
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    ric += gamma[l](l, m) * gamma[m](i, k) - gamma[l](i, m) * gamma[m](l, k);
            R += gi(i, k) * ric;
        }
    return R;
}

MetricJet MetricField::eval(const double* x, double fd_step) const {
    MetricJet jet;
    jet.n = n_;
    jet.g = g_at(x);
    jet.ginv = jet.g.inverse();
    jet.det = jet.g.determinant();
    jet.dg.assign(n_, Eigen::MatrixXd::Zero(n_, n_));
    jet.ddg.assign(n_, std::vector<Eigen::MatrixXd>());
    for (int a = 0; a < n_; ++a) jet.ddg[a].assign(a + 1, Eigen::MatrixXd::Zero(n_, n_));
    double r2 = 0;
    for (int i = 0; i < n_; ++i) r2 += x[i] * x[i];
    jet.R_lin = flat_ ? 0.0 : scale_ * window(std::sqrt(r2)) * clin_.eval(x);
    if (flat_) {
        jet.R = 0;
        return jet;
    }
    const double h = fd_step > 0 ? fd_step : 1e-4 * std::max(1.0, std::sqrt(r2));
    double xp[kMaxDim];
    for (int i = 0; i < n_; ++i) xp[i] = x[i];

    std::vector<Eigen::MatrixXd> plus(n_), minus(n_);
    for (int a = 0; a < n_; ++a) {
        xp[a] = x[a] + h;
        plus[a] = g_at(xp);
        xp[a] = x[a] - h;
        minus[a] = g_at(xp);
        xp[a] = x[a];
        jet.dg[a] = (plus[a] - minus[a]) / (2 * h);
    }
    for (int a = 0; a < n_; ++a) {
        jet.ddg[a][a] = (plus[a] - 2 * jet.g + minus[a]) / (h * h);
        for (int b = 0; b < a; ++b) {
            xp[a] = x[a] + h;
            xp[b] = x[b] + h;
            Eigen::MatrixXd gpp = g_at(xp);
            xp[b] = x[b] - h;
            Eigen::MatrixXd gpm = g_at(xp);
            xp[a] = x[a] - h;
            Eigen::MatrixXd gmm = g_at(xp);
            xp[b] = x[b] + h;
            Eigen::MatrixXd gmp = g_at(xp);
            xp[a] = x[a];
            xp[b] = x[b];
            jet.ddg[a][b] = (gpp - gpm - gmp + gmm) / (4 * h * h);
        }
    }
    jet.R = scalar_curvature_from_jet(jet);

    // boundary mean curvature surrogate: |d_n g_tangential| at x_n = 0
    if (std::abs(x[n_ - 1]) < 1e-14) {
        double kappa = 0;
        for (int i = 0; i < n_ - 1; ++i) kappa += jet.dg[n_ - 1](i, i);
        jet.mean_curvature = 0.5 * kappa;
    }
    return jet;
}

double MetricField::scalar_curvature(const double* x, double fd_step) const {
    if (flat_) return 0.0;
    return eval(x, fd_step).R;
}

namespace {

// stable divided differences of exp
double exp_dd1(double a, double b) {
    const double m = 0.5 * (a + b), d = 0.5 * (a - b);
    const double s = (std::abs(d) < 1e-5) ? 1.0 + d * d / 6.0 : std::sinh(d) / d;
    return std::exp(m) * s;
}

double exp_dd2(double a, double b, double c) {
    // pick the best-conditioned of the three equivalent quotients
    const double ab = std::abs(a - b), bc = std::abs(b - c), ac = std::abs(a - c);
    const double spread = std::max({ab, bc, ac});
    if (spread < 1e-4) {
        const double m = (a + b + c) / 3.0;
        return 0.5 * std::exp(m) * (1.0 + (a * a + b * b + c * c - a * b - b * c - a * c) / 12.0);
    }
    if (ac >= ab && ac >= bc) return (exp_dd1(a, b) - exp_dd1(b, c)) / (a - c);
    if (ab >= bc) return (exp_dd1(c, a) - exp_dd1(a, b)) / (c - b);
    return (exp_dd1(b, c) - exp_dd1(c, a)) / (b - a);
}

}  // namespace

MetricField::Light MetricField::light(const double* x) const {
    Light lt;
    if (flat_) {
        lt.R = 0;
        lt.det = 1;
        lt.g = Eigen::MatrixXd::Identity(n_, n_);
        lt.ginv = lt.g;
        return lt;
    }
    const int n = n_;
    double r2 = 0;
    for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
    const double r = std::sqrt(r2);
    const double W = scale_ * window(r);
    const double Wp = scale_ * window_derivative(r);
    if (W == 0.0 && Wp == 0.0) {
        lt.R = 0;
        lt.det = 1;
        lt.g = Eigen::MatrixXd::Identity(n, n);
        lt.ginv = lt.g;
        return lt;
    }
    const double fd = 1e-5 * rho_outer_;
    const double Wpp =
        scale_ * (window_derivative(r + fd) - window_derivative(r - fd)) / (2 * fd);

    MetricJet jet;
    jet.n = n;
    Eigen::MatrixXd h(n, n);
    std::vector<Eigen::MatrixXd> dh(n, Eigen::MatrixXd(n, n));
    std::vector<std::vector<Eigen::MatrixXd>> ddh(n);
    for (int a = 0; a < n; ++a) ddh[a].assign(a + 1, Eigen::MatrixXd(n, n));
    const double rinv = r > 1e-14 ? 1.0 / r : 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            const double Hv = cH_.value(i, k, x);
            h(i, k) = h(k, i) = W * Hv;
            for (int a = 0; a < n; ++a) {
                const double v = Wp * x[a] * rinv * Hv + W * cH_.deriv(i, k, a, x);
                dh[a](i, k) = dh[a](k, i) = v;
            }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b <= a; ++b) {
                    double v = W * cddH_[(cH_.tri(i, k) * n + a) * n + b].eval(x);
                    if (Wp != 0.0 || Wpp != 0.0) {
                        const double na = x[a] * rinv, nb = x[b] * rinv;
                        v += Wpp * na * nb * Hv;
                        v += Wp * (((a == b ? 1.0 : 0.0) - na * nb) * rinv) * Hv;
                        v += Wp * (na * cH_.deriv(i, k, b, x) + nb * cH_.deriv(i, k, a, x));
                    }
                    ddh[a][b](i, k) = ddh[a][b](k, i) = v;
                }
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXd& Q = es.eigenvectors();
    Eigen::VectorXd elam(n), eminus(n);
    double tr = 0;
    for (int t = 0; t < n; ++t) {
        elam(t) = std::exp(lam(t));
        eminus(t) = std::exp(-lam(t));
        tr += lam(t);
    }
    jet.g = Q * elam.asDiagonal() * Q.transpose();
    jet.ginv = Q * eminus.asDiagonal() * Q.transpose();
    jet.det = std::exp(tr);

    Eigen::MatrixXd phi1(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) phi1(i, j) = exp_dd1(lam(i), lam(j));

    std::vector<Eigen::MatrixXd> dht(n);  // eigenbasis representations
    jet.dg.assign(n, Eigen::MatrixXd(n, n));
    for (int a = 0; a < n; ++a) {
        dht[a] = Q.transpose() * dh[a] * Q;
        jet.dg[a] = Q * dht[a].cwiseProduct(phi1) * Q.transpose();
    }
    jet.ddg.assign(n, std::vector<Eigen::MatrixXd>());
    Eigen::MatrixXd M(n, n);
    for (int a = 0; a < n; ++a) {
        jet.ddg[a].assign(a + 1, Eigen::MatrixXd(n, n));
        for (int b = 0; b <= a; ++b) {
            Eigen::MatrixXd ddht = Q.transpose() * ddh[a][b] * Q;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0;
                    for (int k = 0; k < n; ++k)
                        s += (dht[a](i, k) * dht[b](k, j) + dht[b](i, k) * dht[a](k, j)) *
                             exp_dd2(lam(i), lam(k), lam(j));
                    M(i, j) = s + ddht(i, j) * phi1(i, j);
                }
            jet.ddg[a][b] = Q * M * Q.transpose();
        }
    }
    lt.R = scalar_curvature_from_jet(jet);
    lt.det = jet.det;
    lt.g = jet.g;
    lt.ginv = jet.ginv;
    return lt;
}

}  // namespace ytf::energy
