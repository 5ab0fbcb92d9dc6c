#include "ytf/gauge.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "ytf/bubble.hpp"

namespace ytf::gauge {

double chi_cut(double t) {
    // f((5/3 - t) * 3) / (f((5/3 - t) * 3) + f(1 - (5/3 - t) * 3)), f = exp(-1/tau)
    auto f = [](double tau) { return tau > 0 ? std::exp(-1.0 / tau) : 0.0; };
    const double s = (5.0 / 3.0 - t) * 3.0;
    const double a = f(s), b = f(1.0 - s);
    if (a == 0.0) return 0.0;
    if (b == 0.0) return 1.0;
    return a / (a + b);
}

double chi_cut_derivative(double t) {
    auto f = [](double tau) { return tau > 0 ? std::exp(-1.0 / tau) : 0.0; };
    auto fp = [&](double tau) { return tau > 0 ? f(tau) / (tau * tau) : 0.0; };
    const double s = (5.0 / 3.0 - t) * 3.0;
    const double a = f(s), b = f(1.0 - s);
    if (a == 0.0 || b == 0.0) return 0.0;
    const double ap = fp(s) * (-3.0);
    const double bp = fp(1.0 - s) * 3.0;
    return (ap * b - a * bp) / ((a + b) * (a + b));
}

void CompiledSymTensor::build(const sym::PolyTensor& T) {
    n = T.n();
    const int m = n * (n + 1) / 2;
    entry.resize(m);
    dentry.resize(m * n);
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            entry[tri(i, k)] = CompiledPoly(T.at(i, k));
            for (int l = 0; l < n; ++l)
                dentry[tri(i, k) * n + l] = CompiledPoly(T.at(i, k).derivative(l));
        }
}

namespace {

// Weighted moment: int u_eps^{2n/(n-2)} x^gamma dx = eps^{|gamma|} * M(gamma),
// with M the unit-scale half-space moment. Cached per exponent vector.
struct WeightedMoments {
    int n;
    double eps;
    std::map<MultiIndex, double> cache;
    double get(const MultiIndex& g) {
        auto it = cache.find(g);
        if (it == cache.end()) {
            double m;
            for (int i = 0; i < n - 1; ++i)
                if (g[i] % 2 != 0) {
                    m = 0.0;
                    it = cache.emplace(g, m).first;
                    return it->second;
                }
            m = bubble::halfspace_moment(n, n, g);
            it = cache.emplace(g, m).first;
        }
        return it->second * std::pow(eps, g.degree());
    }
};

// 1-D tail factor: area(S+) * int_{4d/3}^inf W(r/delta) u^{2n/(n-2)} r^{|g|+n-1} dr
// where W(t) = 1 - chi(t) or 1 - chi(t)^2.
double cutoff_tail_radial(int n, double eps, double delta, int gdeg, bool squared) {
    auto f = [&](double r) {
        const double c = chi_cut(r / delta);
        const double w = squared ? 1.0 - c * c : 1.0 - c;
        if (w == 0.0) return 0.0;
        const double q = eps * eps + r * r;
        return w * std::pow(eps / q, n) * std::pow(r, gdeg + n - 1);
    };
    const double a = 4.0 * delta / 3.0;
    // integrand decays like r^{gdeg - n - 1}; gdeg <= 2d < n so it converges
    double inner = quad::integrate_radial(a, 32.0 * delta + 32.0 * eps, delta, f, 32, 3);
    double outer = quad::integrate_radial_exterior(32.0 * delta + 32.0 * eps, f, 32, 2);
    return quad::hemisphere_area(n) * (inner + outer);
}

// Angular factor of x^gamma over the unit hemisphere.
double hemisphere_angular_moment(int n, const MultiIndex& g) {
    for (int i = 0; i < n - 1; ++i)
        if (g[i] % 2 != 0) return 0.0;
    double lg = 0;
    for (int i = 0; i < n; ++i) lg += std::lgamma(0.5 * (g[i] + 1));
    return std::exp(lg - std::lgamma(0.5 * (n + g.degree())));
}

struct SparseDOp {
    // monomial entries of D(basis field), grouped by slot key i*n+k and
    // sorted, so Gram pairings are merge joins
    struct Slot {
        int key;
        std::vector<std::pair<MultiIndex, double>> monos;
    };
    std::vector<Slot> slots;
};

SparseDOp flatten_dop(int n, const BasisField& f) {
    SparseDOp out;
    for (const auto& e : conformal_killing_op(n, f)) {
        SparseDOp::Slot slot;
        slot.key = e.i * n + e.k;
        for (const auto& [mono, c] : e.p.terms()) slot.monos.push_back({mono, c.get_d()});
        out.slots.push_back(std::move(slot));
    }
    std::sort(out.slots.begin(), out.slots.end(),
              [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

// sum over term pairs (a,b) of c_a c_b M(g_a + g_b). Terms are grouped by
// tangential parity first; cross-parity pairs have vanishing moments.
double pairwise_moment_sum(const Poly& p, const std::function<double(const MultiIndex&)>& M) {
    const int n = p.dim();
    const uint32_t tang = (1u << (n - 1)) - 1;
    std::map<uint32_t, std::vector<std::pair<MultiIndex, double>>> groups;
    for (const auto& [g, c] : p.terms()) groups[g.parity_mask() & tang].push_back({g, c.get_d()});
    double total = 0;
    for (const auto& [parity, terms] : groups) {
        for (size_t a = 0; a < terms.size(); ++a) {
            total += terms[a].second * terms[a].second * M(terms[a].first + terms[a].first);
            for (size_t b = a + 1; b < terms.size(); ++b)
                total += 2.0 * terms[a].second * terms[b].second *
                         M(terms[a].first + terms[b].first);
        }
    }
    return total;
}

double dop_pair_moment(const SparseDOp& A, const SparseDOp& B, WeightedMoments& wm) {
    double total = 0;
    size_t ia = 0, ib = 0;
    while (ia < A.slots.size() && ib < B.slots.size()) {
        if (A.slots[ia].key < B.slots[ib].key) {
            ++ia;
        } else if (A.slots[ia].key > B.slots[ib].key) {
            ++ib;
        } else {
            for (const auto& [ma, ca] : A.slots[ia].monos)
                for (const auto& [mb, cb] : B.slots[ib].monos)
                    total += ca * cb * wm.get(ma + mb);
            ++ia;
            ++ib;
        }
    }
    return total;
}

}  // namespace

GaugeSolution solve_V(const CoeffSet& c, double eps, double delta,
                      const VectorPolyAnsatz& ansatz, const SolveOptions& opt) {
    const int n = ansatz.n;
    if (c.n() != n) throw std::invalid_argument("solve_V: dimension mismatch");
    if (!(eps > 0) || !(delta > 0)) throw std::invalid_argument("solve_V: eps, delta > 0");

    GaugeSolution sol;
    sol.n = n;
    sol.eps = eps;
    sol.delta = delta;
    sol.coeffs = c;
    sol.ansatz = ansatz;
    sol.H = sym::make_H(c);

    const int m = static_cast<int>(ansatz.fields.size());
    std::vector<SparseDOp> dops(m);
    for (int a = 0; a < m; ++a) dops[a] = flatten_dop(n, ansatz.fields[a]);

    // Bucket by tangential parity; the Gram is block-diagonal across buckets.
    std::map<uint32_t, std::vector<int>> buckets;
    for (int a = 0; a < m; ++a) buckets[ansatz.tangential_parity(a)].push_back(a);

    WeightedMoments wm{n, eps, {}};

    // Radial tail factors int (1 - chi) u^{2n/(n-2)} r^{deg+n-1} dr depend
    // only on the monomial degree; cache them once per solve.
    std::map<int, double> tail_radial;
    auto tail_factor = [&](int deg) {
        auto it = tail_radial.find(deg);
        if (it != tail_radial.end()) return it->second;
        auto f = [&](double r) {
            const double ch = chi_cut(r / delta);
            if (ch == 1.0) return 0.0;
            const double q = eps * eps + r * r;
            return (1.0 - ch) * std::pow(eps / q, n) * std::pow(r, deg + n - 1);
        };
        const double cut = 4.0 * delta / 3.0;
        const double far = 32 * delta + 32 * eps;
        const double rad = quad::integrate_radial(cut, far, delta, f, 32, 3) +
                           quad::integrate_radial_exterior(far, f, 32, 2);
        return tail_radial.emplace(deg, rad).first->second;
    };

    // b_a = <chi H, D B_a>_w: exact moments minus the (1 - chi) radial tail.
    std::vector<double> b(m, 0.0);
    for (int a = 0; a < m; ++a) {
        double exact = 0, tail = 0;
        for (const auto& slot : dops[a].slots) {
            const Poly& h = sol.H.at(slot.key / n, slot.key % n);
            if (h.is_zero()) continue;
            for (const auto& [mono, coeff] : slot.monos)
                for (const auto& [hm, hc] : h.terms()) {
                    MultiIndex g = hm + mono;
                    const double cc = hc.get_d() * coeff;
                    exact += cc * wm.get(g);
                    const double ang = hemisphere_angular_moment(n, g);
                    if (ang != 0.0) tail += cc * ang * tail_factor(g.degree());
                }
        }
        b[a] = exact - tail;
    }

    // ||chi H||_w^2 with the chi^2 weight, via sum_{i,k} H_ik^2 as one poly.
    {
        double exact = 0;
        Poly h2(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) h2 += sol.H.at(i, k) * sol.H.at(i, k);
        std::map<int, std::map<MultiIndex, double>> tail_poly;
        for (const auto& [g, cc] : h2.terms()) {
            exact += cc.get_d() * wm.get(g);
            tail_poly[g.degree()][g] += cc.get_d();
        }
        double tail = 0;
        for (const auto& [deg, polys] : tail_poly) {
            double ang = 0;
            for (const auto& [g, cc] : polys) ang += cc * hemisphere_angular_moment(n, g);
            if (ang != 0.0) tail += ang * cutoff_tail_radial(n, eps, delta, deg, true) /
                                    quad::hemisphere_area(n);
        }
        sol.weighted_h_norm2 = exact - tail;
    }

    // Per-bucket Gram and solve.
    sol.coef.assign(m, 0.0);
    double lambda_max_all = 0, lambda_min_kept = std::numeric_limits<double>::infinity();
    int kernel_dim = 0;
    double max_res_rel = 0;
    double bnorm_all = 0;
    for (double bv : b) bnorm_all += bv * bv;
    bnorm_all = std::sqrt(bnorm_all);

    double cgc = 0;  // <DV, DV>_w accumulated per bucket
    for (const auto& [parity, idxs] : buckets) {
        const int mb = static_cast<int>(idxs.size());
        Eigen::MatrixXd G(mb, mb);
        for (int aa = 0; aa < mb; ++aa) {
            for (int bb = aa; bb < mb; ++bb) {
                const double gv = dop_pair_moment(dops[idxs[aa]], dops[idxs[bb]], wm);
                G(aa, bb) = gv;
                G(bb, aa) = gv;
            }
        }
        Eigen::VectorXd bb(mb);
        for (int aa = 0; aa < mb; ++aa) bb(aa) = b[idxs[aa]];

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double lmax = ev.maxCoeff();
        lambda_max_all = std::max(lambda_max_all, lmax);
        Eigen::VectorXd cvec = Eigen::VectorXd::Zero(mb);
        const double cut = std::max(lmax, 1e-300) * opt.kernel_rel_tol;
        for (int t = 0; t < mb; ++t) {
            if (ev(t) <= cut) {
                ++kernel_dim;
                continue;
            }
            lambda_min_kept = std::min(lambda_min_kept, ev(t));
            cvec += es.eigenvectors().col(t) * (es.eigenvectors().col(t).dot(bb) / ev(t));
        }
        // iterative refinement on the kernel complement
        for (int step = 0; step < opt.refine_steps; ++step) {
            Eigen::VectorXd r = bb - G * cvec;
            Eigen::VectorXd dr = Eigen::VectorXd::Zero(mb);
            for (int t = 0; t < mb; ++t) {
                if (ev(t) <= cut) continue;
                dr += es.eigenvectors().col(t) * (es.eigenvectors().col(t).dot(r) / ev(t));
            }
            cvec += dr;
        }
        Eigen::VectorXd res = bb - G * cvec;
        // project the residual off the kernel (b has no kernel component by
        // construction; keep the measurement honest anyway)
        for (int t = 0; t < mb; ++t)
            if (ev(t) <= cut) res -= es.eigenvectors().col(t) * es.eigenvectors().col(t).dot(res);
        if (bnorm_all > 0) max_res_rel = std::max(max_res_rel, res.norm() / bnorm_all);
        for (int aa = 0; aa < mb; ++aa) sol.coef[idxs[aa]] = cvec(aa);
        cgc += cvec.dot(G * cvec);
    }
    sol.kernel_dim = kernel_dim;
    sol.normal_eq_residual_rel = max_res_rel;
    sol.cond_estimate =
        lambda_min_kept > 0 ? lambda_max_all / lambda_min_kept : std::numeric_limits<double>::infinity();
    if (sol.cond_estimate > opt.cond_limit)
        throw std::runtime_error(
            "solve_V: Gram condition number " + std::to_string(sol.cond_estimate) +
            " above limit; reduce the ansatz degree or regularise");

    // ||chi H - DV||^2 = ||chi H||^2 - 2 c.b + c.G c
    {
        double cb = 0;
        for (int a = 0; a < m; ++a) cb += sol.coef[a] * b[a];
        sol.weighted_residual2 = std::max(0.0, sol.weighted_h_norm2 - 2 * cb + cgc);
    }

    // int u^{2(n+2)/(n-2)} |V|^2 (weight exponent n+2 at unit scale)
    {
        std::vector<Poly> Vp = assemble_field(ansatz, sol.coef);
        std::map<MultiIndex, double> vmoments;
        auto M = [&](const MultiIndex& g) {
            auto it = vmoments.find(g);
            if (it == vmoments.end())
                it = vmoments.emplace(g, bubble::halfspace_moment(n, n + 2, g)).first;
            return it->second * std::pow(eps, 4.0 + g.degree());
        };
        double s = 0;
        for (int comp = 0; comp < n; ++comp) s += pairwise_moment_sum(Vp[comp], M);
        sol.weighted_v_norm2 = s;
        sol.V = std::move(Vp);
    }

    // S = D V as exact polynomials; T = H - S inside the chi = 1 region.
    sol.S = sym::PolyTensor(2, n);
    {
        Poly div(n);
        for (int comp = 0; comp < n; ++comp) div += sol.V[comp].derivative(comp);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Poly s = sol.V[k].derivative(i) + sol.V[i].derivative(k);
                if (i == k) s -= div * rat(2, n);
                sol.S.at(i, k) = s;
            }
    }
    sol.T_inside = sym::PolyTensor(2, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) sol.T_inside.at(i, k) = sol.H.at(i, k) - sol.S.at(i, k);

    sol.finalize();
    return sol;
}

void GaugeSolution::finalize() {
    cS_.build(S);
    cT_.build(T_inside);
    cH_.build(H);
    cV_.resize(n);
    cdV_.resize(n * n);
    Poly div(n);
    for (int comp = 0; comp < n; ++comp) {
        cV_[comp] = CompiledPoly(V[comp]);
        for (int dir = 0; dir < n; ++dir) cdV_[comp * n + dir] = CompiledPoly(V[comp].derivative(dir));
        div += V[comp].derivative(comp);
    }
    cdiv_ = CompiledPoly(div);
    cddiv_.resize(n);
    for (int dir = 0; dir < n; ++dir) cddiv_[dir] = CompiledPoly(div.derivative(dir));

    cdivH_dk_.resize(n * n);
    Poly sum_ddh(n);
    for (int i = 0; i < n; ++i) {
        Poly divh(n);
        for (int l = 0; l < n; ++l) divh += H.at(i, l).derivative(l);
        for (int k = 0; k < n; ++k) cdivH_dk_[i * n + k] = CompiledPoly(divh.derivative(k));
        sum_ddh += divh.derivative(i);
    }
    csum_ddH_ = CompiledPoly(sum_ddh);
}

double GaugeSolution::H_value(int i, int k, const double* x) const { return cH_.value(i, k, x); }
double GaugeSolution::H_deriv(int i, int k, int l, const double* x) const {
    return cH_.deriv(i, k, l, x);
}
double GaugeSolution::divH_deriv(int i, int k, const double* x) const {
    return cdivH_dk_[i * n + k].eval(x);
}
double GaugeSolution::sum_ddH(const double* x) const { return csum_ddH_.eval(x); }

double GaugeSolution::V_value(int comp, const double* x) const { return cV_[comp].eval(x); }
double GaugeSolution::divV_value(const double* x) const { return cdiv_.eval(x); }
double GaugeSolution::S_value(int i, int k, const double* x) const { return cS_.value(i, k, x); }
double GaugeSolution::S_deriv(int i, int k, int l, const double* x) const {
    return cS_.deriv(i, k, l, x);
}
double GaugeSolution::T_value(int i, int k, const double* x) const { return cT_.value(i, k, x); }
double GaugeSolution::T_deriv(int i, int k, int l, const double* x) const {
    return cT_.deriv(i, k, l, x);
}

double GaugeSolution::w_value(const double* x) const {
    bubble::BubbleParams bp{n, eps};
    double grad[kMaxDim];
    bubble::u_gradient(bp, x, grad);
    double s = 0;
    for (int l = 0; l < n; ++l) s += grad[l] * cV_[l].eval(x);
    s += double(n - 2) / (2.0 * n) * bubble::u_value(bp, x) * cdiv_.eval(x);
    return s;
}

void GaugeSolution::w_gradient(const double* x, double* out) const {
    bubble::BubbleParams bp{n, eps};
    auto jet = bubble::u_eval(bp, x);
    const double cdiv = cdiv_.eval(x);
    for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
            s += jet.hessian[k * n + l] * cV_[l].eval(x);
            s += jet.gradient[l] * cdV_[l * n + k].eval(x);
        }
        s += double(n - 2) / (2.0 * n) * (jet.gradient[k] * cdiv + jet.value * cddiv_[k].eval(x));
        out[k] = s;
    }
}

double GaugeSolution::Q_value(int i, int k, int l, const double* x) const {
    bubble::BubbleParams bp{n, eps};
    const double u = bubble::u_value(bp, x);
    double grad[kMaxDim];
    bubble::u_gradient(bp, x, grad);
    const double f = 2.0 / (n - 2);
    double q = u * T_deriv(i, k, l, x) - f * grad[i] * T_value(k, l, x) -
               f * grad[k] * T_value(i, l, x);
    if (k == l) {
        double s = 0;
        for (int p = 0; p < n; ++p) s += grad[p] * T_value(i, p, x);
        q += f * s;
    }
    if (i == l) {
        double s = 0;
        for (int p = 0; p < n; ++p) s += grad[p] * T_value(k, p, x);
        q += f * s;
    }
    return q;
}

double GaugeSolution::sumQ2(const double* x) const {
    bubble::BubbleParams bp{n, eps};
    const double u = bubble::u_value(bp, x);
    double grad[kMaxDim];
    bubble::u_gradient(bp, x, grad);
    const double f = 2.0 / (n - 2);
    double tv[kMaxDim][kMaxDim], td;
    double tp[kMaxDim];
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) tv[i][k] = T_value(i, k, x);
    for (int i = 0; i < n; ++i) {
        tp[i] = 0;
        for (int p = 0; p < n; ++p) tp[i] += grad[p] * tv[i][p];
    }
    double total = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                td = u * T_deriv(i, k, l, x) - f * grad[i] * tv[k][l] - f * grad[k] * tv[i][l];
                if (k == l) td += f * tp[i];
                if (i == l) td += f * tp[k];
                total += td * td;
            }
    return total;
}

double GaugeSolution::sumT2(const double* x) const {
    double total = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double t = T_value(i, k, x);
            total += t * t;
        }
    return total;
}

double GaugeSolution::xi_n(const double* x) const {
    bubble::BubbleParams bp{n, eps};
    const double u = bubble::u_value(bp, x);
    double du[kMaxDim];
    bubble::u_gradient(bp, x, du);
    const double w = w_value(x);
    double dw[kMaxDim];
    w_gradient(x, dw);
    const int nn = n - 1;  // 0-based normal index
    const double cn = 4.0 * (n - 1) / (n - 2);

    double xi = 0;
    // -2 sum_k u w d_k H_nk + 2 sum_i d_i(u w) H_in
    for (int k = 0; k < n; ++k) xi += -2.0 * u * w * cH_.deriv(nn, k, k, x);
    for (int i = 0; i < n; ++i)
        xi += 2.0 * (du[i] * w + u * dw[i]) * cH_.value(i, nn, x);
    // + 1/2 u^2 sum d_n S_ik H_ik - u^2 sum d_l S_il H_in - 2u sum d_l u S_il H_in
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) xi += 0.5 * u * u * S_deriv(i, k, nn, x) * cH_.value(i, k, x);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            xi += -u * u * S_deriv(i, l, l, x) * cH_.value(i, nn, x);
            xi += -2.0 * u * du[l] * S_value(i, l, x) * cH_.value(i, nn, x);
        }
    // + u w sum_k d_k S_nk - sum_i d_i(u w) S_in
    for (int k = 0; k < n; ++k) xi += u * w * S_deriv(nn, k, k, x);
    for (int i = 0; i < n; ++i) xi += -(du[i] * w + u * dw[i]) * S_value(i, nn, x);
    // - 1/4 u^2 sum d_n S_ik S_ik + 1/2 u^2 sum d_l S_il S_in + u sum d_l u S_il S_in
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            xi += -0.25 * u * u * S_deriv(i, k, nn, x) * S_value(i, k, x);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            xi += 0.5 * u * u * S_deriv(i, l, l, x) * S_value(i, nn, x);
            xi += u * du[l] * S_value(i, l, x) * S_value(i, nn, x);
        }
    // + cn sum d_i u w S_in - cn w d_n w
    for (int i = 0; i < n; ++i) xi += cn * du[i] * w * S_value(i, nn, x);
    xi += -cn * w * dw[nn];
    // + (2/(n-2)) u sum d_k u T_ik T_in
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            xi += 2.0 / (n - 2) * u * du[k] * T_value(i, k, x) * T_value(i, nn, x);
    return xi;
}

std::string GaugeSolution::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["epsilon"] = eps;
    j["delta"] = delta;
    j["ansatz_degree"] = ansatz.degree;
    j["basis_size"] = ansatz.fields.size();
    j["kernel_dim"] = kernel_dim;
    j["cond_estimate"] = cond_estimate;
    j["normal_eq_residual_rel"] = normal_eq_residual_rel;
    j["weighted_h_norm2"] = weighted_h_norm2;
    j["weighted_residual2"] = weighted_residual2;
    j["weighted_v_norm2"] = weighted_v_norm2;
    nlohmann::ordered_json coefs = nlohmann::json::array();
    char buf[64];
    for (size_t a = 0; a < coef.size(); ++a) {
        if (coef[a] == 0.0) continue;
        std::snprintf(buf, sizeof(buf), "%.17g", coef[a]);
        nlohmann::ordered_json e;
        e["component"] = ansatz.fields[a].comp + 1;
        std::vector<int> be(n);
        for (int t = 0; t < n; ++t) be[t] = ansatz.fields[a].beta[t];
        e["beta"] = be;
        e["value"] = buf;
        coefs.push_back(e);
    }
    j["coefficients"] = coefs;
    return j.dump(2);
}

double strong_residual(const GaugeSolution& sol, int samples, uint64_t seed) {
    const int n = sol.n;
    bubble::BubbleParams bp{n, sol.eps};
    Rng rng(seed);
    Kahan acc;
    long count = 0;
    for (int s = 0; s < samples; ++s) {
        // log-uniform radii between the bubble core and the cutoff ball; a
        // uniform draw over B_delta would park nearly all samples where the
        // u-weight has already decayed away
        auto p = rng.hemisphere_direction(n);
        const double lo = sol.eps / 4;
        const double r = lo * std::pow(sol.delta / lo, rng.uniform());
        for (auto& v : p) v *= r;
        const double u = bubble::u_value(bp, p.data());
        double du[kMaxDim];
        bubble::u_gradient(bp, p.data(), du);
        const double wpow = std::pow(u, 2.0 * n / (n - 2));
        for (int i = 0; i < n; ++i) {
            double r = 0;
            for (int k = 0; k < n; ++k)
                r += sol.T_deriv(i, k, k, p.data()) +
                     (2.0 * n / (n - 2)) * (du[k] / u) * sol.T_value(i, k, p.data());
            r *= wpow;
            acc.add(r * r);
            ++count;
        }
    }
    return std::sqrt(acc.sum() / count);
}

BoundaryLemmaReport boundary_lemma_check(const GaugeSolution& sol, int samples, uint64_t seed) {
    const int n = sol.n;
    const int nn = n - 1;
    Rng rng(seed);
    BoundaryLemmaReport rep;
    for (int s = 0; s < samples; ++s) {
        auto p = rng.ball_point(n - 1);
        double x[kMaxDim];
        for (int t = 0; t < n - 1; ++t) x[t] = p[t] * sol.delta;
        x[nn] = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            rep.max_S_in = std::max(rep.max_S_in, std::abs(sol.S_value(i, nn, x)));
            rep.max_T_in = std::max(rep.max_T_in, std::abs(sol.T_value(i, nn, x)));
            for (int k = 0; k < n - 1; ++k)
                rep.max_dn_S_tangential =
                    std::max(rep.max_dn_S_tangential, std::abs(sol.S_deriv(i, k, nn, x)));
        }
        rep.max_dn_S_nn = std::max(rep.max_dn_S_nn, std::abs(sol.S_deriv(nn, nn, nn, x)));
        double dw[kMaxDim];
        sol.w_gradient(x, dw);
        rep.max_dn_w = std::max(rep.max_dn_w, std::abs(dw[nn]));
        const double xin = sol.xi_n(x);
        rep.max_xi_n = std::max(rep.max_xi_n, std::abs(xin));
        // scale of the largest constituent: u^2 |S||H| style bound
        bubble::BubbleParams bp{n, sol.eps};
        const double u = bubble::u_value(bp, x);
        double hmax = 0, smax = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                hmax = std::max(hmax, std::abs(sol.H.at(i, k).eval_double(x)));
                smax = std::max(smax, std::abs(sol.S_value(i, k, x)));
            }
        rep.xi_n_term_scale =
            std::max(rep.xi_n_term_scale, u * u * std::max(hmax, smax) * std::max(hmax, smax));
    }
    return rep;
}

std::map<double, double> decay_profile(const GaugeSolution& sol,
                                       const std::vector<double>& radii) {
    const int n = sol.n;
    const int sigma = std::max(2, sol.coeffs.max_active_degree());
    std::map<double, double> out;
    for (double r : radii) {
        auto M = [&](const MultiIndex& g) {
            const double ang = hemisphere_angular_moment(n, g);
            if (ang == 0.0) return 0.0;
            const int p = n + g.degree();
            return ang * (std::pow(2 * r, p) - std::pow(r, p)) / p;
        };
        double total = 0;
        for (int comp = 0; comp < n; ++comp) total += pairwise_moment_sum(sol.V[comp], M);
        out[r] = total * std::pow(r, -2.0 * sigma - n - 2);
    }
    return out;
}

KernelReport kernel_report(const VectorPolyAnsatz& ansatz, double eps) {
    const int n = ansatz.n;
    const int m = static_cast<int>(ansatz.fields.size());
    std::vector<SparseDOp> dops(m);
    for (int a = 0; a < m; ++a) dops[a] = flatten_dop(n, ansatz.fields[a]);
    WeightedMoments wm{n, eps, {}};
    std::map<uint32_t, std::vector<int>> buckets;
    for (int a = 0; a < m; ++a) buckets[ansatz.tangential_parity(a)].push_back(a);
    KernelReport rep;
    for (const auto& [parity, idxs] : buckets) {
        const int mb = static_cast<int>(idxs.size());
        Eigen::MatrixXd G(mb, mb);
        for (int aa = 0; aa < mb; ++aa)
            for (int bb = aa; bb < mb; ++bb) {
                const double gv = dop_pair_moment(dops[idxs[aa]], dops[idxs[bb]], wm);
                G(aa, bb) = gv;
                G(bb, aa) = gv;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        const double cut = std::max(es.eigenvalues().maxCoeff(), 1e-300) * 1e-11;
        for (int t = 0; t < mb; ++t) {
            if (es.eigenvalues()(t) > cut) continue;
            ++rep.dimension;
            std::vector<double> vec(m, 0.0);
            for (int aa = 0; aa < mb; ++aa) vec[idxs[aa]] = es.eigenvectors()(aa, t);
            rep.basis.push_back(std::move(vec));
        }
    }
    return rep;
}

}  // namespace ytf::gauge
