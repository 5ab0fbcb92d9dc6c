#include "ytf/symtensor.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "ytf/rng.hpp"

namespace ytf::sym {

PolyTensor::PolyTensor(int rank, int n) : rank_(rank), n_(n) {
    if (rank < 2 || rank > 4) throw std::invalid_argument("PolyTensor: rank must be 2..4");
    size_t size = 1;
    for (int r = 0; r < rank; ++r) size *= n;
    entries_.assign(size, Poly(n));
}

Poly& PolyTensor::at(int i, int k) { return entries_[i * n_ + k]; }
const Poly& PolyTensor::at(int i, int k) const { return entries_[i * n_ + k]; }
Poly& PolyTensor::at(int i, int j, int k) { return entries_[(i * n_ + j) * n_ + k]; }
const Poly& PolyTensor::at(int i, int j, int k) const { return entries_[(i * n_ + j) * n_ + k]; }
Poly& PolyTensor::at(int i, int j, int k, int l) {
    return entries_[((i * n_ + j) * n_ + k) * n_ + l];
}
const Poly& PolyTensor::at(int i, int j, int k, int l) const {
    return entries_[((i * n_ + j) * n_ + k) * n_ + l];
}

bool PolyTensor::is_zero() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

bool PolyTensor::is_symmetric_rank2() const {
    if (rank_ != 2) return false;
    for (int i = 0; i < n_; ++i)
        for (int k = i + 1; k < n_; ++k)
            if (!(at(i, k) == at(k, i))) return false;
    return true;
}

Poly PolyTensor::trace() const {
    Poly t(n_);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

PolyTensor make_H(const CoeffSet& c) {
    PolyTensor H(2, c.n());
    for (const auto& [key, v] : c.entries()) {
        H.at(key.i, key.k).add_term(key.alpha, v);
        if (key.i != key.k) H.at(key.k, key.i).add_term(key.alpha, v);
    }
    return H;
}

std::string AdmissibilityReport::to_json() const {
    nlohmann::ordered_json j;
    j["normal_rows_zero"] = normal_rows_zero;
    j["boundary_radial_zero"] = boundary_radial_zero;
    j["boundary_normal_deriv_zero"] = boundary_normal_deriv_zero;
    j["trace_zero"] = trace_zero;
    j["pass"] = all_pass();
    j["failures"] = failures;
    return j.dump(2);
}

AdmissibilityReport check_admissible(const PolyTensor& H) {
    if (H.rank() != 2 || !H.is_symmetric_rank2())
        throw std::invalid_argument("check_admissible: needs a symmetric rank-2 tensor");
    const int n = H.n();
    const int nb = n - 1;  // normal direction
    AdmissibilityReport rep;

    rep.normal_rows_zero = true;
    for (int i = 0; i < n; ++i) {
        if (!H.at(i, nb).is_zero()) {
            rep.normal_rows_zero = false;
            rep.failures.push_back("H_{" + std::to_string(i + 1) + "," + std::to_string(n) +
                                   "} != 0");
        }
    }

    rep.boundary_radial_zero = true;
    for (int i = 0; i < n; ++i) {
        Poly s(n);
        for (int k = 0; k < n; ++k) s += H.at(i, k) * Poly::variable(n, k);
        if (!s.substitute(nb, Rational(0)).is_zero()) {
            rep.boundary_radial_zero = false;
            rep.failures.push_back("sum_k H_{" + std::to_string(i + 1) +
                                   ",k} x_k != 0 on the boundary");
        }
    }

    rep.boundary_normal_deriv_zero = true;
    for (int i = 0; i < n; ++i) {
        for (int k = i; k < n; ++k) {
            if (!H.at(i, k).derivative(nb).substitute(nb, Rational(0)).is_zero()) {
                rep.boundary_normal_deriv_zero = false;
                rep.failures.push_back("d_n H_{" + std::to_string(i + 1) + "," +
                                       std::to_string(k + 1) + "} != 0 on the boundary");
            }
        }
    }

    rep.trace_zero = H.trace().is_zero();
    if (!rep.trace_zero) rep.failures.push_back("tr H != 0");
    return rep;
}

PolyTensor compute_A(const PolyTensor& H) {
    const int n = H.n();
    PolyTensor A(2, n);
    // double divergence sum_{m,p} d_m d_p H_mp
    Poly theta(n);
    for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) theta += H.at(m, p).derivative(m).derivative(p);
    const Rational inv_nm1 = Rational(1) / Rational(n - 1);
    for (int i = 0; i < n; ++i) {
        for (int k = i; k < n; ++k) {
            Poly a(n);
            for (int m = 0; m < n; ++m) {
                a += H.at(m, k).derivative(i).derivative(m);
                a += H.at(i, m).derivative(m).derivative(k);
                a -= H.at(i, k).derivative(m).derivative(m);
            }
            if (i == k) a -= theta * inv_nm1;
            A.at(i, k) = a;
            if (i != k) A.at(k, i) = a;
        }
    }
    return A;
}

static Poly z_entry(const PolyTensor& H, const PolyTensor& A, int i, int j, int k, int l) {
    const int n = H.n();
    Poly z = H.at(j, l).derivative(i).derivative(k);
    z -= H.at(j, k).derivative(i).derivative(l);
    z -= H.at(i, l).derivative(j).derivative(k);
    z += H.at(i, k).derivative(j).derivative(l);
    const Rational f = Rational(1) / Rational(n - 2);
    if (i == k) z += A.at(j, l) * f;
    if (i == l) z -= A.at(j, k) * f;
    if (j == k) z -= A.at(i, l) * f;
    if (j == l) z += A.at(i, k) * f;
    return z;
}

PolyTensor compute_Z(const PolyTensor& H, const PolyTensor& A) {
    const int n = H.n();
    PolyTensor Z(4, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    Poly z = z_entry(H, A, i, j, k, l);
                    if (z.is_zero()) continue;
                    Poly nz = -z;
                    Z.at(i, j, k, l) = z;
                    Z.at(j, i, k, l) = nz;
                    Z.at(i, j, l, k) = nz;
                    Z.at(j, i, l, k) = z;
                    Z.at(k, l, i, j) = z;
                    Z.at(l, k, i, j) = nz;
                    Z.at(k, l, j, i) = nz;
                    Z.at(l, k, j, i) = z;
                }
    return Z;
}

PolyTensor compute_Z(const PolyTensor& H) { return compute_Z(H, compute_A(H)); }

PolyTensor divergence_identity_residual(const PolyTensor& H) {
    const int n = H.n();
    PolyTensor A = compute_A(H);
    PolyTensor Z = compute_Z(H, A);
    PolyTensor R(3, n);
    const Rational f = Rational(n - 3) / Rational(n - 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Poly r(n);
                for (int l = 0; l < n; ++l) r += Z.at(i, j, k, l).derivative(l);
                r -= (A.at(j, k).derivative(i) - A.at(i, k).derivative(j)) * f;
                R.at(i, j, k) = r;
            }
    return R;
}

std::vector<ZSlot> z_canonical_slots(int n) {
    std::vector<ZSlot> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = i; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    bool diagonal = (i == k && j == l);
                    slots.push_back({i, j, k, l, diagonal ? 4 : 8});
                }
    return slots;
}

// ---------------------------------------------------------------------------
// Admissible space

AdmissibleSpace::AdmissibleSpace(int n, int d, int deg_min, int deg_max)
    : n_(n), d_(d), deg_min_(deg_min), deg_max_(deg_max) {
    if (n < 6) throw std::invalid_argument("AdmissibleSpace: n must be >= 6");
    if (d < 2 || d > (n - 2) / 2)
        throw std::invalid_argument("AdmissibleSpace: d out of range");
    if (deg_min < 2 || deg_max > d || deg_min > deg_max)
        throw std::invalid_argument("AdmissibleSpace: degree window out of range");
    const int nb = n - 1;

    // Free keys: tangential pairs, alpha_n != 1 (normal-derivative pin).
    for (int i = 0; i < nb; ++i)
        for (int k = i; k < nb; ++k)
            for (const auto& alpha : multiindices_up_to(n, deg_min_, deg_max_)) {
                if (alpha[nb] == 1) continue;
                keys_.push_back(CoeffKey{i, k, alpha});
            }
    std::map<CoeffKey, int> key_index;
    for (size_t t = 0; t < keys_.size(); ++t) key_index[keys_[t]] = static_cast<int>(t);

    std::map<uint32_t, std::vector<int>> members;
    for (size_t t = 0; t < keys_.size(); ++t)
        members[keys_[t].parity_mask()].push_back(static_cast<int>(t));

    // Constraint rows over global key indices.
    using SparseRow = std::vector<std::pair<int, Rational>>;
    std::vector<SparseRow> rows;

    // Trace: per monomial.
    for (const auto& alpha : multiindices_up_to(n, deg_min_, deg_max_)) {
        if (alpha[nb] == 1) continue;
        SparseRow row;
        for (int i = 0; i < nb; ++i) {
            auto it = key_index.find(CoeffKey{i, i, alpha});
            if (it != key_index.end()) row.push_back({it->second, Rational(1)});
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }

    // Boundary radial contraction: for each row index i and each boundary
    // monomial beta (degree s+1, no x_n), sum_k h_{ik, beta - e_k} = 0.
    for (int s = deg_min_; s <= deg_max_; ++s) {
        for (const auto& beta_t : multiindices_of_degree(nb, s + 1)) {
            MultiIndex beta(n);
            for (int t = 0; t < nb; ++t) beta.e[t] = beta_t.e[t];
            for (int i = 0; i < nb; ++i) {
                SparseRow row;
                for (int k = 0; k < nb; ++k) {
                    MultiIndex alpha;
                    if (!beta.minus(k, alpha)) continue;
                    CoeffKey key{std::min(i, k), std::max(i, k), alpha};
                    auto it = key_index.find(key);
                    if (it != key_index.end()) row.push_back({it->second, Rational(1)});
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }

    // Bucket rows by parity class and solve per class.
    std::map<uint32_t, std::vector<SparseRow>> class_rows;
    for (auto& row : rows) {
        uint32_t parity = keys_[row.front().first].parity_mask();
        for ([[maybe_unused]] auto& [idx, c] : row) assert(keys_[idx].parity_mask() == parity);
        class_rows[parity].push_back(std::move(row));
    }

    for (auto& [parity, idxs] : members) {
        Block blk;
        blk.parity = parity;
        blk.key_idx = idxs;
        std::map<int, int> local;
        for (size_t t = 0; t < idxs.size(); ++t) local[idxs[t]] = static_cast<int>(t);
        QMatrix m;
        auto it = class_rows.find(parity);
        if (it != class_rows.end()) {
            for (const auto& row : it->second) {
                QVector r(idxs.size(), Rational(0));
                for (const auto& [idx, c] : row) r[local.at(idx)] = c;
                m.push_back(std::move(r));
            }
        }
        blk.basis = m.empty() ? nullspace(QMatrix{QVector(idxs.size(), Rational(0))},
                                          static_cast<int>(idxs.size()))
                              : nullspace(m, static_cast<int>(idxs.size()));
        if (!blk.basis.empty()) blocks_.push_back(std::move(blk));
    }
}

int AdmissibleSpace::dimension() const {
    int dim = 0;
    for (const auto& b : blocks_) dim += static_cast<int>(b.basis.size());
    return dim;
}

CoeffSet AdmissibleSpace::to_coeffset(const Block& b, const QVector& coords) const {
    CoeffSet c(n_, d_);
    for (size_t t = 0; t < b.key_idx.size(); ++t) {
        if (coords[t] == 0) continue;
        const CoeffKey& key = keys_[b.key_idx[t]];
        c.add(key.i, key.k, key.alpha, coords[t]);
    }
    return c;
}

CoeffSet AdmissibleSpace::project(const CoeffSet& raw) const {
    if (raw.n() != n_) throw std::invalid_argument("project: dimension mismatch");
    CoeffSet out(n_, d_);
    std::map<CoeffKey, Rational> rem(raw.entries().begin(), raw.entries().end());
    for (const auto& blk : blocks_) {
        QVector v(blk.key_idx.size(), Rational(0));
        QVector w(blk.key_idx.size(), Rational(0));
        bool any = false;
        for (size_t t = 0; t < blk.key_idx.size(); ++t) {
            const CoeffKey& key = keys_[blk.key_idx[t]];
            w[t] = (key.i == key.k) ? 1 : 2;
            auto it = rem.find(key);
            if (it != rem.end()) {
                v[t] = it->second;
                any = any || (it->second != 0);
            }
        }
        if (!any) continue;
        QVector p = project_onto_span(blk.basis, w, v);
        for (size_t t = 0; t < blk.key_idx.size(); ++t) {
            if (p[t] == 0) continue;
            const CoeffKey& key = keys_[blk.key_idx[t]];
            out.add(key.i, key.k, key.alpha, p[t]);
        }
    }
    return out;
}

CoeffSet AdmissibleSpace::random_element(uint64_t seed, int raw_entries) const {
    Rng rng(seed);
    CoeffSet raw(n_, d_);
    for (int t = 0; t < raw_entries; ++t) {
        const CoeffKey& key = keys_[rng.uniform_int(0, static_cast<int>(keys_.size()) - 1)];
        int num = rng.uniform_int(-4, 4);
        int den = rng.uniform_int(1, 3);
        if (num == 0) num = 1;
        raw.add(key.i, key.k, key.alpha, rat(num, den));
    }
    return project(raw);
}

// ---------------------------------------------------------------------------
// Z kernel

namespace {

// Coefficient column of Z(unit key) over canonical slots, as (slot, monomial)
// -> value. Uses the full tensor machinery on the one-entry H; the Z map is
// linear in H so columns assemble the whole map.
std::map<std::pair<int, MultiIndex>, Rational> z_unit_column(int n, const CoeffKey& key,
                                                             const std::vector<ZSlot>& slots) {
    CoeffSet c(n, (n - 2) / 2);
    c.add(key.i, key.k, key.alpha, Rational(1));
    PolyTensor H = make_H(c);
    PolyTensor A = compute_A(H);
    std::map<std::pair<int, MultiIndex>, Rational> col;
    for (size_t s = 0; s < slots.size(); ++s) {
        Poly z = z_entry(H, A, slots[s].i, slots[s].j, slots[s].k, slots[s].l);
        for (const auto& [m, v] : z.terms()) col[{static_cast<int>(s), m}] = v;
    }
    return col;
}

}  // namespace

std::vector<CoeffSet> z_kernel(int n, int d) {
    if (n < 6 || d < 2 || d > (n - 2) / 2)
        throw std::invalid_argument("z_kernel: need n >= 6 and 2 <= d <= floor((n-2)/2)");
    AdmissibleSpace space(n, d);
    auto slots = z_canonical_slots(n);
    std::vector<CoeffSet> kernel;
    for (const auto& blk : space.blocks()) {
        // Equations: admissibility is already encoded in blk.basis; apply the
        // Z map to each basis vector and take the nullspace of the result.
        std::map<std::pair<int, MultiIndex>, int> eq_index;
        std::vector<std::map<std::pair<int, MultiIndex>, Rational>> images;
        for (const auto& bvec : blk.basis) {
            std::map<std::pair<int, MultiIndex>, Rational> img;
            for (size_t t = 0; t < blk.key_idx.size(); ++t) {
                if (bvec[t] == 0) continue;
                auto col = z_unit_column(n, space.keys()[blk.key_idx[t]], slots);
                for (const auto& [eq, v] : col) {
                    img[eq] += v * bvec[t];
                    eq_index.emplace(eq, 0);
                }
            }
            images.push_back(std::move(img));
        }
        int neq = 0;
        for (auto& [eq, idx] : eq_index) idx = neq++;
        QMatrix m(neq, QVector(blk.basis.size(), Rational(0)));
        for (size_t b = 0; b < images.size(); ++b)
            for (const auto& [eq, v] : images[b]) m[eq_index.at(eq)][b] = v;
        std::vector<QVector> null =
            neq == 0 ? nullspace(QMatrix{QVector(blk.basis.size(), Rational(0))},
                                 static_cast<int>(blk.basis.size()))
                     : nullspace(m, static_cast<int>(blk.basis.size()));
        for (const auto& coords : null) {
            QVector full(blk.key_idx.size(), Rational(0));
            for (size_t b = 0; b < coords.size(); ++b)
                for (size_t t = 0; t < full.size(); ++t) full[t] += coords[b] * blk.basis[b][t];
            kernel.push_back(space.to_coeffset(blk, full));
        }
    }
    return kernel;
}

int z_rank_on_span(const std::vector<CoeffSet>& vs) {
    if (vs.empty()) return 0;
    const int n = vs.front().n();
    auto slots = z_canonical_slots(n);
    std::map<std::pair<int, MultiIndex>, int> eq_index;
    std::vector<std::map<std::pair<int, MultiIndex>, Rational>> images;
    for (const auto& c : vs) {
        PolyTensor H = make_H(c);
        PolyTensor A = compute_A(H);
        std::map<std::pair<int, MultiIndex>, Rational> img;
        for (size_t s = 0; s < slots.size(); ++s) {
            Poly z = z_entry(H, A, slots[s].i, slots[s].j, slots[s].k, slots[s].l);
            for (const auto& [m, v] : z.terms()) {
                img[{static_cast<int>(s), m}] = v;
                eq_index.emplace(std::make_pair(static_cast<int>(s), m), 0);
            }
        }
        images.push_back(std::move(img));
    }
    int neq = 0;
    for (auto& [eq, idx] : eq_index) idx = neq++;
    QMatrix m(std::max(neq, 1), QVector(vs.size(), Rational(0)));
    for (size_t b = 0; b < images.size(); ++b)
        for (const auto& [eq, v] : images[b]) m[eq_index.at(eq)][b] = v;
    return static_cast<int>(vs.size()) -
           static_cast<int>(nullspace(m, static_cast<int>(vs.size())).size());
}

// ---------------------------------------------------------------------------
// Gram / K1

namespace {

struct MomentCacheExact {
    int n;
    Rational rho;
    Rational cn;
    std::map<MultiIndex, Rational> cache;
    const Rational& get(const MultiIndex& m) {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        return cache.emplace(m, ball_moment_exact(n, rho, cn, m)).first->second;
    }
};

Rational poly_ball_integral(const Poly& p, MomentCacheExact& mc) {
    Rational total(0);
    for (const auto& [m, c] : p.terms()) total += c * mc.get(m);
    return total;
}

struct ExactGram {
    std::vector<std::vector<Rational>> g;       // integral of |Z|^2 pairing (pi^{n/2} factored)
    std::vector<std::vector<Rational>> norm;    // coefficient normalisation pairing
    std::vector<int> block_offsets;
    int dim = 0;
};

ExactGram assemble_gram(const AdmissibleSpace& space, const Rational& r) {
    const int n = space.n();
    MomentCacheExact mc{n, r / 4, 3 * r / 2, {}};
    auto slots = z_canonical_slots(n);

    // Merge parity blocks that agree on tangential bits; the U_r integral is
    // invariant under tangential sign flips only, so the Gram couples classes
    // with equal tangential parity.
    const uint32_t tang_mask = (1u << (n - 1)) - 1;
    std::map<uint32_t, std::vector<std::pair<const AdmissibleSpace::Block*, int>>> groups;
    for (const auto& blk : space.blocks())
        for (size_t b = 0; b < blk.basis.size(); ++b)
            groups[blk.parity & tang_mask].push_back({&blk, static_cast<int>(b)});

    ExactGram out;
    for (auto& [parity, vecs] : groups) out.dim += static_cast<int>(vecs.size());
    out.g.assign(out.dim, std::vector<Rational>(out.dim, Rational(0)));
    out.norm.assign(out.dim, std::vector<Rational>(out.dim, Rational(0)));

    int offset = 0;
    for (auto& [parity, vecs] : groups) {
        out.block_offsets.push_back(offset);
        const int m = static_cast<int>(vecs.size());
        // Z polynomials of each basis vector over canonical slots.
        std::vector<std::vector<Poly>> zpolys(m);
        std::vector<CoeffSet> csets(m);
        for (int a = 0; a < m; ++a) {
            QVector coords = vecs[a].first->basis[vecs[a].second];
            csets[a] = space.to_coeffset(*vecs[a].first, coords);
            PolyTensor H = make_H(csets[a]);
            PolyTensor A = compute_A(H);
            zpolys[a].reserve(slots.size());
            for (const auto& s : slots) zpolys[a].push_back(z_entry(H, A, s.i, s.j, s.k, s.l));
        }
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                Rational gv(0);
                for (size_t s = 0; s < slots.size(); ++s) {
                    if (zpolys[a][s].is_zero() || zpolys[b][s].is_zero()) continue;
                    gv += Rational(slots[s].mult) *
                          poly_ball_integral(zpolys[a][s] * zpolys[b][s], mc);
                }
                out.g[offset + a][offset + b] = gv;
                out.g[offset + b][offset + a] = gv;
                Rational nv(0);
                for (const auto& [key, va] : csets[a].entries()) {
                    Rational vb = csets[b].get(key.i, key.k, key.alpha);
                    if (vb == 0) continue;
                    nv += (key.i == key.k ? 1 : 2) * va * vb;
                }
                out.norm[offset + a][offset + b] = nv;
                out.norm[offset + b][offset + a] = nv;
            }
        }
        offset += m;
    }
    return out;
}

}  // namespace

GramK1Result gram_K1(int n, int d) {
    if (n % 2 != 0)
        throw std::invalid_argument("gram_K1: exact assembly implemented for even n");
    AdmissibleSpace space(n, d);
    if (space.dimension() == 0)
        throw std::runtime_error("gram_K1: admissible space is zero-dimensional");
    ExactGram eg = assemble_gram(space, Rational(1));

    GramK1Result res;
    res.n = n;
    res.d = d;
    res.dimension = eg.dim;
    const double pi_half_n = std::pow(M_PI, n / 2);
    res.gram.assign(eg.dim, std::vector<double>(eg.dim, 0.0));
    for (int a = 0; a < eg.dim; ++a)
        for (int b = 0; b < eg.dim; ++b) res.gram[a][b] = eg.g[a][b].get_d() * pi_half_n;

    double lambda_min = std::numeric_limits<double>::infinity();
    eg.block_offsets.push_back(eg.dim);
    for (size_t blk = 0; blk + 1 < eg.block_offsets.size(); ++blk) {
        const int off = eg.block_offsets[blk];
        const int m = eg.block_offsets[blk + 1] - off;
        Eigen::MatrixXd G(m, m), N(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                G(a, b) = eg.g[off + a][off + b].get_d() * pi_half_n;
                N(a, b) = eg.norm[off + a][off + b].get_d();
            }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(G, N);
        lambda_min = std::min(lambda_min, es.eigenvalues().minCoeff());
    }
    res.lambda_min = lambda_min;
    res.k1_hat = 1.0 / lambda_min;
    return res;
}

bool gram_scaling_check(int n, int s, const Rational& r) {
    AdmissibleSpace space(n, (n - 2) / 2, s, s);
    if (space.dimension() == 0) return false;
    ExactGram g1 = assemble_gram(space, Rational(1));
    ExactGram gr = assemble_gram(space, r);
    Rational factor(1);
    const int power = 2 * s - 4 + n;
    for (int t = 0; t < power; ++t) factor *= r;
    for (int a = 0; a < g1.dim; ++a)
        for (int b = 0; b < g1.dim; ++b)
            if (gr.g[a][b] != factor * g1.g[a][b]) return false;
    return true;
}

}  // namespace ytf::sym
