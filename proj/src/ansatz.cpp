#include "ytf/ansatz.hpp"

#include <algorithm>
#include <stdexcept>

namespace ytf::gauge {

VectorPolyAnsatz build_ansatz(int n, int degree) {
    if (degree < 1) throw std::invalid_argument("build_ansatz: degree must be >= 1");
    if (degree > max_ansatz_degree(n))
        throw std::invalid_argument(
            "build_ansatz: degree " + std::to_string(degree) +
            " exceeds the weighted-integrability cap " + std::to_string(max_ansatz_degree(n)) +
            " for n = " + std::to_string(n) + "; lower the degree");
    VectorPolyAnsatz a;
    a.n = n;
    a.degree = degree;
    for (int deg = 0; deg <= degree; ++deg) {
        for (const auto& beta : multiindices_of_degree(n, deg)) {
            const bool n_even = beta[n - 1] % 2 == 0;
            if (n_even) {
                for (int comp = 0; comp < n - 1; ++comp) a.fields.push_back({comp, beta});
            } else {
                a.fields.push_back({n - 1, beta});
            }
        }
    }
    return a;
}

std::vector<DOpEntry> conformal_killing_op(int n, const BasisField& f) {
    // D(x^beta e_j)_{ik} = d_i x^beta delta_jk + d_k x^beta delta_ij
    //                      - (2/n) d_j x^beta delta_ik
    std::vector<DOpEntry> entries;
    Poly mono(n, f.beta, Rational(1));
    const int j = f.comp;
    for (int i = 0; i < n; ++i) {
        Poly di = mono.derivative(i);
        if (di.is_zero()) continue;
        // contributes to (i, j) and (j, i)
        bool found = false;
        for (auto& e : entries)
            if (e.i == i && e.k == j) {
                e.p += di;
                found = true;
            }
        if (!found) entries.push_back({i, j, di});
        if (i != j) {
            found = false;
            for (auto& e : entries)
                if (e.i == j && e.k == i) {
                    e.p += di;
                    found = true;
                }
            if (!found) entries.push_back({j, i, di});
        } else {
            for (auto& e : entries)
                if (e.i == i && e.k == j) e.p += di;
        }
    }
    Poly dj = mono.derivative(j) * rat(-2, n);
    if (!dj.is_zero()) {
        for (int i = 0; i < n; ++i) {
            bool found = false;
            for (auto& e : entries)
                if (e.i == i && e.k == i) {
                    e.p += dj;
                    found = true;
                }
            if (!found) entries.push_back({i, i, dj});
        }
    }
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [](const DOpEntry& e) { return e.p.is_zero(); }),
                  entries.end());
    return entries;
}

std::vector<Poly> assemble_field(const VectorPolyAnsatz& ansatz, const std::vector<double>& coef) {
    if (coef.size() != ansatz.fields.size())
        throw std::invalid_argument("assemble_field: coefficient count mismatch");
    std::vector<Poly> field(ansatz.n, Poly(ansatz.n));
    for (size_t a = 0; a < ansatz.fields.size(); ++a) {
        if (coef[a] == 0.0) continue;
        field[ansatz.fields[a].comp].add_term(ansatz.fields[a].beta, Rational(coef[a]));
    }
    return field;
}

}  // namespace ytf::gauge
