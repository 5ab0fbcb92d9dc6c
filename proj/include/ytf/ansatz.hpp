#pragma once

#include <vector>

#include "ytf/poly.hpp"

namespace ytf::gauge {

// One monomial vector field x^beta e_comp. Parity constraint: tangential
// components are even in x_n, the normal component odd, so V_n = 0 and
// d_n V_i = 0 hold on the boundary identically.
struct BasisField {
    int comp;
    MultiIndex beta;
};

struct VectorPolyAnsatz {
    int n = 0;
    int degree = 0;
    std::vector<BasisField> fields;

    // Parity of the field over the tangential variables; the weighted Gram
    // couples only fields of equal tangential parity.
    uint32_t tangential_parity(int idx) const {
        const auto& f = fields[idx];
        uint32_t m = f.beta.parity_mask();
        if (f.comp < n - 1) m ^= 1u << f.comp;
        return m & ((1u << (n - 1)) - 1);
    }
};

// Largest monomial degree with finite u_eps^{2n/(n-2)}-weighted norm of DV
// (finiteness needs 2*degree < n + 2).
inline int max_ansatz_degree(int n) { return (n + 1) / 2; }

VectorPolyAnsatz build_ansatz(int n, int degree);

// Rank-2 entries of the flat conformal Killing operator applied to a basis
// field, as sparse (i,k) -> Poly with few monomials each.
struct DOpEntry {
    int i, k;
    Poly p;
};
std::vector<DOpEntry> conformal_killing_op(int n, const BasisField& f);

// The full vector field from coefficients, as n polynomials.
std::vector<Poly> assemble_field(const VectorPolyAnsatz& ansatz, const std::vector<double>& coef);

}  // namespace ytf::gauge
