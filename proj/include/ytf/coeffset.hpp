#pragma once

#include <map>
#include <string>
#include <vector>

#include "ytf/poly.hpp"

namespace ytf {

// Key of one stored coefficient h_{ik,alpha}. Indices are 0-based internally
// (the normal direction is index n-1); i <= k is enforced at insertion.
struct CoeffKey {
    int i = 0;
    int k = 0;
    MultiIndex alpha;

    auto operator<=>(const CoeffKey&) const = default;

    // (alpha + e_i + e_k) mod 2 as a bitmask. Every admissibility constraint
    // and every coefficient equation of the Z map is homogeneous in this
    // grading, so linear solves split into independent blocks.
    uint32_t parity_mask() const {
        uint32_t m = alpha.parity_mask();
        m ^= 1u << i;
        m ^= 1u << k;
        return m;
    }
};

class CoeffSet {
  public:
    CoeffSet() = default;
    CoeffSet(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::map<CoeffKey, Rational>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Adds to h_{ik,alpha} (and by symmetry h_{ki,alpha}); rejects entries
    // with |alpha| outside [2, d] naming the offending key.
    void add(int i, int k, const MultiIndex& alpha, const Rational& value);
    Rational get(int i, int k, const MultiIndex& alpha) const;

    // Full double-sum normalisation sum_{i,k,alpha} h_{ik,alpha}^2 (off-diagonal
    // entries counted twice, as in the paper's sums over all index pairs).
    Rational norm2() const;
    double norm1_double() const;  // sum of |h_{ik,alpha}| with the same double counting
    int max_active_degree() const;
    int min_active_degree() const;

    CoeffSet scaled(const Rational& t) const;

    std::string to_json() const;
    static CoeffSet from_json(const std::string& text);

    // The standard quadratic example: block sum B(1,2)+B(3,4)-B(1,3)-B(2,4),
    // where B(a,b) adds x_b^2 to H_aa, x_a^2 to H_bb and -x_a x_b to H_ab.
    static CoeffSet standard_quadratic(int n);

  private:
    int n_ = 0;
    int d_ = 0;
    std::map<CoeffKey, Rational> entries_;
};

}  // namespace ytf
