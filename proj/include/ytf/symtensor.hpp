#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ytf/coeffset.hpp"
#include "ytf/exact_linalg.hpp"
#include "ytf/poly.hpp"

namespace ytf::sym {

// Dense tensor of exact polynomials, rank 2..4. Sizes here are small
// (n <= 10, so at most 10^4 entries); density keeps the index logic trivial.
class PolyTensor {
  public:
    PolyTensor() = default;
    PolyTensor(int rank, int n);

    int rank() const { return rank_; }
    int n() const { return n_; }

    Poly& at(int i, int k);
    const Poly& at(int i, int k) const;
    Poly& at(int i, int j, int k);
    const Poly& at(int i, int j, int k) const;
    Poly& at(int i, int j, int k, int l);
    const Poly& at(int i, int j, int k, int l) const;

    bool is_zero() const;
    bool is_symmetric_rank2() const;
    Poly trace() const;  // rank-2 only

  private:
    int rank_ = 0;
    int n_ = 0;
    std::vector<Poly> entries_;
};

PolyTensor make_H(const CoeffSet& c);

struct AdmissibilityReport {
    bool normal_rows_zero = false;        // H_{in} identically zero
    bool boundary_radial_zero = false;    // sum_k H_ik x_k == 0 at x_n = 0
    bool boundary_normal_deriv_zero = false;  // d_n H_ik == 0 at x_n = 0
    bool trace_zero = false;
    std::vector<std::string> failures;

    bool all_pass() const {
        return normal_rows_zero && boundary_radial_zero && boundary_normal_deriv_zero &&
               trace_zero;
    }
    std::string to_json() const;
};

AdmissibilityReport check_admissible(const PolyTensor& H);

PolyTensor compute_A(const PolyTensor& H);
PolyTensor compute_Z(const PolyTensor& H);
PolyTensor compute_Z(const PolyTensor& H, const PolyTensor& A);

// sum_l d_l Z_ijkl - (n-3)/(n-2) (d_i A_jk - d_j A_ik); identically zero.
PolyTensor divergence_identity_residual(const PolyTensor& H);

// Representatives (i<j, k<l, (i,j) <= (k,l)) with orbit multiplicity, so that
// sum over all n^4 slots of Z_ijkl^2 = sum over reps of mult * Z^2.
struct ZSlot {
    int i, j, k, l;
    int mult;
};
std::vector<ZSlot> z_canonical_slots(int n);

// Linear span of admissible coefficient sets, organised by parity class.
// Constraints: entries with k = n or alpha_n = 1 are pinned to zero, the
// trace vanishes per monomial and the boundary radial contraction vanishes.
class AdmissibleSpace {
  public:
    AdmissibleSpace(int n, int d) : AdmissibleSpace(n, d, 2, d) {}
    AdmissibleSpace(int n, int d, int deg_min, int deg_max);

    struct Block {
        uint32_t parity = 0;
        std::vector<int> key_idx;            // indices into keys()
        std::vector<QVector> basis;          // over the block's key positions
    };

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<CoeffKey>& keys() const { return keys_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    int dimension() const;

    CoeffSet to_coeffset(const Block& b, const QVector& coords) const;
    // Exact orthogonal projection (entry weights 1 / 2 as in norm2) of an
    // arbitrary CoeffSet onto the admissible span.
    CoeffSet project(const CoeffSet& raw) const;
    CoeffSet random_element(uint64_t seed, int raw_entries = 24) const;

  private:
    int n_, d_, deg_min_, deg_max_;
    std::vector<CoeffKey> keys_;
    std::vector<Block> blocks_;
};

// Exact nullspace of the map CoeffSet -> Z over the admissible space.
// Contract (Z-kernel triviality): empty.
std::vector<CoeffSet> z_kernel(int n, int d);

// How many admissible directions a set of coefficient constraints kills:
// rank of the Z map restricted to span(vs). Used for the E0 injectivity check.
int z_rank_on_span(const std::vector<CoeffSet>& vs);

// Moment of x^alpha over the ball of radius rho centered at c (volume measure).
double ball_moment(double rho, const std::vector<double>& center, const MultiIndex& alpha);
// Exact version for even n with center on the x_n axis: returns q such that
// the moment equals q * pi^{n/2}.
Rational ball_moment_exact(int n, const Rational& rho, const Rational& center_n,
                           const MultiIndex& alpha);

struct GramK1Result {
    int n = 0, d = 0;
    int dimension = 0;
    double lambda_min = 0;
    double k1_hat = 0;
    std::vector<std::vector<double>> gram;  // assembled over the admissible basis
};

// Gram matrix of h -> integral over U_1 of |Z|^2 on the admissible space,
// assembled exactly from ball moments; lambda_min w.r.t. the coefficient
// normalisation norm2. U_1 is the ball of radius 1/4 centered at (0,..,0,3/2).
GramK1Result gram_K1(int n, int d);

// Exact scaling law on the homogeneous degree-s subspace: the U_r Gram equals
// r^{2s-4+n} times the U_1 Gram, entry by entry, as exact rationals.
bool gram_scaling_check(int n, int s, const Rational& r);

}  // namespace ytf::sym
