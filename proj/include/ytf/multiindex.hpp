#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ytf {

inline constexpr int kMaxDim = 12;

// Exponent vector of a monomial x^alpha in n variables, n <= kMaxDim.
struct MultiIndex {
    std::array<uint8_t, kMaxDim> e{};
    uint8_t n = 0;

    MultiIndex() = default;
    explicit MultiIndex(int dim) : n(static_cast<uint8_t>(dim)) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("MultiIndex: bad dimension");
    }
    MultiIndex(int dim, std::initializer_list<int> exps) : MultiIndex(dim) {
        int i = 0;
        for (int v : exps) e[i++] = static_cast<uint8_t>(v);
    }
    static MultiIndex from_vector(const std::vector<int>& v) {
        MultiIndex m(static_cast<int>(v.size()));
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0) throw std::invalid_argument("MultiIndex: negative exponent");
            m.e[i] = static_cast<uint8_t>(v[i]);
        }
        return m;
    }

    int dim() const { return n; }
    int operator[](int i) const { return e[i]; }
    int degree() const { return std::accumulate(e.begin(), e.begin() + n, 0); }

    MultiIndex plus(int i, int amount = 1) const {
        MultiIndex m = *this;
        m.e[i] = static_cast<uint8_t>(m.e[i] + amount);
        return m;
    }
    // Returns false if the exponent would go negative.
    bool minus(int i, MultiIndex& out) const {
        if (e[i] == 0) return false;
        out = *this;
        out.e[i] -= 1;
        return true;
    }
    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex m = *this;
        for (int i = 0; i < n; ++i) m.e[i] = static_cast<uint8_t>(m.e[i] + o.e[i]);
        return m;
    }

    // Parity bitmask of the exponents, lowest bit = variable 1.
    uint32_t parity_mask() const {
        uint32_t mask = 0;
        for (int i = 0; i < n; ++i) mask |= static_cast<uint32_t>(e[i] & 1) << i;
        return mask;
    }

    auto operator<=>(const MultiIndex& o) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < n; ++i) s += std::to_string(int(e[i])) + (i + 1 < n ? "," : "");
        return s + ")";
    }
};

// All multi-indices of the given exact degree, lexicographic order.
std::vector<MultiIndex> multiindices_of_degree(int n, int degree);
// Degrees dmin..dmax inclusive.
std::vector<MultiIndex> multiindices_up_to(int n, int dmin, int dmax);

}  // namespace ytf
