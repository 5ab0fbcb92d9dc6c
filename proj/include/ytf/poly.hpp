#pragma once

#include <map>
#include <vector>

#include "ytf/multiindex.hpp"
#include "ytf/rational.hpp"

namespace ytf {

// Multivariate polynomial over Q with exact coefficients. Zero coefficients
// are never stored; the empty term map is the zero polynomial.
class Poly {
  public:
    Poly() = default;
    explicit Poly(int dim) : n_(dim) {}
    Poly(int dim, const MultiIndex& m, const Rational& c) : n_(dim) { add_term(m, c); }

    static Poly constant(int dim, const Rational& c) {
        return Poly(dim, MultiIndex(dim), c);
    }
    static Poly variable(int dim, int i) {
        return Poly(dim, MultiIndex(dim).plus(i), Rational(1));
    }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    size_t term_count() const { return terms_.size(); }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    void add_term(const MultiIndex& m, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    Poly derivative(int i) const;
    // Substitutes x_i = value (exact).
    Poly substitute(int i, const Rational& value) const;

    Rational eval(const std::vector<Rational>& x) const;
    double eval_double(const double* x) const;

    std::string to_string() const;

  private:
    int n_ = 0;
    std::map<MultiIndex, Rational> terms_;
};

// Flattened read-only form for fast repeated double evaluation.
struct CompiledPoly {
    int n = 0;
    std::vector<std::array<uint8_t, kMaxDim>> exps;
    std::vector<double> coef;

    CompiledPoly() = default;
    explicit CompiledPoly(const Poly& p);
    double eval(const double* x) const;
    bool empty() const { return coef.empty(); }
};

}  // namespace ytf
