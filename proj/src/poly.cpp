#include "ytf/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace ytf {

std::vector<MultiIndex> multiindices_of_degree(int n, int degree) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    // Recursive enumeration in lexicographic order.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            cur.e[pos] = static_cast<uint8_t>(remaining);
            out.push_back(cur);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            cur.e[pos] = static_cast<uint8_t>(k);
            self(self, pos + 1, remaining - k);
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::vector<MultiIndex> multiindices_up_to(int n, int dmin, int dmax) {
    std::vector<MultiIndex> out;
    for (int d = dmin; d <= dmax; ++d) {
        auto v = multiindices_of_degree(n, d);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

int Poly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Poly::add_term(const MultiIndex& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(n_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma + mb, ca * cb);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(n_);
    if (c == 0) return r;
    for (const auto& [m, q] : terms_) r.terms_.emplace(m, q * c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(n_);
    for (const auto& [m, q] : terms_) r.terms_.emplace(m, -q);
    return r;
}

Poly Poly::derivative(int i) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        MultiIndex dm;
        if (m.minus(i, dm)) r.add_term(dm, c * m[i]);
    }
    return r;
}

Poly Poly::substitute(int i, const Rational& value) const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) {
        Rational factor = c;
        int p = m[i];
        if (p > 0) {
            if (value == 0) continue;
            Rational v = value;
            for (int k = 1; k < p; ++k) v *= value;
            factor *= v;
        }
        MultiIndex mm = m;
        mm.e[i] = 0;
        r.add_term(mm, factor);
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m[i]; ++k) t *= x[i];
        total += t;
    }
    return total;
}

double Poly::eval_double(const double* x) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m[i]; ++k) t *= x[i];
        total += t;
    }
    return total;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += rat_to_string(c) + "*x^" + m.to_string();
    }
    return s;
}

CompiledPoly::CompiledPoly(const Poly& p) : n(p.dim()) {
    exps.reserve(p.terms().size());
    coef.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        exps.push_back(m.e);
        coef.push_back(c.get_d());
    }
}

double CompiledPoly::eval(const double* x) const {
    double total = 0.0;
    for (size_t t = 0; t < coef.size(); ++t) {
        double v = coef[t];
        const auto& e = exps[t];
        for (int i = 0; i < n; ++i) {
            switch (e[i]) {
                case 0: break;
                case 1: v *= x[i]; break;
                case 2: v *= x[i] * x[i]; break;
                default: v *= std::pow(x[i], e[i]);
            }
        }
        total += v;
    }
    return total;
}

}  // namespace ytf
