#include <cmath>
#include <stdexcept>

#include "ytf/symtensor.hpp"

namespace ytf::sym {

namespace {

// Centered moment over the unit ball, all exponents even (otherwise zero):
// integral of x^(2m) = pi^{n/2} * prod[(2m_i)!/(4^{m_i} m_i!)] / Gamma(n/2+|m|+1).
double centered_unit_moment(int n, const MultiIndex& beta) {
    double log_prod = 0;
    int total_m = 0;
    for (int i = 0; i < n; ++i) {
        if (beta[i] % 2 != 0) return 0.0;
        int m = beta[i] / 2;
        total_m += m;
        log_prod += std::lgamma(m + 0.5);
    }
    return std::exp(log_prod - std::lgamma(0.5 * n + total_m + 1));
}

Rational rational_pow(const Rational& base, int p) {
    Rational r(1);
    for (int t = 0; t < p; ++t) r *= base;
    return r;
}

Rational binomial(int a, int b) {
    Rational r(1);
    for (int t = 0; t < b; ++t) r *= Rational(a - t, t + 1);
    return r;
}

// prod (2m_i)!/(4^{m_i} m_i!) / (n/2 + |m|)!, even n only.
Rational centered_unit_moment_exact(int n, const MultiIndex& beta) {
    Rational q(1);
    int total_m = 0;
    for (int i = 0; i < n; ++i) {
        if (beta[i] % 2 != 0) return Rational(0);
        int m = beta[i] / 2;
        total_m += m;
        for (int t = 1; t <= 2 * m; ++t) q *= t;        // (2m)!
        for (int t = 1; t <= m; ++t) q /= Rational(4 * t);  // 4^m m!
    }
    for (int t = 1; t <= n / 2 + total_m; ++t) q /= t;
    return q;
}

}  // namespace

double ball_moment(double rho, const std::vector<double>& center, const MultiIndex& alpha) {
    const int n = alpha.dim();
    if (static_cast<int>(center.size()) != n)
        throw std::invalid_argument("ball_moment: center dimension mismatch");
    if (!(rho > 0)) throw std::invalid_argument("ball_moment: rho must be positive");
    // Binomial shift to the centered ball, coordinate by coordinate.
    double total = 0;
    std::vector<int> beta(n, 0);
    auto rec = [&](auto&& self, int pos, double coef) -> void {
        if (pos == n) {
            MultiIndex b(n);
            int deg = 0;
            for (int i = 0; i < n; ++i) {
                b.e[i] = static_cast<uint8_t>(beta[i]);
                deg += beta[i];
            }
            double m = centered_unit_moment(n, b);
            if (m != 0) total += coef * m * std::pow(rho, n + deg);
            return;
        }
        for (int bb = alpha[pos]; bb >= 0; --bb) {
            double c = coef;
            // C(alpha,b) * center^(alpha-b)
            for (int t = 0; t < bb; ++t) c *= double(alpha[pos] - t) / double(t + 1);
            c *= std::pow(center[pos], alpha[pos] - bb);
            if (c == 0 && center[pos] == 0 && bb < alpha[pos]) continue;
            beta[pos] = bb;
            self(self, pos + 1, c);
        }
        beta[pos] = 0;
    };
    rec(rec, 0, 1.0);
    return total;  // Gamma(1/2) factors already carry the pi^{n/2}
}

Rational ball_moment_exact(int n, const Rational& rho, const Rational& center_n,
                           const MultiIndex& alpha) {
    if (n % 2 != 0) throw std::invalid_argument("ball_moment_exact: requires even n");
    if (alpha.dim() != n) throw std::invalid_argument("ball_moment_exact: dimension mismatch");
    // Tangential center is the origin, so odd tangential exponents vanish.
    for (int i = 0; i < n - 1; ++i)
        if (alpha[i] % 2 != 0) return Rational(0);
    Rational total(0);
    const int an = alpha[n - 1];
    for (int b = an; b >= 0; --b) {
        if ((an - b) > 0 && center_n == 0) continue;
        MultiIndex beta = alpha;
        beta.e[n - 1] = static_cast<uint8_t>(b);
        Rational m = centered_unit_moment_exact(n, beta);
        if (m == 0) continue;
        total += binomial(an, b) * rational_pow(center_n, an - b) * m *
                 rational_pow(rho, n + beta.degree());
    }
    return total;
}

}  // namespace ytf::sym
