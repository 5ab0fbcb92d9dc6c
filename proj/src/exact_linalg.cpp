#include "ytf/exact_linalg.hpp"

#include <stdexcept>

namespace ytf {

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<QVector> nullspace(const QMatrix& m, int cols) {
    QMatrix a = m;
    for (auto& row : a) row.resize(cols, Rational(0));
    std::vector<int> pivots = rref(a);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<QVector> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVector v(cols, Rational(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

QVector solve(QMatrix a, QVector b) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = rref(a);
    if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() >= n))
        throw std::runtime_error("exact solve: singular system");
    QVector x(n);
    for (int i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

QVector project_onto_span(const std::vector<QVector>& basis, const QVector& weights,
                          const QVector& v) {
    const int k = static_cast<int>(basis.size());
    const int m = static_cast<int>(v.size());
    if (k == 0) return QVector(m, Rational(0));
    QMatrix g(k, QVector(k, Rational(0)));
    QVector rhs(k, Rational(0));
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            Rational s(0);
            for (int t = 0; t < m; ++t) s += weights[t] * basis[a][t] * basis[b][t];
            g[a][b] = s;
            g[b][a] = s;
        }
        Rational s(0);
        for (int t = 0; t < m; ++t) s += weights[t] * basis[a][t] * v[t];
        rhs[a] = s;
    }
    QVector y = solve(std::move(g), std::move(rhs));
    QVector out(m, Rational(0));
    for (int a = 0; a < k; ++a)
        for (int t = 0; t < m; ++t) out[t] += y[a] * basis[a][t];
    return out;
}

}  // namespace ytf
