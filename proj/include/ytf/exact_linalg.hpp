#pragma once

#include <vector>

#include "ytf/rational.hpp"

namespace ytf {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major, rows may be empty-free

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<int> rref(QMatrix& m);

// Basis of the right nullspace of a (rows x cols) matrix.
std::vector<QVector> nullspace(const QMatrix& m, int cols);

// Solves A x = b for square nonsingular A; throws if singular.
QVector solve(QMatrix a, QVector b);

// Orthogonal projection of v onto span(basis) w.r.t. the diagonal inner
// product with positive weights w: solves (B^T W B) y = B^T W v exactly.
QVector project_onto_span(const std::vector<QVector>& basis, const QVector& weights,
                          const QVector& v);

}  // namespace ytf
