#pragma once

#include <optional>
#include <vector>

#include "pwlfix/matrix.hpp"

namespace pwlfix {

/// Determinant. Exact fraction-free Bareiss elimination on the rational
/// backend; LU with partial pivoting on the float backend.
template <ScalarType S>
S det(const Matrix<S>& m);

template <>
Rational det<Rational>(const Matrix<Rational>& m);
template <>
double det<double>(const Matrix<double>& m);

/// Unique solution of Mx = rhs. Throws SingularMatrixError when det(M) = 0
/// (exact on rationals; |det| <= eps * product of row max-norms on floats).
template <ScalarType S>
Vec<S> solve_unique(const Matrix<S>& m, const Vec<S>& rhs);

template <>
Vec<Rational> solve_unique<Rational>(const Matrix<Rational>& m, const Vec<Rational>& rhs);
template <>
Vec<double> solve_unique<double>(const Matrix<double>& m, const Vec<double>& rhs);

/// Non-zero v with Mv = 0 for a matrix of rank exactly n-1.
/// Scale convention: first non-zero entry 1 (rational); unit Euclidean norm
/// with first non-zero entry positive (float).
template <ScalarType S>
Vec<S> nullspace_1d(const Matrix<S>& m);

template <>
Vec<Rational> nullspace_1d<Rational>(const Matrix<Rational>& m);
template <>
Vec<double> nullspace_1d<double>(const Matrix<double>& m);

/// Exact rank via Gauss-Jordan elimination over the rationals.
int rank(const Matrix<Rational>& m);

/// One solution of Mx = rhs with all free variables set to zero, or nullopt
/// when the system is inconsistent. M need not be square.
std::optional<Vec<Rational>> solve_general(const Matrix<Rational>& m, const Vec<Rational>& rhs);

/// Basis of the kernel of M, each vector normalized to first non-zero entry 1.
std::vector<Vec<Rational>> kernel_basis(const Matrix<Rational>& m);

/// adj(M): (i,j)-entry (-1)^{i+j} times the minor that deletes row j, column i.
/// Satisfies adj(M) * M = det(M) * I, exactly on the rational backend.
template <ScalarType S>
Matrix<S> adjugate(const Matrix<S>& m) {
    if (!m.square()) throw DimensionError("adjugate of non-square matrix");
    const int n = m.rows();
    if (n < 2) throw DimensionError("adjugate requires n >= 2");
    Matrix<S> adj(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            S minor = det(m.minor_removed(j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    return adj;
}

/// First row of adj(M) without forming the full adjugate (n minors instead of n^2).
template <ScalarType S>
Vec<S> adjugate_row1(const Matrix<S>& m) {
    if (!m.square()) throw DimensionError("adjugate of non-square matrix");
    const int n = m.rows();
    if (n < 2) throw DimensionError("adjugate requires n >= 2");
    Vec<S> row(n);
    for (int j = 0; j < n; ++j) {
        S minor = det(m.minor_removed(j, 0));
        row[j] = (j % 2 == 0) ? minor : -minor;
    }
    return row;
}

}  // namespace pwlfix
