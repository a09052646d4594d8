#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "pwlfix/linalg.hpp"

namespace pwlfix {

/// Quantities derived from the two linear pieces of a map:
/// M_minus = I - A + b e1^T governs the x1 <= 0 piece, M_plus = I - A - b e1^T
/// the x1 >= 0 piece, and u^T is the first row of adj(I - A).
template <ScalarType S>
struct PieceData {
    Matrix<S> m_minus;
    Matrix<S> m_plus;
    S det_minus;
    S det_plus;
    Vec<S> u;
    S s;  // u . c
    bool p_full_rank = false;
};

/// The map f(x) = A x + b|x1| + c on R^n, n >= 2. Immutable; piece data is
/// computed once at construction.
template <ScalarType S>
class PwlMap {
public:
    PwlMap(Matrix<S> a, Vec<S> b, Vec<S> c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (!a_.square()) throw DimensionError("map matrix A must be square");
        n_ = a_.rows();
        if (n_ < 2) throw DimensionError("map dimension must be at least 2, got " + std::to_string(n_));
        if (static_cast<int>(b_.size()) != n_ || static_cast<int>(c_.size()) != n_)
            throw DimensionError("map vectors b, c must have length n");
        compute_pieces();
    }

    int dim() const { return n_; }
    const Matrix<S>& a() const { return a_; }
    const Vec<S>& b() const { return b_; }
    const Vec<S>& c() const { return c_; }
    const PieceData<S>& pieces() const { return pieces_; }

    /// A - b e1^T, the matrix of the x1 <= 0 piece.
    Matrix<S> left_matrix() const {
        Matrix<S> m = a_;
        for (int i = 0; i < n_; ++i) m(i, 0) -= b_[i];
        return m;
    }
    /// A + b e1^T, the matrix of the x1 >= 0 piece.
    Matrix<S> right_matrix() const {
        Matrix<S> m = a_;
        for (int i = 0; i < n_; ++i) m(i, 0) += b_[i];
        return m;
    }

private:
    void compute_pieces() {
        Matrix<S> i_minus_a = Matrix<S>::identity(n_) - a_;
        pieces_.m_minus = i_minus_a;
        pieces_.m_plus = i_minus_a;
        for (int i = 0; i < n_; ++i) {
            pieces_.m_minus(i, 0) += b_[i];
            pieces_.m_plus(i, 0) -= b_[i];
        }
        pieces_.det_minus = det(pieces_.m_minus);
        pieces_.det_plus = det(pieces_.m_plus);
        pieces_.u = adjugate_row1(i_minus_a);
        pieces_.s = dot(pieces_.u, c_);

        if constexpr (scalar_traits<S>::is_exact) {
            pieces_.p_full_rank = !vec_is_zero(pieces_.u);
            // u != 0 and full rank of P (columns 2..n of I - A) are equivalent;
            // check both routes agree.
            Matrix<S> p(n_, n_ - 1);
            for (int i = 0; i < n_; ++i)
                for (int j = 1; j < n_; ++j) p(i, j - 1) = i_minus_a(i, j);
            if ((rank(p) == n_ - 1) != pieces_.p_full_rank)
                throw InternalError("piece data: u != 0 disagrees with rank of P");
        } else {
            double scale = 1.0;
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) scale = std::max(scale, std::fabs(i_minus_a(i, j)));
            const double tol = float_epsilon() * std::pow(scale, n_ - 1);
            bool nonzero = false;
            for (const S& e : pieces_.u) nonzero = nonzero || std::fabs(e) > tol;
            pieces_.p_full_rank = nonzero;
        }
    }

    Matrix<S> a_;
    Vec<S> b_;
    Vec<S> c_;
    int n_ = 0;
    PieceData<S> pieces_;
};

template <ScalarType S>
const PieceData<S>& piece_data(const PwlMap<S>& map) {
    return map.pieces();
}

/// f(x) = A x + b|x1| + c.
template <ScalarType S>
Vec<S> eval(const PwlMap<S>& map, const Vec<S>& x) {
    if (static_cast<int>(x.size()) != map.dim()) throw DimensionError("eval: point dimension mismatch");
    Vec<S> y = map.a() * x;
    const S a1 = abs_value(x[0]);
    for (int i = 0; i < map.dim(); ++i) y[i] += map.b()[i] * a1 + map.c()[i];
    return y;
}

/// f^k(x0); f^0 is the identity.
template <ScalarType S>
Vec<S> iterate(const PwlMap<S>& map, Vec<S> x, long k) {
    if (k < 0) throw ContractError("iterate: k must be non-negative");
    if (static_cast<int>(x.size()) != map.dim()) throw DimensionError("iterate: point dimension mismatch");
    for (long i = 0; i < k; ++i) x = eval(map, x);
    return x;
}

/// Normal form of a continuous two-piece map given as x1<=0 piece (A_L, c_L)
/// and x1>=0 piece (A_R, c_R). Continuity forces c_L = c_R and equality of
/// columns 2..n.
template <ScalarType S>
PwlMap<S> from_two_pieces(const Matrix<S>& a_left, const Matrix<S>& a_right, const Vec<S>& c_left,
                          const Vec<S>& c_right) {
    if (!a_left.square() || !a_right.square() || a_left.rows() != a_right.rows())
        throw DimensionError("two-piece input: matrices must be square with equal dimension");
    const int n = a_left.rows();
    if (static_cast<int>(c_left.size()) != n || static_cast<int>(c_right.size()) != n)
        throw DimensionError("two-piece input: constant vectors must have length n");
    for (int i = 0; i < n; ++i)
        if (!scalar_close(c_left[i], c_right[i]))
            throw NotContinuousError("two-piece input is not continuous: constant vectors differ");
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (!scalar_close(a_left(i, j), a_right(i, j)))
                throw NotContinuousError("two-piece input is not continuous: column " + std::to_string(j + 1) +
                                         " differs");
    const S half = scalar_traits<S>::one() / (scalar_traits<S>::one() + scalar_traits<S>::one());
    Matrix<S> a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = half * (a_left(i, j) + a_right(i, j));
    Vec<S> b(n);
    for (int i = 0; i < n; ++i) b[i] = half * (a_right(i, 0) - a_left(i, 0));
    return PwlMap<S>(std::move(a), std::move(b), c_left);
}

/// Conjugation by x -> -x: returns (A, -b, -c). x* is fixed for f iff -x* is
/// fixed for the result; u is unchanged and s flips sign.
template <ScalarType S>
PwlMap<S> negate_conjugate(const PwlMap<S>& map) {
    return PwlMap<S>(map.a(), vec_neg(map.b()), vec_neg(map.c()));
}

/// Exact conversion of a float map to the rational backend.
inline PwlMap<Rational> to_rational(const PwlMap<double>& map) {
    const int n = map.dim();
    Matrix<Rational> a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Rational::from_double(map.a()(i, j));
    Vec<Rational> b(n), c(n);
    for (int i = 0; i < n; ++i) {
        b[i] = Rational::from_double(map.b()[i]);
        c[i] = Rational::from_double(map.c()[i]);
    }
    return PwlMap<Rational>(std::move(a), std::move(b), std::move(c));
}

}  // namespace pwlfix
