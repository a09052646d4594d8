#pragma once

// Independent reference implementations the tests check the library against.
// Deliberately naive: cofactor expansion and minor-based rank are O(n!) but
// transparent, and every matrix here is tiny.

#include "pwlfix/matrix.hpp"
#include "pwlfix/pwlmap.hpp"
#include "pwlfix/verify.hpp"

namespace oracle {

using pwlfix::Matrix;
using pwlfix::Rational;
using pwlfix::Vec;

/// Determinant by Laplace expansion along the first row.
inline Rational det(const Matrix<Rational>& m) {
    const int n = m.rows();
    if (n == 1) return m(0, 0);
    Rational acc(0);
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        const Rational sub = det(m.minor_removed(0, j));
        acc += (j % 2 == 0 ? m(0, j) : -m(0, j)) * sub;
    }
    return acc;
}

/// Rank as the largest k with a non-vanishing k x k minor.
inline int rank(const Matrix<Rational>& m) {
    const int rows = m.rows(), cols = m.cols();
    const int kmax = rows < cols ? rows : cols;
    for (int k = kmax; k >= 1; --k) {
        // Enumerate row subsets of size k, then column subsets.
        std::vector<int> ri(k), ci(k);
        auto next_subset = [](std::vector<int>& idx, int limit) {
            int i = static_cast<int>(idx.size()) - 1;
            while (i >= 0 && idx[i] == limit - static_cast<int>(idx.size()) + i) --i;
            if (i < 0) return false;
            ++idx[i];
            for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
            return true;
        };
        for (int i = 0; i < k; ++i) ri[i] = i;
        do {
            for (int i = 0; i < k; ++i) ci[i] = i;
            do {
                Matrix<Rational> sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub(i, j) = m(ri[i], ci[j]);
                if (!det(sub).is_zero()) return k;
            } while (next_subset(ci, cols));
        } while (next_subset(ri, rows));
    }
    return 0;
}

/// f(x) = A x + b|x1| + c written out with an explicit branch, no shared code
/// with the library's eval.
inline Vec<Rational> eval(const Matrix<Rational>& a, const Vec<Rational>& b, const Vec<Rational>& c,
                          const Vec<Rational>& x) {
    const int n = a.rows();
    Vec<Rational> y(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
        const Rational a1 = x[0].sign() < 0 ? -x[0] : x[0];
        y[i] += b[i] * a1 + c[i];
    }
    return y;
}

/// Random matrix with entries num/den, |num| <= nb, 1 <= den <= db.
inline Matrix<Rational> random_matrix(pwlfix::SplitMix64& rng, int rows, int cols, int nb = 10, int db = 10) {
    Matrix<Rational> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const long num = static_cast<long>(rng.below(2 * nb + 1)) - nb;
            const long den = 1 + static_cast<long>(rng.below(db));
            m(i, j) = Rational(num, den);
        }
    return m;
}

inline Vec<Rational> random_vector(pwlfix::SplitMix64& rng, int n, int nb = 10, int db = 10) {
    Vec<Rational> v(n);
    for (int i = 0; i < n; ++i) {
        const long num = static_cast<long>(rng.below(2 * nb + 1)) - nb;
        const long den = 1 + static_cast<long>(rng.below(db));
        v[i] = Rational(num, den);
    }
    return v;
}

}  // namespace oracle
