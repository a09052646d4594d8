#pragma once

#include <initializer_list>
#include <vector>

#include "pwlfix/errors.hpp"
#include "pwlfix/scalar.hpp"

namespace pwlfix {

template <ScalarType S>
using Vec = std::vector<S>;

/// Dense row-major matrix over one scalar backend. Desk scale: n stays small.
template <ScalarType S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
        e_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), scalar_traits<S>::zero());
    }
    Matrix(std::initializer_list<std::initializer_list<S>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        e_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_) throw DimensionError("ragged matrix literal");
            e_.insert(e_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    S& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    /// Copy with row di and column dj removed.
    Matrix minor_removed(int di, int dj) const {
        Matrix m(rows_ - 1, cols_ - 1);
        int r = 0;
        for (int i = 0; i < rows_; ++i) {
            if (i == di) continue;
            int c = 0;
            for (int j = 0; j < cols_; ++j) {
                if (j == dj) continue;
                m(r, c) = (*this)(i, j);
                ++c;
            }
            ++r;
        }
        return m;
    }

    Vec<S> row(int i) const {
        Vec<S> v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    Vec<S> col(int j) const {
        Vec<S> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "matrix addition");
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "matrix subtraction");
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
        return m;
    }
    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (sign_of(aik) == 0) continue;
                for (int j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend Vec<S> operator*(const Matrix& a, const Vec<S>& x) {
        if (a.cols_ != static_cast<int>(x.size())) throw DimensionError("matrix-vector shape mismatch");
        Vec<S> y(a.rows_, scalar_traits<S>::zero());
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError(std::string(what) + ": shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<S> e_;
};

template <ScalarType S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
    S acc = scalar_traits<S>::zero();
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <ScalarType S>
Vec<S> vec_add(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw DimensionError("vector addition length mismatch");
    Vec<S> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <ScalarType S>
Vec<S> vec_sub(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw DimensionError("vector subtraction length mismatch");
    Vec<S> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <ScalarType S>
Vec<S> vec_neg(const Vec<S>& a) {
    Vec<S> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

template <ScalarType S>
Vec<S> vec_scale(const S& t, const Vec<S>& a) {
    Vec<S> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

template <ScalarType S>
bool vec_is_zero(const Vec<S>& a) {
    for (const S& v : a)
        if (sign_of(v) != 0) return false;
    return true;
}

template <ScalarType S>
S inf_norm(const Vec<S>& a) {
    S m = scalar_traits<S>::zero();
    for (const S& v : a) {
        S av = abs_value(v);
        if (av > m) m = av;
    }
    return m;
}

}  // namespace pwlfix
