#include "pwlfix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pwlfix {

namespace {

void require_square(const Matrix<Rational>& m) {
    if (!m.square()) throw DimensionError("expected a square matrix");
}

// Integer grid with one scale factor per row: row i of the output equals
// factor[i] times row i of m, and all entries are integers.
struct IntRows {
    std::vector<mpz_class> grid;  // rows x cols, row-major
    std::vector<mpz_class> factor;
};

IntRows clear_denominators(const Matrix<Rational>& m, const Vec<Rational>* rhs) {
    const int rows = m.rows();
    const int cols = m.cols() + (rhs ? 1 : 0);
    IntRows out;
    out.grid.resize(static_cast<size_t>(rows) * cols);
    out.factor.resize(rows);
    for (int i = 0; i < rows; ++i) {
        mpz_class f(1);
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(f.get_mpz_t(), f.get_mpz_t(), m(i, j).den().get_mpz_t());
        if (rhs) mpz_lcm(f.get_mpz_t(), f.get_mpz_t(), (*rhs)[i].den().get_mpz_t());
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& e = m(i, j);
            out.grid[static_cast<size_t>(i) * cols + j] = e.num() * mpz_class(f / e.den());
        }
        if (rhs) {
            const Rational& e = (*rhs)[i];
            out.grid[static_cast<size_t>(i) * cols + m.cols()] = e.num() * mpz_class(f / e.den());
        }
        out.factor[i] = f;
    }
    return out;
}

// Fraction-free Bareiss forward elimination on an n x width integer grid
// (width >= n). Pivots are the first non-zero entry in each column; a column
// with no pivot makes the matrix singular. Returns false in that case.
// After success, grid is upper triangular on its first n columns and the
// determinant of the original first-n-columns block is sign * grid(n-1,n-1).
bool bareiss_forward(std::vector<mpz_class>& grid, int n, int width, int& sign) {
    sign = 1;
    mpz_class prev(1);
    auto at = [&](int i, int j) -> mpz_class& { return grid[static_cast<size_t>(i) * width + j]; };
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r) {
            if (sgn(at(r, k)) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return false;
        if (pivot != k) {
            for (int j = 0; j < width; ++j) std::swap(at(k, j), at(pivot, j));
            sign = -sign;
        }
        if (k + 1 == n) break;
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < width; ++j) {
                mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return true;
}

// Gauss-Jordan over the rationals; returns pivot columns. m is reduced in place.
std::vector<int> rref(Matrix<Rational>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i) {
            if (!m(i, c).is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        const Rational inv = m(r, c).reciprocal();
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<Vec<Rational>> kernel_from_rref(const Matrix<Rational>& red, const std::vector<int>& pivots) {
    const int n = red.cols();
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec<Rational>> basis;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        Vec<Rational> v(n, Rational(0));
        v[fc] = Rational(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -red(static_cast<int>(k), fc);
        // First non-zero entry is the free slot itself or an earlier pivot slot.
        int first = -1;
        for (int i = 0; i < n; ++i) {
            if (!v[i].is_zero()) {
                first = i;
                break;
            }
        }
        if (first >= 0 && v[first] != Rational(1)) {
            const Rational inv = v[first].reciprocal();
            for (auto& e : v) e *= inv;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

double lu_decompose(Matrix<double>& a, std::vector<int>& perm) {
    const int n = a.rows();
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double det_val = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::fabs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (pivot != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(perm[k], perm[pivot]);
            det_val = -det_val;
        }
        const double d = a(k, k);
        if (d == 0.0) return 0.0;
        det_val *= d;
        for (int i = k + 1; i < n; ++i) {
            const double f = a(i, k) / d;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det_val;
}

double row_maxnorm_product(const Matrix<double>& m) {
    double prod = 1.0;
    for (int i = 0; i < m.rows(); ++i) {
        double mx = 0.0;
        for (int j = 0; j < m.cols(); ++j) mx = std::max(mx, std::fabs(m(i, j)));
        prod *= std::max(mx, 1.0);
    }
    return prod;
}

}  // namespace

template <>
Rational det<Rational>(const Matrix<Rational>& m) {
    require_square(m);
    const int n = m.rows();
    if (n == 0) return Rational(1);
    IntRows ir = clear_denominators(m, nullptr);
    int sign = 1;
    if (!bareiss_forward(ir.grid, n, n, sign)) return Rational(0);
    mpz_class d = ir.grid[static_cast<size_t>(n - 1) * n + (n - 1)];
    if (sign < 0) d = -d;
    mpz_class scale(1);
    for (const auto& f : ir.factor) scale *= f;
    return Rational(d, scale);
}

template <>
double det<double>(const Matrix<double>& m) {
    if (!m.square()) throw DimensionError("expected a square matrix");
    if (m.rows() == 0) return 1.0;
    Matrix<double> a = m;
    std::vector<int> perm;
    return lu_decompose(a, perm);
}

template <>
Vec<Rational> solve_unique<Rational>(const Matrix<Rational>& m, const Vec<Rational>& rhs) {
    require_square(m);
    const int n = m.rows();
    if (static_cast<int>(rhs.size()) != n) throw DimensionError("solve: rhs length mismatch");
    IntRows ir = clear_denominators(m, &rhs);
    const int width = n + 1;
    int sign = 1;
    if (!bareiss_forward(ir.grid, n, width, sign)) throw SingularMatrixError("solve: matrix is singular");
    auto at = [&](int i, int j) -> const mpz_class& { return ir.grid[static_cast<size_t>(i) * width + j]; };
    if (sgn(at(n - 1, n - 1)) == 0) throw SingularMatrixError("solve: matrix is singular");
    Vec<Rational> x(n, Rational(0));
    for (int i = n - 1; i >= 0; --i) {
        Rational acc(at(i, n), mpz_class(1));
        for (int j = i + 1; j < n; ++j) acc -= Rational(at(i, j), mpz_class(1)) * x[j];
        x[i] = acc / Rational(at(i, i), mpz_class(1));
    }
    return x;
}

template <>
Vec<double> solve_unique<double>(const Matrix<double>& m, const Vec<double>& rhs) {
    if (!m.square()) throw DimensionError("expected a square matrix");
    const int n = m.rows();
    if (static_cast<int>(rhs.size()) != n) throw DimensionError("solve: rhs length mismatch");
    Matrix<double> a = m;
    std::vector<int> perm;
    const double d = lu_decompose(a, perm);
    if (std::fabs(d) <= float_epsilon() * row_maxnorm_product(m))
        throw SingularMatrixError("solve: matrix is numerically singular");
    Vec<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = rhs[perm[i]];
        for (int j = 0; j < i; ++j) acc -= a(i, j) * x[j];
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= a(i, j) * x[j];
        x[i] /= a(i, i);
    }
    return x;
}

template <>
Vec<Rational> nullspace_1d<Rational>(const Matrix<Rational>& m) {
    require_square(m);
    const int n = m.rows();
    Matrix<Rational> red = m;
    const auto pivots = rref(red);
    const int r = static_cast<int>(pivots.size());
    if (r == n) throw NoNullspaceError("nullspace_1d: matrix has full rank");
    if (r < n - 1) throw NullityTooLargeError("nullspace_1d: nullity exceeds one");
    return kernel_from_rref(red, pivots).front();
}

template <>
Vec<double> nullspace_1d<double>(const Matrix<double>& m) {
    if (!m.square()) throw DimensionError("expected a square matrix");
    const int n = m.rows();
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(m(i, j)));
    const double tol = float_epsilon() * std::max(scale, 1.0);

    Matrix<double> a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int p = r;
        double best = std::fabs(a(r, c));
        for (int i = r + 1; i < n; ++i) {
            if (std::fabs(a(i, c)) > best) {
                best = std::fabs(a(i, c));
                p = i;
            }
        }
        if (best <= tol) continue;
        if (p != r)
            for (int j = 0; j < n; ++j) std::swap(a(r, j), a(p, j));
        const double inv = 1.0 / a(r, c);
        for (int j = c; j < n; ++j) a(r, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == r) continue;
            const double f = a(i, c);
            if (f == 0.0) continue;
            for (int j = c; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (r == n) throw NoNullspaceError("nullspace_1d: matrix has full rank");
    if (r < n - 1) throw NullityTooLargeError("nullspace_1d: nullity exceeds one");

    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    int fc = 0;
    while (is_pivot[fc]) ++fc;
    Vec<double> v(n, 0.0);
    v[fc] = 1.0;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(static_cast<int>(k), fc);

    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    for (double& e : v) e /= norm;
    for (double e : v) {
        if (std::fabs(e) > tol) {
            if (e < 0.0)
                for (double& w : v) w = -w;
            break;
        }
    }
    return v;
}

int rank(const Matrix<Rational>& m) {
    Matrix<Rational> red = m;
    return static_cast<int>(rref(red).size());
}

std::optional<Vec<Rational>> solve_general(const Matrix<Rational>& m, const Vec<Rational>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows()) throw DimensionError("solve_general: rhs length mismatch");
    Matrix<Rational> aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // pivot in the rhs column
    Vec<Rational> x(m.cols(), Rational(0));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(static_cast<int>(k), m.cols());
    return x;
}

std::vector<Vec<Rational>> kernel_basis(const Matrix<Rational>& m) {
    Matrix<Rational> red = m;
    const auto pivots = rref(red);
    return kernel_from_rref(red, pivots);
}

}  // namespace pwlfix
