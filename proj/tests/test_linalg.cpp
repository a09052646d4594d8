#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pwlfix/linalg.hpp"
#include "pwlfix/verify.hpp"

using namespace pwlfix;

namespace {

Matrix<Rational> rank_deficient(SplitMix64& rng, int n) {
    // Random matrix whose last row is a combination of the others; rank is
    // then at most n-1, and generically exactly n-1.
    Matrix<Rational> m = oracle::random_matrix(rng, n, n);
    for (int j = 0; j < n; ++j) {
        Rational acc(0);
        for (int i = 0; i + 1 < n; ++i) acc += Rational(1 + i) * m(i, j);
        m(n - 1, j) = acc;
    }
    return m;
}

}  // namespace

TEST_CASE("det fixtures") {
    CHECK(det(Matrix<Rational>{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}}) == Rational(-2));
    CHECK(det(Matrix<Rational>::identity(4)) == Rational(1));
    CHECK(det(Matrix<Rational>{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}}) ==
          Rational(1, 60));
    const Matrix<Rational> singular{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(det(singular).is_zero());
}

TEST_CASE("det matches cofactor expansion on random matrices") {
    SplitMix64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const Matrix<Rational> m = oracle::random_matrix(rng, n, n);
        CHECK(det(m) == oracle::det(m));
    }
}

TEST_CASE("det under a row swap") {
    SplitMix64 rng(12);
    const Matrix<Rational> m = oracle::random_matrix(rng, 4, 4);
    Matrix<Rational> swapped = m;
    for (int j = 0; j < 4; ++j) {
        swapped(0, j) = m(1, j);
        swapped(1, j) = m(0, j);
    }
    CHECK(det(swapped) == -det(m));
}

TEST_CASE("float det on a fixture") {
    const Matrix<double> m{{2.0, 0.0}, {0.0, 3.0}};
    CHECK(det(m) == doctest::Approx(6.0));
    const Matrix<double> rot{{0.0, -1.0}, {1.0, 0.0}};
    CHECK(det(rot) == doctest::Approx(1.0));
}

TEST_CASE("solve_unique recovers the planted solution") {
    SplitMix64 rng(13);
    int done = 0;
    while (done < 50) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const Matrix<Rational> m = oracle::random_matrix(rng, n, n);
        if (det(m).is_zero()) continue;
        const Vec<Rational> x = oracle::random_vector(rng, n);
        const Vec<Rational> rhs = m * x;
        CHECK(solve_unique(m, rhs) == x);
        ++done;
    }
}

TEST_CASE("solve_unique rejects singular systems") {
    const Matrix<Rational> m{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK_THROWS_AS(solve_unique(m, Vec<Rational>{Rational(1), Rational(1)}), SingularMatrixError);
    CHECK_THROWS_AS(solve_unique(Matrix<Rational>(2, 3), Vec<Rational>(3, Rational(0))), DimensionError);
}

TEST_CASE("nullspace_1d on planted rank n-1 matrices") {
    SplitMix64 rng(14);
    int done = 0;
    while (done < 50) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const Matrix<Rational> m = rank_deficient(rng, n);
        if (rank(m) != n - 1) continue;
        const Vec<Rational> v = nullspace_1d(m);
        CHECK_FALSE(vec_is_zero(v));
        CHECK(vec_is_zero(m * v));
        // Scale convention: first non-zero entry is 1.
        std::size_t pivot = 0;
        while (pivot < v.size() && v[pivot].is_zero()) ++pivot;
        CHECK(v[pivot] == Rational(1));
        ++done;
    }
}

TEST_CASE("nullspace_1d error modes") {
    CHECK_THROWS_AS(nullspace_1d(Matrix<Rational>::identity(3)), NoNullspaceError);
    CHECK_THROWS_AS(nullspace_1d(Matrix<Rational>(3, 3)), NullityTooLargeError);  // zero matrix, nullity 3
}

TEST_CASE("rank fixtures and random agreement with the minor oracle") {
    CHECK(rank(Matrix<Rational>::identity(5)) == 5);
    CHECK(rank(Matrix<Rational>(3, 3)) == 0);
    // Outer product has rank 1.
    Matrix<Rational> outer(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) outer(i, j) = Rational(i + 1) * Rational(j + 1, 2);
    CHECK(rank(outer) == 1);

    SplitMix64 rng(15);
    for (int t = 0; t < 40; ++t) {
        const int rows = 2 + static_cast<int>(rng.below(3));
        const int cols = 2 + static_cast<int>(rng.below(3));
        const Matrix<Rational> m = oracle::random_matrix(rng, rows, cols, 3, 3);
        CHECK(rank(m) == oracle::rank(m));
    }
    for (int t = 0; t < 20; ++t) {
        const Matrix<Rational> m = rank_deficient(rng, 3);
        CHECK(rank(m) == oracle::rank(m));
    }
}

TEST_CASE("solve_general finds a solution or proves inconsistency") {
    // Consistent square singular system.
    const Matrix<Rational> m{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}};
    const auto sol = solve_general(m, Vec<Rational>{Rational(3), Rational(0)});
    REQUIRE(sol.has_value());
    CHECK(*sol == Vec<Rational>{Rational(3), Rational(0)});  // free variable pinned to zero

    // Inconsistent: x1 = 0 and x1 = 1.
    const Matrix<Rational> bad{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
    CHECK_FALSE(solve_general(bad, Vec<Rational>{Rational(0), Rational(1)}).has_value());

    // Non-square, consistent: via a planted solution.
    SplitMix64 rng(16);
    for (int t = 0; t < 30; ++t) {
        const int rows = 2 + static_cast<int>(rng.below(3));
        const int cols = 2 + static_cast<int>(rng.below(3));
        const Matrix<Rational> a = oracle::random_matrix(rng, rows, cols, 4, 4);
        const Vec<Rational> x = oracle::random_vector(rng, cols, 4, 4);
        const Vec<Rational> rhs = a * x;
        const auto s = solve_general(a, rhs);
        REQUIRE(s.has_value());
        CHECK(a * *s == rhs);
    }
}

TEST_CASE("kernel_basis spans the kernel") {
    SplitMix64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const int rows = 2 + static_cast<int>(rng.below(3));
        const int cols = 2 + static_cast<int>(rng.below(3));
        const Matrix<Rational> m = oracle::random_matrix(rng, rows, cols, 3, 3);
        const std::vector<Vec<Rational>> basis = kernel_basis(m);
        CHECK(static_cast<int>(basis.size()) == cols - rank(m));
        for (const Vec<Rational>& v : basis) {
            CHECK(vec_is_zero(m * v));
            std::size_t pivot = 0;
            while (pivot < v.size() && v[pivot].is_zero()) ++pivot;
            REQUIRE(pivot < v.size());
            CHECK(v[pivot] == Rational(1));
        }
    }
    CHECK(kernel_basis(Matrix<Rational>::identity(3)).empty());
}

TEST_CASE("adjugate identity adj(M) M = det(M) I") {
    SplitMix64 rng(18);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Matrix<Rational> m = oracle::random_matrix(rng, n, n);
        const Matrix<Rational> adj = adjugate(m);
        const Rational d = det(m);
        Matrix<Rational> expected(n, n);
        for (int i = 0; i < n; ++i) expected(i, i) = d;
        CHECK(adj * m == expected);
        CHECK(m * adj == expected);  // the identity holds on both sides
    }
    // Singular matrices satisfy it too (with det = 0).
    const Matrix<Rational> s{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(adjugate(s) * s == Matrix<Rational>(2, 2));
}

TEST_CASE("adjugate_row1 is the first row of the adjugate") {
    SplitMix64 rng(19);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(rng.below(4));
        const Matrix<Rational> m = oracle::random_matrix(rng, n, n);
        const Matrix<Rational> adj = adjugate(m);
        const Vec<Rational> row = adjugate_row1(m);
        CHECK(row == adj.row(0));
    }
    CHECK_THROWS_AS(adjugate_row1(Matrix<Rational>(2, 3)), DimensionError);
}

TEST_CASE("float solve_unique on a well-conditioned fixture") {
    const Matrix<double> m{{4.0, 1.0}, {1.0, 3.0}};
    const Vec<double> x = solve_unique(m, Vec<double>{9.0, 7.0});
    CHECK(x[0] == doctest::Approx(20.0 / 11.0));
    CHECK(x[1] == doctest::Approx(19.0 / 11.0));
    CHECK_THROWS_AS(solve_unique(Matrix<double>(2, 2), Vec<double>{1.0, 1.0}), SingularMatrixError);
}
