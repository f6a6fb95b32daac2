#include <random>

#include "dgcat/linalg.hpp"
#include "doctest.h"

using namespace dgcat;

namespace {

// Independent elimination oracle for small dense systems: plain Gauss-Jordan
// written without the library's pivoting conventions.
int oracle_rank(std::vector<QVec> rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols; ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!is_zero(rows[r][c])) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(rows[rank], rows[piv]);
        Q inv = 1 / rows[rank][c];
        for (Q& x : rows[rank])
            x *= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || is_zero(rows[r][c]))
                continue;
            Q f = rows[r][c];
            for (int j = 0; j < cols; ++j)
                rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

SparseMatrix mat(std::vector<QVec> rows, int cols) {
    return SparseMatrix::from_dense_rows(rows, cols);
}

}  // namespace

TEST_CASE("kernel of the zero and identity matrices") {
    CHECK(kernel_basis(SparseMatrix::zero(2, 2)).dim() == 2);
    CHECK(kernel_basis(SparseMatrix::identity(3)).dim() == 0);
}

TEST_CASE("kernel of a rank-one matrix matches the hand-reduced oracle") {
    // [[1,1],[2,2]]: x + y = 0, kernel spanned by (1, -1).
    SparseMatrix m = mat({{q(1), q(1)}, {q(2), q(2)}}, 2);
    Subspace k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    CHECK(k.basis[0] == QVec{q(1), q(-1)});
    CHECK(oracle_rank(m.dense_rows(), 2) == 1);
}

TEST_CASE("image bases") {
    CHECK(image_basis(SparseMatrix::zero(3, 2)).dim() == 0);
    CHECK(image_basis(SparseMatrix::identity(4)).dim() == 4);
    Subspace im = image_basis(mat({{q(1), q(1)}, {q(2), q(2)}}, 2));
    REQUIRE(im.dim() == 1);
    CHECK(im.basis[0] == QVec{q(1), q(2)});
}

TEST_CASE("solve_affine basics") {
    SUBCASE("identity") {
        auto s = solve_affine(SparseMatrix::identity(3), {q(5), q(-1), q(7, 2)});
        REQUIRE(s.has_value());
        CHECK(s->particular == QVec{q(5), q(-1), q(7, 2)});
        CHECK(s->homogeneous.dim() == 0);
    }
    SUBCASE("zero matrix, nonzero rhs") {
        CHECK_FALSE(solve_affine(SparseMatrix::zero(2, 2), {q(1), q(0)}).has_value());
    }
    SUBCASE("scalar inverse") {
        auto s = solve_affine(mat({{q(2)}}, 1), {q(1)});
        REQUIRE(s.has_value());
        CHECK(s->particular == QVec{q(1, 2)});
    }
}

TEST_CASE("complement_basis") {
    Subspace full = Subspace::from_generators({{q(1), q(0)}, {q(0), q(1)}}, 2);
    SUBCASE("sub == inside gives empty complement") {
        CHECK(complement_basis(full, full).dim() == 0);
    }
    SUBCASE("zero sub gives the whole basis") {
        Subspace zero = Subspace::from_generators({}, 2);
        CHECK(complement_basis(zero, full).basis == full.basis);
    }
    SUBCASE("span(1,1) inside Q^2") {
        Subspace diag = Subspace::from_generators({{q(1), q(1)}}, 2);
        Subspace c = complement_basis(diag, full);
        REQUIRE(c.dim() == 1);
        CHECK(c.basis[0] == QVec{q(1), q(0)});
        // Direct sum check by rank.
        std::vector<QVec> gens = diag.basis;
        gens.push_back(c.basis[0]);
        CHECK(rref(gens, 2).rank() == 2);
    }
    SUBCASE("NotContained") {
        Subspace diag = Subspace::from_generators({{q(1), q(1)}}, 2);
        Subspace other = Subspace::from_generators({{q(1), q(0)}}, 2);
        CHECK_THROWS_AS(complement_basis(other, diag), Error);
    }
}

TEST_CASE("rank-nullity and solve round-trip on random small matrices") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim_dist(1, 7);
    std::uniform_int_distribution<int> val_dist(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = dim_dist(rng), cols = dim_dist(rng);
        std::vector<QVec> dense(rows, zero_vec(cols));
        for (auto& row : dense)
            for (auto& x : row)
                x = q(val_dist(rng));
        SparseMatrix m = mat(dense, cols);
        Subspace ker = kernel_basis(m);
        CHECK(rank(m) + ker.dim() == cols);
        CHECK(oracle_rank(dense, cols) == rank(m));
        // Round-trip: m * particular == b whenever solvable.
        QVec x0 = zero_vec(cols);
        for (auto& x : x0)
            x = q(val_dist(rng));
        QVec b = m.apply(x0);
        auto s = solve_affine(m, b);
        REQUIRE(s.has_value());
        CHECK(m.apply(s->particular) == b);
        for (const QVec& h : s->homogeneous.basis)
            CHECK(is_zero(m.apply(h)));
    }
}

TEST_CASE("echelon form is idempotent") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> val_dist(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QVec> rows(3, zero_vec(5));
        for (auto& row : rows)
            for (auto& x : row)
                x = q(val_dist(rng));
        Subspace s = Subspace::from_generators(rows, 5);
        Subspace again = Subspace::from_generators(s.basis, 5);
        CHECK(s == again);
    }
}

TEST_CASE("dense and sparse elimination agree above the dense limit") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> val_dist(-2, 2);
    // 70 columns forces the sparse path; embed a small block and compare
    // against the same block solved densely.
    std::vector<QVec> small(5, zero_vec(9));
    for (auto& row : small)
        for (auto& x : row)
            x = q(val_dist(rng));
    std::vector<QVec> big(5, zero_vec(70));
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 9; ++c)
            big[r][c] = small[r][c];
    Echelon esmall = rref(small, 9);
    Echelon ebig = rref(big, 70);
    REQUIRE(esmall.rank() == ebig.rank());
    for (std::size_t r = 0; r < esmall.rows.size(); ++r)
        for (int c = 0; c < 9; ++c)
            CHECK(esmall.rows[r][c] == ebig.rows[r][c]);
}
