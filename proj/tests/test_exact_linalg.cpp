#include <doctest.h>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/float_linalg.hpp"
#include "feedcanon/rng.hpp"

using namespace feedcanon;

namespace {

MatX random_matx(Rng& rng, int rows, int cols, long lo = -5, long hi = 5) {
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rat(rng.uniform_int(lo, hi));
    return m;
}

MatX random_rational_matx(Rng& rng, int rows, int cols) {
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            {
                mpq_class re(rng.uniform_int(-9, 9), rng.uniform_int(1, 7));
                mpq_class im(rng.uniform_int(-9, 9), rng.uniform_int(1, 7));
                re.canonicalize();
                im.canonicalize();
                m(i, j) = Rat(re, im);
            }
    return m;
}

}  // namespace

TEST_CASE("exact rank basics") {
    CHECK(exact_rank(MatX::identity(3)) == 3);
    CHECK(exact_rank(MatX(2, 2)) == 0);
    CHECK(exact_rank(MatX{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
    CHECK(exact_rank(MatX(0, 5)) == 0);
    CHECK(exact_rank(MatX(5, 0)) == 0);
}

TEST_CASE("exact rank properties") {
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = static_cast<int>(rng.uniform_int(0, 8));
        const int c = static_cast<int>(rng.uniform_int(0, 8));
        const MatX m = trial % 3 == 0 ? random_rational_matx(rng, r, c) : random_matx(rng, r, c);
        const int rank = exact_rank(m);
        CHECK(rank == exact_rank(m.transpose()));
        CHECK(rank == exact_rank_serial(m));
        const auto basis = nullspace_basis(m);
        CHECK(static_cast<int>(basis.size()) == c - rank);
        for (const MatX& v : basis) CHECK((m * v).is_zero());
    }
}

TEST_CASE("nullspace basics") {
    CHECK(nullspace_basis(MatX::identity(2)).empty());
    CHECK(nullspace_basis(MatX(1, 2)).size() == 2);
    const auto basis = nullspace_basis(MatX{{Rat(1), Rat(1)}});
    REQUIRE(basis.size() == 1);
    // proportional to (1, -1)
    CHECK(basis[0](0, 0) == -basis[0](1, 0));
    CHECK(!basis[0](0, 0).is_zero());
}

TEST_CASE("numeric rank agrees with exact rank on integer matrices") {
    Rng rng(202);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = static_cast<int>(rng.uniform_int(1, 12));
        const int c = static_cast<int>(rng.uniform_int(1, 12));
        const MatX m = random_matx(rng, r, c);
        CHECK(numeric_rank(to_float(m), 1e-9) == exact_rank(m));
    }
}

TEST_CASE("numeric rank basics and errors") {
    CHECK(numeric_rank(MatF::identity(2), 1e-9) == 2);
    CHECK(numeric_rank(MatF{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(1e-14, 0)}}, 1e-9) == 1);
    CHECK(numeric_rank(MatF(3, 1), 1e-9) == 0);
    CHECK_THROWS_AS(numeric_rank(MatF::identity(2), 0.0), std::invalid_argument);
    MatF bad(1, 1);
    bad(0, 0) = Cplx(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_AS(numeric_rank(bad, 1e-9), std::invalid_argument);
}

TEST_CASE("solve and inverse") {
    Rng rng(303);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        MatX a = random_matx(rng, n, n);
        while (exact_rank(a) < n) a = random_matx(rng, n, n);
        const MatX b = random_matx(rng, n, 3);
        CHECK(a * solve(a, b) == b);
        CHECK(a * inverse(a) == MatX::identity(n));
    }
    CHECK_THROWS_AS(solve(MatX(2, 2), MatX::identity(2)), SingularMatrixError);
}

TEST_CASE("row_reduce invariants") {
    Rng rng(404);
    for (int trial = 0; trial < 15; ++trial) {
        const int r = static_cast<int>(rng.uniform_int(1, 6));
        const int c = static_cast<int>(rng.uniform_int(1, 6));
        const MatX m = random_matx(rng, r, c);
        const RowReduction rr = row_reduce(m);
        CHECK(rr.E * m == rr.rref);
        CHECK(rr.E * rr.Einv == MatX::identity(r));
        CHECK(rr.rank == exact_rank(m));
        for (int k = 0; k < rr.rank; ++k) CHECK(rr.rref(k, rr.pivot_cols[k]) == Rat(1));
    }
}
