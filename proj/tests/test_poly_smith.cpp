#include <doctest.h>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/rng.hpp"
#include "feedcanon/smith.hpp"

using namespace feedcanon;

namespace {

Poly poly_from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

MatX random_matx(Rng& rng, int rows, int cols, long lo = -3, long hi = 3) {
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rat(rng.uniform_int(lo, hi));
    return m;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    const Poly a = poly_from_ints({1, 2, 1});  // (x+1)^2
    const Poly b = poly_from_ints({1, 1});     // x+1
    CHECK(a / b == b);
    CHECK((a % b).is_zero());
    CHECK(Poly::gcd(a, b) == b);
    CHECK(Poly::lcm(a, b) == a);
    CHECK(Poly::gcd(poly_from_ints({-1, 0, 1}), poly_from_ints({1, 1})) == b);  // x^2-1, x+1

    Poly q, r;
    Poly::divmod(poly_from_ints({1, 0, 0, 1}), poly_from_ints({2, 1}), q, r);
    CHECK(q * poly_from_ints({2, 1}) + r == poly_from_ints({1, 0, 0, 1}));
    CHECK(r.degree() < 1);
}

TEST_CASE("smith form of characteristic matrices") {
    // xI - J_2(0) has invariant factors 1, x^2.
    const auto f1 = invariant_factors(make_jordan<Rat>(2, Rat(0)));
    REQUIRE(f1.size() == 1);
    CHECK(f1[0] == poly_from_ints({0, 0, 1}));

    // xI - I_2 = diag(x-1, x-1).
    const auto f2 = invariant_factors(MatX::identity(2));
    REQUIRE(f2.size() == 2);
    CHECK(f2[0] == poly_from_ints({-1, 1}));
    CHECK(f2[1] == poly_from_ints({-1, 1}));

    CHECK(invariant_factors(MatX(0, 0)).empty());
}

TEST_CASE("smith multipliers are unimodular and consistent") {
    Rng rng(505);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 5));
        const PolyMat a = char_matrix(random_matx(rng, n, n));
        const PolySmith s = smith_form(a);
        // U * Uinv = I and V * Vinv = I
        const PolyMat uu = poly_mul(s.U, s.Uinv);
        const PolyMat vv = poly_mul(s.V, s.Vinv);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(uu[i][j] == (i == j ? Poly::constant(Rat(1)) : Poly()));
                CHECK(vv[i][j] == (i == j ? Poly::constant(Rat(1)) : Poly()));
            }
        // U * A * V equals the diagonal
        const PolyMat d = poly_mul(poly_mul(s.U, a), s.V);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(d[i][j] == (i == j ? s.diag[i] : Poly()));
        // degrees of the invariant factors sum to n
        int degsum = 0;
        for (const Poly& p : s.diag) degsum += p.degree();
        CHECK(degsum == n);
    }
}

TEST_CASE("companion blocks realize their invariant factors") {
    const Poly f = poly_from_ints({3, -2, 0, 1});  // x^3 - 2x + 3
    const auto factors = invariant_factors(companion(f));
    REQUIRE(factors.size() == 1);
    CHECK(factors[0] == f);

    // divisibility chain survives a direct sum
    const Poly g = poly_from_ints({-1, 1});
    const auto chain = invariant_factors(block_diag(companion(g), companion(f * g)));
    REQUIRE(chain.size() == 2);
    CHECK((chain[1] % chain[0]).is_zero());
}

TEST_CASE("similarity transform to companion form") {
    Rng rng(606);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        const MatX a = random_matx(rng, n, n);
        const auto factors = invariant_factors(a);
        const MatX t = similarity_to_companion_form(a, factors);
        CHECK(solve(t, a * t) == companion_direct_sum(factors));
    }
    // a matrix that is far from cyclic: scalar 2*I_3
    const MatX scal = Rat(2) * MatX::identity(3);
    const auto factors = invariant_factors(scal);
    REQUIRE(factors.size() == 3);
    const MatX t = similarity_to_companion_form(scal, factors);
    CHECK(solve(t, scal * t) == companion_direct_sum(factors));
}
