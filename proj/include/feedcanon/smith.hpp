#pragma once

#include <vector>

#include "feedcanon/matrix.hpp"
#include "feedcanon/poly.hpp"

namespace feedcanon {

using PolyMat = std::vector<std::vector<Poly>>;

PolyMat poly_identity(int n);
PolyMat poly_mul(const PolyMat& a, const PolyMat& b);
/// xI - a for square a.
PolyMat char_matrix(const MatX& a);

/// Smith normal form over Q(i)[x] with unimodular multipliers:
/// U * input * V = diag(d_0, ..., d_{k-1}, 0, ...), each d monic or zero,
/// d_i | d_{i+1}. Inverses are tracked alongside, so U * Uinv = I and
/// V * Vinv = I hold exactly.
struct PolySmith {
    std::vector<Poly> diag;
    PolyMat U, Uinv, V, Vinv;
};
PolySmith smith_form(const PolyMat& a);

/// Nonconstant invariant factors of xI - a, monic, in divisibility order.
std::vector<Poly> invariant_factors(const MatX& a);

/// Companion matrix of a monic polynomial of degree >= 1 (subdiagonal
/// ones, negated coefficients in the last column).
MatX companion(const Poly& f);

/// Block-diagonal direct sum of companion blocks, in the given order.
MatX companion_direct_sum(const std::vector<Poly>& factors);

/// Exact T with T^{-1} a T = companion_direct_sum(invariant_factors(a)).
/// Extracted from the polynomial equivalence of the characteristic
/// matrices; the result is verified before returning.
MatX similarity_to_companion_form(const MatX& a, const std::vector<Poly>& factors);

}  // namespace feedcanon
