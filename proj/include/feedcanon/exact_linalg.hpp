#pragma once

#include <stdexcept>
#include <vector>

#include "feedcanon/matrix.hpp"

namespace feedcanon {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rank over the Gaussian rationals, computed by fraction-free (Bareiss)
/// elimination on a denominator-cleared Gaussian-integer copy. Exact, no
/// tolerance. Row updates run under OpenMP for large matrices.
int exact_rank(const MatX& m);

/// Serial reference implementation of exact_rank, kept for testing and
/// benchmarking against the parallel kernel.
int exact_rank_serial(const MatX& m);

/// Basis of the right kernel as column vectors; size cols - rank. Each
/// returned vector is verified to satisfy m * v = 0 exactly.
std::vector<MatX> nullspace_basis(const MatX& m);

/// Solves a x = b for square nonsingular a; throws SingularMatrixError.
MatX solve(const MatX& a, const MatX& b);

MatX inverse(const MatX& a);

bool is_invertible(const MatX& a);

/// Gauss-Jordan reduction with accumulated row transform: E * m = rref,
/// E * Einv = I. pivot_cols lists the pivot column of each of the first
/// `rank` rows.
struct RowReduction {
    MatX rref;
    MatX E;
    MatX Einv;
    std::vector<int> pivot_cols;
    int rank = 0;
};
RowReduction row_reduce(const MatX& m);

}  // namespace feedcanon
