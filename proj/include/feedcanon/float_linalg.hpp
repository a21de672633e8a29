#pragma once

#include <vector>

#include "feedcanon/matrix.hpp"

namespace feedcanon {

/// Count of singular values above tol * sigma_max; 0 for zero or empty
/// matrices. Rejects non-finite entries and tol <= 0.
int numeric_rank(const MatF& m, double tol);

/// Singular values in descending order.
std::vector<double> singular_values(const MatF& m);

/// Full SVD m = U * diag(sigma) * V^H with square unitary U, V.
struct Svd {
    MatF U;
    std::vector<double> sigma;
    MatF V;
};
Svd svd(const MatF& m);

/// Solves a x = b for square a; throws SingularMatrixError when a is
/// numerically singular.
MatF solve(const MatF& a, const MatF& b);

MatF inverse(const MatF& a);

bool is_invertible(const MatF& a);

/// Eigenvalues and right eigenvectors (columns) of a square matrix.
struct Eig {
    std::vector<Cplx> values;
    MatF vectors;
};
Eig eigendecompose(const MatF& m);

bool all_finite(const MatF& m);

}  // namespace feedcanon
