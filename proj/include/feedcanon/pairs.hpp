#pragma once

#include <vector>

#include "feedcanon/matrix.hpp"
#include "feedcanon/poly.hpp"

namespace feedcanon {

/// m x (n, m) pair: input matrix B (m x n) and system matrix A (m x m).
template <class T>
struct MatrixPairT {
    Matrix<T> B;
    Matrix<T> A;

    MatrixPairT() = default;
    MatrixPairT(Matrix<T> b, Matrix<T> a) : B(std::move(b)), A(std::move(a)) {
        if (A.rows() != A.cols() || B.rows() != A.rows())
            throw std::invalid_argument("MatrixPair: size mismatch");
    }

    int m() const { return A.rows(); }
    int n() const { return B.cols(); }

    friend bool operator==(const MatrixPairT& a, const MatrixPairT& b) {
        return a.B == b.B && a.A == b.A;
    }
};
using PairX = MatrixPairT<Rat>;
using PairF = MatrixPairT<Cplx>;

/// Group element (S, P, U) acting by [B' A'] = S^{-1} [B A] [[P,U],[0,S]].
template <class T>
struct PairWitnessT {
    Matrix<T> S;  // m x m, nonsingular
    Matrix<T> P;  // n x n, nonsingular
    Matrix<T> U;  // n x m

    static PairWitnessT identity(int m, int n) {
        return {Matrix<T>::identity(m), Matrix<T>::identity(n), Matrix<T>(n, m)};
    }
    /// The (n+m) x (n+m) right factor [[P,U],[0,S]].
    Matrix<T> right_factor() const {
        Matrix<T> r(P.rows() + S.rows(), P.rows() + S.rows());
        r.set_block(0, 0, P);
        r.set_block(0, P.rows(), U);
        r.set_block(P.rows(), P.rows(), S);
        return r;
    }
};
using PairWitnessX = PairWitnessT<Rat>;
using PairWitnessF = PairWitnessT<Cplx>;

/// The split m = alpha*n + beta with 0 < beta <= n. Note beta = n (not 0)
/// when n divides m; this differs from plain Euclidean division.
struct AlphaBeta {
    int alpha;
    int beta;
};
AlphaBeta alpha_beta(int m, int n);

template <class T>
MatrixPairT<T> apply_pair_feedback(const MatrixPairT<T>& p, const PairWitnessT<T>& w);

/// Composition: applying w1 then w2 equals applying compose(w1, w2).
template <class T>
PairWitnessT<T> compose(const PairWitnessT<T>& w1, const PairWitnessT<T>& w2);

template <class T>
PairWitnessT<T> inverse_witness(const PairWitnessT<T>& w);

/// Relative Frobenius residual of S [B' A'] - [B A] [[P,U],[0,S]]. Exact
/// inputs yield exactly 0.0 or a nonzero value.
template <class T>
double pair_witness_residual(const MatrixPairT<T>& p, const MatrixPairT<T>& q,
                             const PairWitnessT<T>& w);

/// Complete feedback-similarity invariants of a pair: controllability
/// indices, count of zero input columns, and the invariant factors of
/// xI - A2 for the uncontrollable part A2.
struct BrunovskyInvariants {
    std::vector<int> ctrl_indices;       // descending
    int zero_cols = 0;
    std::vector<Poly> invariant_factors; // monic, ascending divisibility chain

    int state_dim() const;
    int input_dim() const;
};

struct BrunovskyResult {
    BrunovskyInvariants invariants;
    PairWitnessX witness;  // carries the input to brunovsky_assemble(invariants)
};

/// Exact decomposition; the returned witness maps p exactly onto the
/// assembled canonical pair.
BrunovskyResult brunovsky_decompose(const PairX& p);

/// Deterministic realization: controllability blocks with indices in
/// descending order, then companion blocks of the invariant factors in
/// chain order, then the zero input columns.
PairX brunovsky_assemble(const BrunovskyInvariants& inv);

/// True iff the Brunovsky invariants coincide. Requires equal sizes.
bool pairs_feedback_similar(const PairX& a, const PairX& b);

/// The generic canonical pairs. n >= 1 is required; pairs without input
/// columns reduce only to spectral data, which this library does not
/// support.
template <class T>
MatrixPairT<T> canonical_pair_F(int m, int n);
template <class T>
MatrixPairT<T> canonical_pair_H(int m, int n);

/// The (m-n) x m block [[I_{(alpha-1)n}, 0, 0], [0, G_{beta,n}, 0_beta]].
template <class T>
Matrix<T> make_H_block(int m, int n);

/// Upper block-triangular matrix of size (gamma-1)*n + beta with gamma
/// diagonal S3 blocks; see make_H_block for the (n, beta) split.
template <class T>
Matrix<T> make_R_gamma(int gamma, const Matrix<T>& S1, const Matrix<T>& S2, const Matrix<T>& S3,
                       const Matrix<T>& S4, int n, int beta);

/// Endomorphism of canonical_pair_H(m, n) read off from R_{alpha+2}:
/// S = R_{alpha+1}, P = leading n x n block, U = adjacent n x m block.
/// Linear in (S1, S2, S3, S4); the witness is invertible iff S1 and S3
/// are.
template <class T>
PairWitnessT<T> endomorphism_from_params(int m, int n, const Matrix<T>& S1, const Matrix<T>& S2,
                                         const Matrix<T>& S3, const Matrix<T>& S4);

/// Coefficient matrix of the linear system {B P = S B, B U + A S = S A}
/// in the unknowns (S, P, U), vectorized row-major in that order.
MatX pair_stabilizer_system(const PairX& p);

/// Dimension of the stabilizer, via exact nullspace of the vectorized
/// system in m^2 + n^2 + n m unknowns.
int pair_stabilizer_dimension(const PairX& p);

}  // namespace feedcanon
