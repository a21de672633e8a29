#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "feedcanon/matrix.hpp"

namespace feedcanon {

/// m x (n, m, m) triple: C (m x n), B and A (m x m).
template <class T>
struct MatrixTripleT {
    Matrix<T> C;
    Matrix<T> B;
    Matrix<T> A;

    MatrixTripleT() = default;
    MatrixTripleT(Matrix<T> c, Matrix<T> b, Matrix<T> a)
        : C(std::move(c)), B(std::move(b)), A(std::move(a)) {
        if (B.rows() != B.cols() || A.rows() != A.cols() || B.rows() != A.rows() ||
            C.rows() != A.rows())
            throw std::invalid_argument("MatrixTriple: size mismatch");
    }

    int m() const { return A.rows(); }
    int n() const { return C.cols(); }

    friend bool operator==(const MatrixTripleT& x, const MatrixTripleT& y) {
        return x.C == y.C && x.B == y.B && x.A == y.A;
    }
};
using TripleX = MatrixTripleT<Rat>;
using TripleF = MatrixTripleT<Cplx>;

/// Group element (S, P, U, V). U couples into A', V into B':
///   C' = S^{-1} C P,  B' = S^{-1}(B S + C V),  A' = S^{-1}(A S + C U).
template <class T>
struct FeedbackWitnessT {
    Matrix<T> S;  // m x m, nonsingular
    Matrix<T> P;  // n x n, nonsingular
    Matrix<T> U;  // n x m
    Matrix<T> V;  // n x m

    static FeedbackWitnessT identity(int m, int n) {
        return {Matrix<T>::identity(m), Matrix<T>::identity(n), Matrix<T>(n, m), Matrix<T>(n, m)};
    }
    /// The (n+2m) square right factor [[P,V,U],[0,S,0],[0,0,S]].
    Matrix<T> right_factor() const {
        const int n = P.rows(), m = S.rows();
        Matrix<T> r(n + 2 * m, n + 2 * m);
        r.set_block(0, 0, P);
        r.set_block(0, n, V);
        r.set_block(0, n + m, U);
        r.set_block(n, n, S);
        r.set_block(n + m, n + m, S);
        return r;
    }
};
using FeedbackWitnessX = FeedbackWitnessT<Rat>;
using FeedbackWitnessF = FeedbackWitnessT<Cplx>;

/// The m x (n+2m) block matrix [C B A].
template <class T>
Matrix<T> block_matrix(const MatrixTripleT<T>& t);

/// ||C|| + ||B|| + ||A||.
template <class T>
double triple_norm(const MatrixTripleT<T>& t);

template <class T>
MatrixTripleT<T> apply_feedback(const MatrixTripleT<T>& t, const FeedbackWitnessT<T>& w);

template <class T>
FeedbackWitnessT<T> compose(const FeedbackWitnessT<T>& w1, const FeedbackWitnessT<T>& w2);

template <class T>
FeedbackWitnessT<T> inverse_witness(const FeedbackWitnessT<T>& w);

struct WitnessCheck {
    double residual;  // relative Frobenius residual of the defining identity
    bool ok;          // residual <= tol
};

/// Residual of S [C' B' A'] - [C B A] R relative to the operand norms;
/// exact inputs give exactly 0.0 when the identity holds.
template <class T>
WitnessCheck verify_witness(const MatrixTripleT<T>& t, const MatrixTripleT<T>& t2,
                            const FeedbackWitnessT<T>& w, double tol);

/// The K-normal form: ( [I_n;0], [0;H_{m-n,m}], [0;N] ) for m > n, and
/// (G_mn, 0, 0) with N absent for m <= n.
template <class T>
MatrixTripleT<T> make_K(int m, int n, const std::optional<Matrix<T>>& N);

/// Tests N' = R_alpha^{-1} N R_{alpha+1} for the given parameter blocks
/// (exactly on the exact field, within tol on floats).
template <class T>
bool K_similar(const Matrix<T>& N, const Matrix<T>& Nprime, const Matrix<T>& S1,
               const Matrix<T>& S2, const Matrix<T>& S3, const Matrix<T>& S4, double tol = 1e-9);

/// Full-triple witness carrying K(N) to K(N') when K_similar holds.
template <class T>
FeedbackWitnessT<T> k_witness(int m, int n, const Matrix<T>& S1, const Matrix<T>& S2,
                              const Matrix<T>& S3, const Matrix<T>& S4, const Matrix<T>& Nprime);

/// The lifting operator: a p x (q,p,p) triple becomes the displayed
/// (2p+q) x (p+q, 2p+q, 2p+q) triple.
template <class T>
MatrixTripleT<T> lift_L(const MatrixTripleT<T>& t);

template <class T>
MatrixTripleT<T> lift_L_iterated(const MatrixTripleT<T>& t, int i);

/// Integer margin m^2 - m n - n^2; its sign decides rigidity exactly
/// (equality never occurs, the golden ratio being irrational).
long long rigid_margin(int m, int n);

/// True iff a rigid m x (n,m,m) triple exists, i.e. m < n(1+sqrt(5))/2.
bool rigid_exists(int m, int n);

/// Parameters of the canonical rigid triple: the recursion's terminal
/// (p, q), the number of lift levels, and the full (m,n) size sequence.
struct RigidInfo {
    int p = 0;
    int q = 0;
    int levels = 0;
    std::vector<std::pair<int, int>> size_sequence;
};
RigidInfo rigid_canonical_info(int m, int n);

/// The canonical rigid triple: (F_mn, 0, 0) for m <= n, otherwise the
/// lift of the rigid triple for (m-n, 2n-m). Errors when no rigid triple
/// of this size exists.
template <class T>
MatrixTripleT<T> rigid_canonical(int m, int n);

/// [C  xI+B  yI+A], stored structurally as the constant part plus the
/// fixed positions of the two identity insertions.
template <class T>
struct PolyMatrixT {
    Matrix<T> constant;  // [C B A], m x (n+2m)
    int m = 0;
    int n = 0;

    Matrix<T> eval(const T& x, const T& y) const {
        Matrix<T> r = constant;
        for (int i = 0; i < m; ++i) {
            r(i, n + i) = r(i, n + i) + x;
            r(i, n + m + i) = r(i, n + m + i) + y;
        }
        return r;
    }
};
using PolyMatrixX = PolyMatrixT<Rat>;
using PolyMatrixF = PolyMatrixT<Cplx>;

template <class T>
PolyMatrixT<T> poly_matrix(const MatrixTripleT<T>& t);

/// Verifies S T'(x,y) = T(x,y) R as three constant-matrix identities
/// (constant, x- and y-coefficient parts). S and R must be nonsingular.
template <class T>
bool strict_equiv_check(const MatrixTripleT<T>& t, const MatrixTripleT<T>& t2, const Matrix<T>& S,
                        const Matrix<T>& R, double tol = 1e-9);

/// Extracts (P, V, U) from an R of the block pattern
/// [[P,V,U],[0,S,0],[0,0,S]]; throws when any off-pattern block is
/// nonzero beyond tolerance or the two S copies disagree with S.
template <class T>
FeedbackWitnessT<T> witness_from_strict(const Matrix<T>& S, const Matrix<T>& R, double tol = 1e-9);

/// Deterministic seeded triples: exact entries are integers in [-5, 5],
/// float entries standard complex Gaussians.
TripleX random_triple_exact(int m, int n, uint64_t seed);
TripleF random_triple_float(int m, int n, uint64_t seed);

// Elementary witnesses realizing the generating operations of the
// action: a simultaneous row operation on C, B, A followed by the
// inverse column operation on B and A; a column operation on C; and
// adding a multiple of a C column to a B or A column. Compositional
// sugar over FeedbackWitness, not a separate algebra.

/// Swap rows i and j (and columns i, j of B and A).
template <class T>
FeedbackWitnessT<T> row_swap_witness(int m, int n, int i, int j);

/// Scale row i by c != 0 (and columns i of B, A by 1/c).
template <class T>
FeedbackWitnessT<T> row_scale_witness(int m, int n, int i, const T& c);

/// Add c times row j to row i (and subtract c times column i from
/// column j of B and A).
template <class T>
FeedbackWitnessT<T> row_add_witness(int m, int n, int i, int j, const T& c);

/// Swap columns i and j of C.
template <class T>
FeedbackWitnessT<T> c_col_swap_witness(int m, int n, int i, int j);

/// Scale column j of C by c != 0.
template <class T>
FeedbackWitnessT<T> c_col_scale_witness(int m, int n, int j, const T& c);

/// Add c times column src of C to column dst of C.
template <class T>
FeedbackWitnessT<T> c_col_add_witness(int m, int n, int dst, int src, const T& c);

/// Add c times column c_col of C to column b_col of B.
template <class T>
FeedbackWitnessT<T> c_into_b_witness(int m, int n, int c_col, int b_col, const T& c);

/// Add c times column c_col of C to column a_col of A.
template <class T>
FeedbackWitnessT<T> c_into_a_witness(int m, int n, int c_col, int a_col, const T& c);

}  // namespace feedcanon
