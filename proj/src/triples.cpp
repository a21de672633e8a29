#include "feedcanon/triples.hpp"

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/float_linalg.hpp"
#include "feedcanon/pairs.hpp"
#include "feedcanon/rng.hpp"

namespace feedcanon {

template <class T>
Matrix<T> block_matrix(const MatrixTripleT<T>& t) {
    return hstack(hstack(t.C, t.B), t.A);
}

template <class T>
double triple_norm(const MatrixTripleT<T>& t) {
    return frobenius_norm(t.C) + frobenius_norm(t.B) + frobenius_norm(t.A);
}

template <class T>
MatrixTripleT<T> apply_feedback(const MatrixTripleT<T>& t, const FeedbackWitnessT<T>& w) {
    const int m = t.m(), n = t.n();
    if (w.S.rows() != m || w.S.cols() != m || w.P.rows() != n || w.P.cols() != n ||
        w.U.rows() != n || w.U.cols() != m || w.V.rows() != n || w.V.cols() != m)
        throw std::invalid_argument("apply_feedback: witness size mismatch");
    if (!is_invertible(w.S)) throw SingularMatrixError("apply_feedback: singular S");
    if (!is_invertible(w.P)) throw SingularMatrixError("apply_feedback: singular P");
    return {solve(w.S, t.C * w.P), solve(w.S, t.B * w.S + t.C * w.V),
            solve(w.S, t.A * w.S + t.C * w.U)};
}

template <class T>
FeedbackWitnessT<T> compose(const FeedbackWitnessT<T>& w1, const FeedbackWitnessT<T>& w2) {
    return {w1.S * w2.S, w1.P * w2.P, w1.P * w2.U + w1.U * w2.S, w1.P * w2.V + w1.V * w2.S};
}

template <class T>
FeedbackWitnessT<T> inverse_witness(const FeedbackWitnessT<T>& w) {
    Matrix<T> si = inverse(w.S);
    Matrix<T> pi = inverse(w.P);
    return {si, pi, -(pi * w.U * si), -(pi * w.V * si)};
}

template <class T>
WitnessCheck verify_witness(const MatrixTripleT<T>& t, const MatrixTripleT<T>& t2,
                            const FeedbackWitnessT<T>& w, double tol) {
    if (t.m() != t2.m() || t.n() != t2.n())
        throw std::invalid_argument("verify_witness: size mismatch");
    const Matrix<T> lhs = w.S * block_matrix(t2);
    const Matrix<T> rhs = block_matrix(t) * w.right_factor();
    const double raw = frobenius_norm(lhs - rhs);
    double rel = raw;
    if (raw != 0.0) {
        const double den = frobenius_norm(w.S) * frobenius_norm(block_matrix(t2)) +
                           frobenius_norm(block_matrix(t)) * frobenius_norm(w.right_factor());
        if (den > 0.0) rel = raw / den;
    }
    return {rel, rel <= tol};
}

template <class T>
MatrixTripleT<T> make_K(int m, int n, const std::optional<Matrix<T>>& N) {
    if (n < 1) throw std::invalid_argument("make_K: n must be >= 1");
    if (m <= n) {
        if (N && !N->empty()) throw std::invalid_argument("make_K: N is absent for m <= n");
        return {make_G<T>(m, n), Matrix<T>(m, m), Matrix<T>(m, m)};
    }
    if (!N || N->rows() != m - n || N->cols() != m)
        throw std::invalid_argument("make_K: N must be (m-n) x m");
    Matrix<T> c(m, n);
    c.set_block(0, 0, Matrix<T>::identity(n));
    Matrix<T> b(m, m);
    b.set_block(n, 0, make_H_block<T>(m, n));
    Matrix<T> a(m, m);
    a.set_block(n, 0, *N);
    return {c, b, a};
}

namespace {

template <class T>
void k_param_sizes(const Matrix<T>& N, int& m, int& n, int& alpha, int& beta) {
    m = N.cols();
    n = m - N.rows();
    if (n < 1 || N.rows() < 1) throw std::invalid_argument("K form: N must be (m-n) x m, m > n >= 1");
    const AlphaBeta ab = alpha_beta(m, n);
    alpha = ab.alpha;
    beta = ab.beta;
}

}  // namespace

template <class T>
bool K_similar(const Matrix<T>& N, const Matrix<T>& Nprime, const Matrix<T>& S1,
               const Matrix<T>& S2, const Matrix<T>& S3, const Matrix<T>& S4, double tol) {
    if (!N.same_shape(Nprime)) throw std::invalid_argument("K_similar: N size mismatch");
    int m, n, alpha, beta;
    k_param_sizes(N, m, n, alpha, beta);
    if (!is_invertible(S1) || !is_invertible(S3))
        throw SingularMatrixError("K_similar: S1 and S3 must be invertible");
    const Matrix<T> ra = make_R_gamma<T>(alpha, S1, S2, S3, S4, n, beta);
    const Matrix<T> ra1 = make_R_gamma<T>(alpha + 1, S1, S2, S3, S4, n, beta);
    const Matrix<T> expected = solve(ra, N * ra1);
    if constexpr (ScalarOps<T>::exact) {
        (void)tol;
        return expected == Nprime;
    } else {
        const double diff = frobenius_norm(expected - Nprime);
        return diff <= tol * std::max(1.0, frobenius_norm(expected));
    }
}

template <class T>
FeedbackWitnessT<T> k_witness(int m, int n, const Matrix<T>& S1, const Matrix<T>& S2,
                              const Matrix<T>& S3, const Matrix<T>& S4, const Matrix<T>& Nprime) {
    if (n < 1 || m <= n) throw std::invalid_argument("k_witness: require m > n >= 1");
    if (Nprime.rows() != m - n || Nprime.cols() != m)
        throw std::invalid_argument("k_witness: N' must be (m-n) x m");
    const AlphaBeta ab = alpha_beta(m, n);
    const Matrix<T> s = make_R_gamma<T>(ab.alpha + 1, S1, S2, S3, S4, n, ab.beta);
    Matrix<T> p(n, n);
    p.set_block(0, 0, S1);
    p.set_block(0, n - ab.beta, S2);
    p.set_block(n - ab.beta, n - ab.beta, S3);
    const Matrix<T> x = s.block(0, n, n, m - n);
    return {s, p, x * Nprime, x * make_H_block<T>(m, n)};
}

template <class T>
MatrixTripleT<T> lift_L(const MatrixTripleT<T>& t) {
    const int p = t.m(), q = t.n();
    Matrix<T> c(2 * p + q, p + q);
    c.set_block(0, 0, Matrix<T>::identity(p + q));
    Matrix<T> b(2 * p + q, 2 * p + q);
    b.set_block(p + q, q, Matrix<T>::identity(p));
    Matrix<T> a(2 * p + q, 2 * p + q);
    a.set_block(p + q, 0, t.C);
    a.set_block(p + q, q, t.B);
    a.set_block(p + q, q + p, t.A);
    return {c, b, a};
}

template <class T>
MatrixTripleT<T> lift_L_iterated(const MatrixTripleT<T>& t, int i) {
    if (i < 0) throw std::invalid_argument("lift_L_iterated: negative iteration count");
    MatrixTripleT<T> r = t;
    for (int k = 0; k < i; ++k) r = lift_L(r);
    return r;
}

long long rigid_margin(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("rigid_margin: m and n must be positive");
    const long long mm = m, nn = n;
    return mm * mm - mm * nn - nn * nn;
}

bool rigid_exists(int m, int n) { return rigid_margin(m, n) < 0; }

RigidInfo rigid_canonical_info(int m, int n) {
    if (!rigid_exists(m, n))
        throw std::invalid_argument(
            "rigid_canonical_info: no rigid triple exists for this size (m exceeds the golden "
            "ratio bound n(1+sqrt(5))/2)");
    RigidInfo info;
    int cm = m, cn = n;
    info.size_sequence.emplace_back(cm, cn);
    while (cm > cn) {
        const int nm = cm - cn, nn = 2 * cn - cm;
        cm = nm;
        cn = nn;
        info.size_sequence.emplace_back(cm, cn);
        ++info.levels;
    }
    info.p = cm;
    info.q = cn;
    return info;
}

template <class T>
MatrixTripleT<T> rigid_canonical(int m, int n) {
    if (!rigid_exists(m, n))
        throw std::invalid_argument(
            "rigid_canonical: no rigid triple exists for this size (m exceeds the golden ratio "
            "bound n(1+sqrt(5))/2)");
    if (m <= n) return {make_F<T>(m, n), Matrix<T>(m, m), Matrix<T>(m, m)};
    return lift_L(rigid_canonical<T>(m - n, 2 * n - m));
}

template <class T>
PolyMatrixT<T> poly_matrix(const MatrixTripleT<T>& t) {
    return {block_matrix(t), t.m(), t.n()};
}

namespace {

template <class T>
bool blocks_equal(const Matrix<T>& a, const Matrix<T>& b, double tol, double scale) {
    if constexpr (ScalarOps<T>::exact) {
        (void)tol;
        (void)scale;
        return a == b;
    } else {
        return frobenius_norm(a - b) <= tol * std::max(1.0, scale);
    }
}

// S [0 I 0] = [0 I 0] R picks the middle block row of R, so the x- and
// y-coefficient identities pin rows 2 and 3 of the block pattern.
template <class T>
bool coefficient_identities(const Matrix<T>& S, const Matrix<T>& R, int m, int n, double tol,
                            double scale) {
    const Matrix<T> zmn(m, n), zmm(m, m);
    const bool xrow = blocks_equal(R.block(n, 0, m, n), zmn, tol, scale) &&
                      blocks_equal(R.block(n, n, m, m), S, tol, scale) &&
                      blocks_equal(R.block(n, n + m, m, m), zmm, tol, scale);
    const bool yrow = blocks_equal(R.block(n + m, 0, m, n), zmn, tol, scale) &&
                      blocks_equal(R.block(n + m, n, m, m), zmm, tol, scale) &&
                      blocks_equal(R.block(n + m, n + m, m, m), S, tol, scale);
    return xrow && yrow;
}

}  // namespace

template <class T>
bool strict_equiv_check(const MatrixTripleT<T>& t, const MatrixTripleT<T>& t2, const Matrix<T>& S,
                        const Matrix<T>& R, double tol) {
    const int m = t.m(), n = t.n();
    if (t2.m() != m || t2.n() != n) throw std::invalid_argument("strict_equiv_check: size mismatch");
    if (S.rows() != m || S.cols() != m || R.rows() != n + 2 * m || R.cols() != n + 2 * m)
        throw std::invalid_argument("strict_equiv_check: S must be m x m, R (n+2m) x (n+2m)");
    if (!is_invertible(S) || !is_invertible(R))
        throw SingularMatrixError("strict_equiv_check: S and R must be nonsingular");
    const double scale = frobenius_norm(S) + frobenius_norm(R);
    if (!coefficient_identities(S, R, m, n, tol, scale)) return false;
    const Matrix<T> lhs = S * block_matrix(t2);
    const Matrix<T> rhs = block_matrix(t) * R;
    return blocks_equal(lhs, rhs, tol,
                        frobenius_norm(block_matrix(t)) * frobenius_norm(R) + frobenius_norm(lhs));
}

template <class T>
FeedbackWitnessT<T> witness_from_strict(const Matrix<T>& S, const Matrix<T>& R, double tol) {
    const int m = S.rows();
    if (S.cols() != m) throw std::invalid_argument("witness_from_strict: S must be square");
    const int n = R.rows() - 2 * m;
    if (n < 0 || R.cols() != R.rows())
        throw std::invalid_argument("witness_from_strict: R must be (n+2m) x (n+2m)");
    const double scale = frobenius_norm(S) + frobenius_norm(R);
    if (!coefficient_identities(S, R, m, n, tol, scale))
        throw std::invalid_argument(
            "witness_from_strict: R violates the block pattern [[P,V,U],[0,S,0],[0,0,S]]");
    return {S, R.block(0, 0, n, n), R.block(0, n + m, n, m), R.block(0, n, n, m)};
}

TripleX random_triple_exact(int m, int n, uint64_t seed) {
    if (m < 0 || n < 0) throw std::invalid_argument("random_triple_exact: negative size");
    Rng rng(Rng::mix(seed, (static_cast<uint64_t>(m) << 32) | static_cast<uint64_t>(n)));
    auto fill = [&](MatX& mat) {
        for (int i = 0; i < mat.rows(); ++i)
            for (int j = 0; j < mat.cols(); ++j) mat(i, j) = Rat(rng.uniform_int(-5, 5));
    };
    MatX c(m, n), b(m, m), a(m, m);
    fill(c);
    fill(b);
    fill(a);
    return {c, b, a};
}

TripleF random_triple_float(int m, int n, uint64_t seed) {
    if (m < 0 || n < 0) throw std::invalid_argument("random_triple_float: negative size");
    Rng rng(Rng::mix(seed, (static_cast<uint64_t>(m) << 32) | static_cast<uint64_t>(n)));
    auto fill = [&](MatF& mat) {
        for (int i = 0; i < mat.rows(); ++i)
            for (int j = 0; j < mat.cols(); ++j) {
                const double re = rng.gaussian();
                const double im = rng.gaussian();
                mat(i, j) = Cplx(re, im);
            }
    };
    MatF c(m, n), b(m, m), a(m, m);
    fill(c);
    fill(b);
    fill(a);
    return {c, b, a};
}

template <class T>
FeedbackWitnessT<T> row_swap_witness(int m, int n, int i, int j) {
    Matrix<T> s = Matrix<T>::identity(m);
    s.swap_rows(i, j);
    return {s, Matrix<T>::identity(n), Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> row_scale_witness(int m, int n, int i, const T& c) {
    if (ScalarOps<T>::is_zero(c)) throw std::invalid_argument("row_scale_witness: zero factor");
    Matrix<T> s = Matrix<T>::identity(m);
    s(i, i) = ScalarOps<T>::one() / c;  // S^{-1} carries the scaling itself
    return {s, Matrix<T>::identity(n), Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> row_add_witness(int m, int n, int i, int j, const T& c) {
    if (i == j) throw std::invalid_argument("row_add_witness: equal row indices");
    Matrix<T> s = Matrix<T>::identity(m);
    s(i, j) = -c;
    return {s, Matrix<T>::identity(n), Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> c_col_swap_witness(int m, int n, int i, int j) {
    Matrix<T> p = Matrix<T>::identity(n);
    p.swap_cols(i, j);
    return {Matrix<T>::identity(m), p, Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> c_col_scale_witness(int m, int n, int j, const T& c) {
    if (ScalarOps<T>::is_zero(c)) throw std::invalid_argument("c_col_scale_witness: zero factor");
    Matrix<T> p = Matrix<T>::identity(n);
    p(j, j) = c;
    return {Matrix<T>::identity(m), p, Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> c_col_add_witness(int m, int n, int dst, int src, const T& c) {
    if (dst == src) throw std::invalid_argument("c_col_add_witness: equal column indices");
    Matrix<T> p = Matrix<T>::identity(n);
    p(src, dst) = c;
    return {Matrix<T>::identity(m), p, Matrix<T>(n, m), Matrix<T>(n, m)};
}

template <class T>
FeedbackWitnessT<T> c_into_b_witness(int m, int n, int c_col, int b_col, const T& c) {
    Matrix<T> v(n, m);
    v(c_col, b_col) = c;
    return {Matrix<T>::identity(m), Matrix<T>::identity(n), Matrix<T>(n, m), v};
}

template <class T>
FeedbackWitnessT<T> c_into_a_witness(int m, int n, int c_col, int a_col, const T& c) {
    Matrix<T> u(n, m);
    u(c_col, a_col) = c;
    return {Matrix<T>::identity(m), Matrix<T>::identity(n), u, Matrix<T>(n, m)};
}

#define FEEDCANON_INSTANTIATE_TRIPLES(T)                                                         \
    template struct MatrixTripleT<T>;                                                            \
    template struct FeedbackWitnessT<T>;                                                         \
    template Matrix<T> block_matrix(const MatrixTripleT<T>&);                                    \
    template double triple_norm(const MatrixTripleT<T>&);                                        \
    template MatrixTripleT<T> apply_feedback(const MatrixTripleT<T>&, const FeedbackWitnessT<T>&); \
    template FeedbackWitnessT<T> compose(const FeedbackWitnessT<T>&, const FeedbackWitnessT<T>&); \
    template FeedbackWitnessT<T> inverse_witness(const FeedbackWitnessT<T>&);                    \
    template WitnessCheck verify_witness(const MatrixTripleT<T>&, const MatrixTripleT<T>&,       \
                                         const FeedbackWitnessT<T>&, double);                    \
    template MatrixTripleT<T> make_K(int, int, const std::optional<Matrix<T>>&);                 \
    template bool K_similar(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,                \
                            const Matrix<T>&, const Matrix<T>&, const Matrix<T>&, double);       \
    template FeedbackWitnessT<T> k_witness(int, int, const Matrix<T>&, const Matrix<T>&,         \
                                           const Matrix<T>&, const Matrix<T>&, const Matrix<T>&); \
    template MatrixTripleT<T> lift_L(const MatrixTripleT<T>&);                                   \
    template MatrixTripleT<T> lift_L_iterated(const MatrixTripleT<T>&, int);                     \
    template MatrixTripleT<T> rigid_canonical<T>(int, int);                                      \
    template PolyMatrixT<T> poly_matrix(const MatrixTripleT<T>&);                                \
    template bool strict_equiv_check(const MatrixTripleT<T>&, const MatrixTripleT<T>&,           \
                                     const Matrix<T>&, const Matrix<T>&, double);                \
    template FeedbackWitnessT<T> witness_from_strict(const Matrix<T>&, const Matrix<T>&, double); \
    template FeedbackWitnessT<T> row_swap_witness<T>(int, int, int, int);                        \
    template FeedbackWitnessT<T> row_scale_witness(int, int, int, const T&);                     \
    template FeedbackWitnessT<T> row_add_witness(int, int, int, int, const T&);                  \
    template FeedbackWitnessT<T> c_col_swap_witness<T>(int, int, int, int);                      \
    template FeedbackWitnessT<T> c_col_scale_witness(int, int, int, const T&);                   \
    template FeedbackWitnessT<T> c_col_add_witness(int, int, int, int, const T&);                \
    template FeedbackWitnessT<T> c_into_b_witness(int, int, int, int, const T&);                 \
    template FeedbackWitnessT<T> c_into_a_witness(int, int, int, int, const T&);

FEEDCANON_INSTANTIATE_TRIPLES(Rat)
FEEDCANON_INSTANTIATE_TRIPLES(Cplx)

#undef FEEDCANON_INSTANTIATE_TRIPLES

}  // namespace feedcanon
