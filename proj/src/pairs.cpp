#include "feedcanon/pairs.hpp"

#include <algorithm>
#include <numeric>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/float_linalg.hpp"
#include "feedcanon/smith.hpp"

namespace feedcanon {

AlphaBeta alpha_beta(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("alpha_beta: m and n must be positive");
    const int alpha = (m - 1) / n;
    return {alpha, m - alpha * n};
}

template <class T>
MatrixPairT<T> apply_pair_feedback(const MatrixPairT<T>& p, const PairWitnessT<T>& w) {
    const int m = p.m(), n = p.n();
    if (w.S.rows() != m || w.S.cols() != m || w.P.rows() != n || w.P.cols() != n ||
        w.U.rows() != n || w.U.cols() != m)
        throw std::invalid_argument("apply_pair_feedback: witness size mismatch");
    if (!is_invertible(w.S)) throw SingularMatrixError("apply_pair_feedback: singular S");
    if (!is_invertible(w.P)) throw SingularMatrixError("apply_pair_feedback: singular P");
    return {solve(w.S, p.B * w.P), solve(w.S, p.A * w.S + p.B * w.U)};
}

template <class T>
PairWitnessT<T> compose(const PairWitnessT<T>& w1, const PairWitnessT<T>& w2) {
    return {w1.S * w2.S, w1.P * w2.P, w1.P * w2.U + w1.U * w2.S};
}

template <class T>
PairWitnessT<T> inverse_witness(const PairWitnessT<T>& w) {
    Matrix<T> si = inverse(w.S);
    Matrix<T> pi = inverse(w.P);
    return {si, pi, -(pi * w.U * si)};
}

template <class T>
double pair_witness_residual(const MatrixPairT<T>& p, const MatrixPairT<T>& q,
                             const PairWitnessT<T>& w) {
    if (p.m() != q.m() || p.n() != q.n())
        throw std::invalid_argument("pair_witness_residual: size mismatch");
    const Matrix<T> lhs = w.S * hstack(q.B, q.A);
    const Matrix<T> rhs = hstack(p.B, p.A) * w.right_factor();
    const double raw = frobenius_norm(lhs - rhs);
    if (raw == 0.0) return 0.0;
    const double den = frobenius_norm(w.S) * frobenius_norm(hstack(q.B, q.A)) +
                       frobenius_norm(hstack(p.B, p.A)) * frobenius_norm(w.right_factor());
    return den > 0.0 ? raw / den : raw;
}

int BrunovskyInvariants::state_dim() const {
    int s = std::accumulate(ctrl_indices.begin(), ctrl_indices.end(), 0);
    for (const Poly& f : invariant_factors) s += f.degree();
    return s;
}

int BrunovskyInvariants::input_dim() const {
    return static_cast<int>(ctrl_indices.size()) + zero_cols;
}

namespace {

struct Block {
    enum Kind { Ctrl, Unc, ZeroCol } kind;
    int k = 0;  // controllability index
    MatX a;     // uncontrollable square block
    int state_size() const { return kind == Ctrl ? k : (kind == Unc ? a.rows() : 0); }
    int input_size() const { return kind == Unc ? 0 : 1; }
};

PairX realize_block(const Block& b) {
    switch (b.kind) {
        case Block::Ctrl: {
            MatX e1(b.k, 1);
            e1(0, 0) = Rat(1);
            return {e1, make_jordan<Rat>(b.k, Rat(0))};
        }
        case Block::Unc:
            return {MatX(b.a.rows(), 0), b.a};
        case Block::ZeroCol:
        default:
            return {MatX(0, 1), MatX(0, 0)};
    }
}

PairX realize_blocks(const std::vector<Block>& blocks) {
    PairX acc{MatX(0, 0), MatX(0, 0)};
    for (const Block& b : blocks) {
        PairX r = realize_block(b);
        acc = PairX{block_diag(acc.B, r.B), block_diag(acc.A, r.A)};
    }
    return acc;
}

MatX permutation_from_map(const std::vector<int>& old_to_new) {
    const int n = static_cast<int>(old_to_new.size());
    MatX p(n, n);
    for (int old = 0; old < n; ++old) p(old_to_new[old], old) = Rat(1);
    return p;
}

// One pass of the structural reduction. Returns the canonical blocks in
// direct-sum order together with a witness carrying p exactly onto that
// direct sum.
std::pair<std::vector<Block>, PairWitnessX> reduce_rec(const PairX& p) {
    const int m = p.m(), n = p.n();
    std::vector<Block> blocks;
    if (n == 0) {
        if (m > 0) blocks.push_back({Block::Unc, 0, p.A});
        return {blocks, PairWitnessX::identity(m, n)};
    }
    if (p.B.is_zero()) {
        if (m > 0) blocks.push_back({Block::Unc, 0, p.A});
        for (int j = 0; j < n; ++j) blocks.push_back({Block::ZeroCol});
        return {blocks, PairWitnessX::identity(m, n)};
    }

    // Normalize B to [[I_r, 0], [0, 0]].
    RowReduction rr = row_reduce(p.B);
    const int r = rr.rank;
    std::vector<int> col_to_new(n, -1);
    for (int k = 0; k < r; ++k) col_to_new[rr.pivot_cols[k]] = k;
    int next = r;
    for (int j = 0; j < n; ++j)
        if (col_to_new[j] < 0) col_to_new[j] = next++;
    MatX perm(n, n);
    for (int j = 0; j < n; ++j) perm(j, col_to_new[j]) = Rat(1);  // right-multiply reorders columns
    MatX reordered = rr.rref * perm;
    MatX celim = MatX::identity(n);
    for (int i = 0; i < r; ++i)
        for (int j = r; j < n; ++j) celim(i, j) = -reordered(i, j);
    PairWitnessX w0{rr.Einv, perm * celim, MatX(n, m)};
    PairX p1 = apply_pair_feedback(p, w0);

    // Clear the top r x m strip of A.
    MatX u1(n, m);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m; ++j) u1(i, j) = -p1.A(i, j);
    PairWitnessX w1{MatX::identity(m), MatX::identity(n), u1};
    PairX p2 = apply_pair_feedback(p1, w1);

    const MatX sub_b = p2.A.block(r, 0, m - r, r);
    const MatX sub_a = p2.A.block(r, r, m - r, m - r);
    auto [sub_blocks, w_sub] = reduce_rec(PairX{sub_b, sub_a});
    PairX sub_canon = apply_pair_feedback(PairX{sub_b, sub_a}, w_sub);

    // Lift the sub-witness through the staircase shape.
    MatX s_h(m, m);
    s_h.set_block(0, 0, w_sub.P);
    s_h.set_block(0, r, w_sub.U);
    s_h.set_block(r, r, w_sub.S);
    MatX p_full = MatX::identity(n);
    p_full.set_block(0, 0, w_sub.P);
    MatX u_full(n, m);
    u_full.set_block(0, 0, w_sub.U * sub_canon.B);
    u_full.set_block(0, r, w_sub.U * sub_canon.A);
    PairWitnessX w2{s_h, p_full, u_full};
    PairX p3 = apply_pair_feedback(p2, w2);

    // Redistribute states so every summand carries its own top row:
    // controllability indices grow by one, former zero columns become
    // fresh index-1 blocks, uncontrollable summands pass through.
    std::vector<Block> lifted;
    for (const Block& b : sub_blocks) {
        if (b.kind == Block::Ctrl) lifted.push_back({Block::Ctrl, b.k + 1, {}});
        else if (b.kind == Block::ZeroCol) lifted.push_back({Block::Ctrl, 1, {}});
        else lifted.push_back(b);
    }
    std::vector<int> state_map(m, -1);
    {
        int in_off = 0, sub_off = 0, new_off = 0;
        for (size_t i = 0; i < sub_blocks.size(); ++i) {
            const int nu = sub_blocks[i].input_size();
            const int mu = sub_blocks[i].state_size();
            for (int t = 0; t < nu; ++t) state_map[in_off + t] = new_off + t;
            for (int l = 0; l < mu; ++l) state_map[r + sub_off + l] = new_off + nu + l;
            in_off += nu;
            sub_off += mu;
            new_off += nu + mu;
        }
    }
    MatX pi = permutation_from_map(state_map);
    PairWitnessX w3{pi.transpose(), MatX::identity(n), MatX(n, m)};
    PairX p4 = apply_pair_feedback(p3, w3);

    for (int j = 0; j < n - r; ++j) lifted.push_back({Block::ZeroCol});
    if (p4 != realize_blocks(lifted))
        throw std::logic_error("brunovsky_decompose: staircase invariant violated");
    PairWitnessX w = compose(compose(compose(w0, w1), w2), w3);
    return {lifted, w};
}

}  // namespace

BrunovskyResult brunovsky_decompose(const PairX& p) {
    auto [blocks, w] = reduce_rec(p);
    const int m = p.m(), n = p.n();

    // Canonical order: controllability indices descending, then the
    // uncontrollable part, then zero columns.
    std::vector<int> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        auto key = [&](int i) {
            const Block& blk = blocks[i];
            return blk.kind == Block::Ctrl ? std::pair<int, int>(0, -blk.k)
                                           : std::pair<int, int>(blk.kind == Block::Unc ? 1 : 2, 0);
        };
        return key(a) < key(b);
    });

    std::vector<int> state_off(blocks.size()), input_off(blocks.size());
    {
        int so = 0, io = 0;
        for (size_t i = 0; i < blocks.size(); ++i) {
            state_off[i] = so;
            input_off[i] = io;
            so += blocks[i].state_size();
            io += blocks[i].input_size();
        }
    }
    std::vector<int> state_map(m, -1), input_map(n, -1);
    {
        int so = 0, io = 0;
        for (int idx : order) {
            const Block& blk = blocks[idx];
            for (int l = 0; l < blk.state_size(); ++l) state_map[state_off[idx] + l] = so + l;
            for (int t = 0; t < blk.input_size(); ++t) input_map[input_off[idx] + t] = io + t;
            so += blk.state_size();
            io += blk.input_size();
        }
    }
    std::vector<Block> sorted;
    for (int idx : order) sorted.push_back(blocks[idx]);

    MatX pi_s = permutation_from_map(state_map);
    MatX pi_in = permutation_from_map(input_map);
    PairWitnessX w_perm{pi_s.transpose(), pi_in.transpose(), MatX(n, m)};
    PairX canon = apply_pair_feedback(apply_pair_feedback(p, w), w_perm);
    w = compose(w, w_perm);

    BrunovskyResult out;
    for (const Block& b : sorted)
        if (b.kind == Block::Ctrl) out.invariants.ctrl_indices.push_back(b.k);
    out.invariants.zero_cols = static_cast<int>(
        std::count_if(sorted.begin(), sorted.end(),
                      [](const Block& b) { return b.kind == Block::ZeroCol; }));

    // Realize the uncontrollable part as companion blocks of its
    // invariant factors.
    auto unc = std::find_if(sorted.begin(), sorted.end(),
                            [](const Block& b) { return b.kind == Block::Unc; });
    if (unc != sorted.end() && unc->a.rows() > 0) {
        out.invariants.invariant_factors = invariant_factors(unc->a);
        const MatX t = similarity_to_companion_form(unc->a, out.invariants.invariant_factors);
        const int pre = std::accumulate(out.invariants.ctrl_indices.begin(),
                                        out.invariants.ctrl_indices.end(), 0);
        MatX s_full = MatX::identity(m);
        s_full.set_block(pre, pre, t);
        PairWitnessX w_comp{s_full, MatX::identity(n), MatX(n, m)};
        canon = apply_pair_feedback(canon, w_comp);
        w = compose(w, w_comp);
    }

    if (canon != brunovsky_assemble(out.invariants))
        throw std::logic_error("brunovsky_decompose: canonical assembly mismatch");
    out.witness = std::move(w);
    return out;
}

PairX brunovsky_assemble(const BrunovskyInvariants& inv) {
    for (int k : inv.ctrl_indices)
        if (k < 1) throw std::invalid_argument("brunovsky_assemble: indices must be positive");
    if (inv.zero_cols < 0) throw std::invalid_argument("brunovsky_assemble: negative zero_cols");
    for (size_t i = 0; i < inv.invariant_factors.size(); ++i) {
        const Poly& f = inv.invariant_factors[i];
        if (!f.is_monic() || f.degree() < 1)
            throw std::invalid_argument("brunovsky_assemble: factors must be monic, nonconstant");
        if (i > 0 && !(f % inv.invariant_factors[i - 1]).is_zero())
            throw std::invalid_argument("brunovsky_assemble: factors must form a divisibility chain");
    }
    std::vector<int> idx = inv.ctrl_indices;
    std::sort(idx.rbegin(), idx.rend());

    std::vector<Block> blocks;
    for (int k : idx) blocks.push_back({Block::Ctrl, k, {}});
    if (!inv.invariant_factors.empty())
        blocks.push_back({Block::Unc, 0, companion_direct_sum(inv.invariant_factors)});
    for (int j = 0; j < inv.zero_cols; ++j) blocks.push_back({Block::ZeroCol});
    return realize_blocks(blocks);
}

bool pairs_feedback_similar(const PairX& a, const PairX& b) {
    if (a.m() != b.m() || a.n() != b.n())
        throw std::invalid_argument("pairs_feedback_similar: size mismatch");
    const BrunovskyInvariants ia = brunovsky_decompose(a).invariants;
    const BrunovskyInvariants ib = brunovsky_decompose(b).invariants;
    return ia.ctrl_indices == ib.ctrl_indices && ia.zero_cols == ib.zero_cols &&
           ia.invariant_factors == ib.invariant_factors;
}

template <class T>
MatrixPairT<T> canonical_pair_F(int m, int n) {
    if (n < 1)
        throw std::invalid_argument(
            "canonical_pair_F: n must be >= 1 (pairs without inputs reduce only to spectral data)");
    if (m < 0) throw std::invalid_argument("canonical_pair_F: negative m");
    if (m <= n) return {make_F<T>(m, n), Matrix<T>(m, m)};
    Matrix<T> b(m, n);
    b.set_block(0, 0, Matrix<T>::identity(n));
    Matrix<T> a(m, m);
    a.set_block(n, 0, make_F<T>(m - n, m));
    return {b, a};
}

template <class T>
MatrixPairT<T> canonical_pair_H(int m, int n) {
    if (n < 1)
        throw std::invalid_argument(
            "canonical_pair_H: n must be >= 1 (pairs without inputs reduce only to spectral data)");
    if (m < 0) throw std::invalid_argument("canonical_pair_H: negative m");
    if (m <= n) return {make_G<T>(m, n), Matrix<T>(m, m)};
    Matrix<T> b(m, n);
    b.set_block(0, 0, Matrix<T>::identity(n));
    Matrix<T> a(m, m);
    a.set_block(n, 0, make_H_block<T>(m, n));
    return {b, a};
}

template <class T>
Matrix<T> make_H_block(int m, int n) {
    if (n < 1 || m <= n) throw std::invalid_argument("make_H_block: require m > n >= 1");
    const auto [alpha, beta] = alpha_beta(m, n);
    Matrix<T> h(m - n, m);
    h.set_block(0, 0, Matrix<T>::identity((alpha - 1) * n));
    h.set_block((alpha - 1) * n, (alpha - 1) * n, make_G<T>(beta, n));
    return h;
}

template <class T>
Matrix<T> make_R_gamma(int gamma, const Matrix<T>& S1, const Matrix<T>& S2, const Matrix<T>& S3,
                       const Matrix<T>& S4, int n, int beta) {
    if (gamma < 1) throw std::invalid_argument("make_R_gamma: gamma must be >= 1");
    if (beta < 1 || beta > n) throw std::invalid_argument("make_R_gamma: require 0 < beta <= n");
    const int nb = n - beta;
    if (S1.rows() != nb || S1.cols() != nb || S3.rows() != beta || S3.cols() != beta ||
        S2.rows() != nb || S2.cols() != beta || S4.rows() != nb || S4.cols() != beta)
        throw std::invalid_argument("make_R_gamma: block size mismatch");
    const int size = (gamma - 1) * n + beta;
    Matrix<T> r(size, size);
    for (int b = 0; b < gamma - 1; ++b) {
        const int off = b * n;
        r.set_block(off, off, S1);
        r.set_block(off, off + nb, S2);
        r.set_block(off + nb, off + nb, S3);
        if (b + 1 < gamma - 1) {
            r.set_block(off, off + n + nb, S4);
        } else {
            r.set_block(off, (gamma - 1) * n, S4);
        }
    }
    r.set_block((gamma - 1) * n, (gamma - 1) * n, S3);
    return r;
}

template <class T>
PairWitnessT<T> endomorphism_from_params(int m, int n, const Matrix<T>& S1, const Matrix<T>& S2,
                                         const Matrix<T>& S3, const Matrix<T>& S4) {
    const auto [alpha, beta] = alpha_beta(m, n);
    const Matrix<T> r2 = make_R_gamma<T>(alpha + 2, S1, S2, S3, S4, n, beta);
    const Matrix<T> r1 = make_R_gamma<T>(alpha + 1, S1, S2, S3, S4, n, beta);
    return {r1, r2.block(0, 0, n, n), r2.block(0, n, n, m)};
}

MatX pair_stabilizer_system(const PairX& p) {
    const int m = p.m(), n = p.n();
    const int cols = m * m + n * n + n * m;
    MatX sys(m * n + m * m, cols);
    const MatX im = MatX::identity(m);
    const MatX in = MatX::identity(n);
    // B P - S B = 0
    sys.set_block(0, m * m, kron(p.B, in));
    sys.set_block(0, 0, -kron(im, p.B.transpose()));
    // B U + A S - S A = 0
    sys.set_block(m * n, m * m + n * n, kron(p.B, im));
    sys.set_block(m * n, 0, kron(p.A, im) - kron(im, p.A.transpose()));
    return sys;
}

int pair_stabilizer_dimension(const PairX& p) {
    return static_cast<int>(nullspace_basis(pair_stabilizer_system(p)).size());
}

template struct MatrixPairT<Rat>;
template struct MatrixPairT<Cplx>;
template struct PairWitnessT<Rat>;
template struct PairWitnessT<Cplx>;
template MatrixPairT<Rat> apply_pair_feedback(const MatrixPairT<Rat>&, const PairWitnessT<Rat>&);
template MatrixPairT<Cplx> apply_pair_feedback(const MatrixPairT<Cplx>&, const PairWitnessT<Cplx>&);
template PairWitnessT<Rat> compose(const PairWitnessT<Rat>&, const PairWitnessT<Rat>&);
template PairWitnessT<Cplx> compose(const PairWitnessT<Cplx>&, const PairWitnessT<Cplx>&);
template PairWitnessT<Rat> inverse_witness(const PairWitnessT<Rat>&);
template PairWitnessT<Cplx> inverse_witness(const PairWitnessT<Cplx>&);
template double pair_witness_residual(const MatrixPairT<Rat>&, const MatrixPairT<Rat>&,
                                      const PairWitnessT<Rat>&);
template double pair_witness_residual(const MatrixPairT<Cplx>&, const MatrixPairT<Cplx>&,
                                      const PairWitnessT<Cplx>&);
template MatrixPairT<Rat> canonical_pair_F(int, int);
template MatrixPairT<Cplx> canonical_pair_F(int, int);
template MatrixPairT<Rat> canonical_pair_H(int, int);
template MatrixPairT<Cplx> canonical_pair_H(int, int);
template Matrix<Rat> make_H_block(int, int);
template Matrix<Cplx> make_H_block(int, int);
template Matrix<Rat> make_R_gamma(int, const Matrix<Rat>&, const Matrix<Rat>&, const Matrix<Rat>&,
                                  const Matrix<Rat>&, int, int);
template Matrix<Cplx> make_R_gamma(int, const Matrix<Cplx>&, const Matrix<Cplx>&,
                                   const Matrix<Cplx>&, const Matrix<Cplx>&, int, int);
template PairWitnessT<Rat> endomorphism_from_params(int, int, const Matrix<Rat>&,
                                                    const Matrix<Rat>&, const Matrix<Rat>&,
                                                    const Matrix<Rat>&);
template PairWitnessT<Cplx> endomorphism_from_params(int, int, const Matrix<Cplx>&,
                                                     const Matrix<Cplx>&, const Matrix<Cplx>&,
                                                     const Matrix<Cplx>&);

}  // namespace feedcanon
