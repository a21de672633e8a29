#include "feedcanon/smith.hpp"

#include <stdexcept>

#include "feedcanon/exact_linalg.hpp"

namespace feedcanon {

PolyMat poly_identity(int n) {
    PolyMat m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i) m[i][i] = Poly::constant(Rat(1));
    return m;
}

PolyMat poly_mul(const PolyMat& a, const PolyMat& b) {
    const int r = static_cast<int>(a.size());
    const int inner = r == 0 ? 0 : static_cast<int>(a[0].size());
    if (inner != static_cast<int>(b.size())) throw std::invalid_argument("poly_mul: shape mismatch");
    const int c = inner == 0 ? 0 : static_cast<int>(b[0].size());
    PolyMat out(r, std::vector<Poly>(c));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < c; ++j)
                if (!b[k][j].is_zero()) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

PolyMat char_matrix(const MatX& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_matrix: matrix not square");
    const int n = a.rows();
    PolyMat m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly p = Poly::constant(-a(i, j));
            if (i == j) p = p + Poly::x();
            m[i][j] = p;
        }
    return m;
}

namespace {

// Work state for the Smith reduction; every elementary operation is
// mirrored on the multiplier and its inverse.
struct SmithWork {
    PolyMat w, U, Uinv, V, Vinv;
    int rows, cols;

    explicit SmithWork(const PolyMat& a) {
        rows = static_cast<int>(a.size());
        cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
        w = a;
        U = poly_identity(rows);
        Uinv = poly_identity(rows);
        V = poly_identity(cols);
        Vinv = poly_identity(cols);
    }

    void row_swap(int i, int j) {
        if (i == j) return;
        std::swap(w[i], w[j]);
        std::swap(U[i], U[j]);
        for (int r = 0; r < rows; ++r) std::swap(Uinv[r][i], Uinv[r][j]);
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(w[r][i], w[r][j]);
        for (int r = 0; r < cols; ++r) std::swap(V[r][i], V[r][j]);
        std::swap(Vinv[i], Vinv[j]);
    }
    // row i += p * row j
    void row_addmul(int i, int j, const Poly& p) {
        if (p.is_zero()) return;
        for (int c = 0; c < cols; ++c) w[i][c] = w[i][c] + p * w[j][c];
        for (int c = 0; c < rows; ++c) U[i][c] = U[i][c] + p * U[j][c];
        for (int r = 0; r < rows; ++r) Uinv[r][j] = Uinv[r][j] - p * Uinv[r][i];
    }
    // col j += p * col i
    void col_addmul(int j, int i, const Poly& p) {
        if (p.is_zero()) return;
        for (int r = 0; r < rows; ++r) w[r][j] = w[r][j] + p * w[r][i];
        for (int r = 0; r < cols; ++r) V[r][j] = V[r][j] + p * V[r][i];
        for (int c = 0; c < cols; ++c) Vinv[i][c] = Vinv[i][c] - p * Vinv[j][c];
    }
    void row_scale(int i, const Rat& c) {
        for (int j = 0; j < cols; ++j) w[i][j] = c * w[i][j];
        for (int j = 0; j < rows; ++j) U[i][j] = c * U[i][j];
        const Rat cinv = Rat(1) / c;
        for (int r = 0; r < rows; ++r) Uinv[r][i] = cinv * Uinv[r][i];
    }

    bool find_min_degree(int k, int& bi, int& bj) const {
        int best = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j) {
                if (w[i][j].is_zero()) continue;
                if (best < 0 || w[i][j].degree() < best) {
                    best = w[i][j].degree();
                    bi = i;
                    bj = j;
                }
            }
        return best >= 0;
    }
};

}  // namespace

PolySmith smith_form(const PolyMat& a) {
    SmithWork s(a);
    const int kmax = std::min(s.rows, s.cols);
    for (int k = 0; k < kmax; ++k) {
        for (;;) {
            int bi = 0, bj = 0;
            if (!s.find_min_degree(k, bi, bj)) goto done;
            s.row_swap(k, bi);
            s.col_swap(k, bj);
            const Poly& pivot = s.w[k][k];

            bool dirty = false;
            for (int i = k + 1; i < s.rows; ++i) {
                if (s.w[i][k].is_zero()) continue;
                s.row_addmul(i, k, -(s.w[i][k] / pivot));
                if (!s.w[i][k].is_zero()) dirty = true;  // remainder of lower degree
            }
            if (dirty) continue;
            for (int j = k + 1; j < s.cols; ++j) {
                if (s.w[k][j].is_zero()) continue;
                s.col_addmul(j, k, -(s.w[k][j] / pivot));
                if (!s.w[k][j].is_zero()) dirty = true;
            }
            if (dirty) continue;

            // Pivot must divide everything that remains; pull a failing
            // row up and let the degree argument shrink the pivot.
            bool divides_all = true;
            for (int i = k + 1; i < s.rows && divides_all; ++i)
                for (int j = k + 1; j < s.cols && divides_all; ++j)
                    if (!(s.w[i][j] % pivot).is_zero()) {
                        s.row_addmul(k, i, Poly::constant(Rat(1)));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (!s.w[k][k].is_monic()) s.row_scale(k, Rat(1) / s.w[k][k].leading());
    }
done:
    PolySmith out;
    out.diag.resize(kmax);
    for (int k = 0; k < kmax; ++k) out.diag[k] = s.w[k][k];
    for (int k = 0; k + 1 < kmax; ++k) {
        if (out.diag[k + 1].is_zero()) continue;
        if (out.diag[k].is_zero() || !(out.diag[k + 1] % out.diag[k]).is_zero())
            throw std::logic_error("smith_form: divisibility chain violated");
    }
    out.U = std::move(s.U);
    out.Uinv = std::move(s.Uinv);
    out.V = std::move(s.V);
    out.Vinv = std::move(s.Vinv);
    return out;
}

std::vector<Poly> invariant_factors(const MatX& a) {
    if (a.rows() == 0) return {};
    PolySmith s = smith_form(char_matrix(a));
    std::vector<Poly> out;
    for (const Poly& d : s.diag) {
        if (d.is_zero()) throw std::logic_error("invariant_factors: xI - A cannot be singular");
        if (d.degree() >= 1) out.push_back(d);
    }
    return out;
}

MatX companion(const Poly& f) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("companion: need a monic polynomial of degree >= 1");
    const int d = f.degree();
    MatX c(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = Rat(1);
    for (int i = 0; i < d; ++i) c(i, d - 1) = -f.coeff(i);
    return c;
}

MatX companion_direct_sum(const std::vector<Poly>& factors) {
    MatX acc(0, 0);
    for (const Poly& f : factors) acc = block_diag(acc, companion(f));
    return acc;
}

MatX similarity_to_companion_form(const MatX& a, const std::vector<Poly>& factors) {
    const int n = a.rows();
    const MatX b = companion_direct_sum(factors);
    if (b.rows() != n) throw std::invalid_argument("similarity_to_companion_form: degree sum mismatch");
    if (n == 0) return MatX(0, 0);

    const PolySmith sa = smith_form(char_matrix(a));
    const PolySmith sb = smith_form(char_matrix(b));
    if (sa.diag != sb.diag)
        throw std::logic_error("similarity_to_companion_form: invariant factors disagree");

    // xI - b = (Uinv_b U_a) (xI - a) (V_a Vinv_b); the right value of the
    // right multiplier at b is a constant similarity.
    const PolyMat q = poly_mul(sa.V, sb.Vinv);
    int dmax = 0;
    for (const auto& row : q)
        for (const Poly& p : row) dmax = std::max(dmax, p.degree());
    MatX t(n, n);
    MatX bpow = MatX::identity(n);
    for (int d = 0; d <= dmax; ++d) {
        MatX qd(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (q[i][j].degree() >= d) qd(i, j) = q[i][j].coeff(d);
        t = t + qd * bpow;
        if (d < dmax) bpow = bpow * b;
    }

    if (a * t != t * b) throw std::logic_error("similarity_to_companion_form: intertwining failed");
    if (!is_invertible(t)) throw std::logic_error("similarity_to_companion_form: singular transform");
    return t;
}

}  // namespace feedcanon
