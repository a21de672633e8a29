#include "feedcanon/exact_linalg.hpp"

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace feedcanon {

namespace {

// Gaussian integer used inside the fraction-free elimination. Bareiss
// intermediates are minors of the cleared input, so every division below
// is exact in Z[i]; exactness is still checked, not assumed.
struct GInt {
    mpz_class re, im;

    bool is_zero() const { return re == 0 && im == 0; }
};

GInt mul(const GInt& a, const GInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GInt sub(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }

GInt div_exact(const GInt& a, const GInt& b) {
    const mpz_class den = b.re * b.re + b.im * b.im;
    mpz_class nre = a.re * b.re + a.im * b.im;
    mpz_class nim = a.im * b.re - a.re * b.im;
    GInt q;
    mpz_class r;
    mpz_tdiv_qr(q.re.get_mpz_t(), r.get_mpz_t(), nre.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("exact_linalg: inexact Gaussian-integer division");
    mpz_tdiv_qr(q.im.get_mpz_t(), r.get_mpz_t(), nim.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("exact_linalg: inexact Gaussian-integer division");
    return q;
}

using GMat = std::vector<std::vector<GInt>>;

// Clears denominators row by row; scaling rows by positive integers
// preserves rank and kernel.
GMat clear_denominators(const MatX& m) {
    GMat g(m.rows(), std::vector<GInt>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (int j = 0; j < m.cols(); ++j) {
            mpz_class t;
            mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), m(i, j).re.get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), t.get_mpz_t(), m(i, j).im.get_den_mpz_t());
        }
        for (int j = 0; j < m.cols(); ++j) {
            const Rat& x = m(i, j);
            g[i][j].re = x.re.get_num() * (l / x.re.get_den());
            g[i][j].im = x.im.get_num() * (l / x.im.get_den());
        }
    }
    return g;
}

struct Ref {
    GMat m;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Fraction-free row echelon form. Zero columns are skipped; the divisor
// is the previous step's pivot.
Ref bareiss_ref(GMat g, int rows, int cols, bool parallel) {
    Ref ref;
    GInt prev{1, 0};
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!g[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) std::swap(g[piv], g[r]);
        const std::vector<GInt>& prow = g[r];
        const GInt pivot = prow[col];
        const int lo = r + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && rows - lo >= 16)
#endif
        for (int i = lo; i < rows; ++i) {
            std::vector<GInt>& row = g[i];
            const GInt head = row[col];
            if (head.is_zero()) {
                // Rows already zero in the pivot column still pick up the
                // Bareiss rescaling to keep later divisions exact.
                for (int j = col + 1; j < cols; ++j)
                    if (!row[j].is_zero()) row[j] = div_exact(mul(row[j], pivot), prev);
            } else {
                for (int j = col + 1; j < cols; ++j)
                    row[j] = div_exact(sub(mul(row[j], pivot), mul(head, prow[j])), prev);
            }
            row[col] = GInt{0, 0};
        }
        prev = pivot;
        ref.pivot_cols.push_back(col);
        ++r;
    }
    ref.rank = r;
    ref.m = std::move(g);
    return ref;
}

Rat to_rat(const GInt& z) { return Rat(mpq_class(z.re), mpq_class(z.im)); }

int rank_impl(const MatX& m, bool parallel) {
    if (m.empty()) return 0;
    return bareiss_ref(clear_denominators(m), m.rows(), m.cols(), parallel).rank;
}

}  // namespace

int exact_rank(const MatX& m) { return rank_impl(m, true); }

int exact_rank_serial(const MatX& m) { return rank_impl(m, false); }

std::vector<MatX> nullspace_basis(const MatX& m) {
    const int n = m.cols();
    if (n == 0) return {};
    std::vector<MatX> basis;
    if (m.rows() == 0) {
        for (int j = 0; j < n; ++j) {
            MatX v(n, 1);
            v(j, 0) = Rat(1);
            basis.push_back(v);
        }
        return basis;
    }
    Ref ref = bareiss_ref(clear_denominators(m), m.rows(), n, true);
    std::vector<bool> is_pivot(n, false);
    for (int c : ref.pivot_cols) is_pivot[c] = true;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        MatX v(n, 1);
        v(f, 0) = Rat(1);
        for (int r = ref.rank - 1; r >= 0; --r) {
            const int pc = ref.pivot_cols[r];
            if (pc > f) continue;
            Rat s;
            for (int c = pc + 1; c < n; ++c) {
                if (ref.m[r][c].is_zero() || v(c, 0).is_zero()) continue;
                s += to_rat(ref.m[r][c]) * v(c, 0);
            }
            v(pc, 0) = -s / to_rat(ref.m[r][pc]);
        }
        if (!(m * v).is_zero()) throw std::logic_error("nullspace_basis: residual check failed");
        basis.push_back(std::move(v));
    }
    return basis;
}

RowReduction row_reduce(const MatX& m) {
    RowReduction rr;
    rr.rref = m;
    const int rows = m.rows(), cols = m.cols();
    rr.E = MatX::identity(rows);
    rr.Einv = MatX::identity(rows);
    MatX& a = rr.rref;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!a(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            a.swap_rows(piv, r);
            rr.E.swap_rows(piv, r);
            rr.Einv.swap_cols(piv, r);
        }
        const Rat p = a(r, col);
        if (!(p == Rat(1))) {
            const Rat pinv = Rat(1) / p;
            for (int j = 0; j < cols; ++j) a(r, j) = pinv * a(r, j);
            for (int j = 0; j < rows; ++j) rr.E(r, j) = pinv * rr.E(r, j);
            for (int i = 0; i < rows; ++i) rr.Einv(i, r) = rr.Einv(i, r) * p;
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, col).is_zero()) continue;
            const Rat f = a(i, col);
            for (int j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
            for (int j = 0; j < rows; ++j) rr.E(i, j) -= f * rr.E(r, j);
            for (int k = 0; k < rows; ++k) rr.Einv(k, r) += f * rr.Einv(k, i);
        }
        rr.pivot_cols.push_back(col);
        ++r;
    }
    rr.rank = r;
    return rr;
}

MatX solve(const MatX& a, const MatX& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    const int n = a.rows();
    MatX work = hstack(a, b);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!work(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularMatrixError("solve: singular matrix");
        if (piv != col) work.swap_rows(piv, col);
        const Rat pinv = Rat(1) / work(col, col);
        for (int j = col; j < work.cols(); ++j) work(col, j) = pinv * work(col, j);
        for (int i = 0; i < n; ++i) {
            if (i == col || work(i, col).is_zero()) continue;
            const Rat f = work(i, col);
            for (int j = col; j < work.cols(); ++j) work(i, j) -= f * work(col, j);
        }
    }
    return work.block(0, n, n, b.cols());
}

MatX inverse(const MatX& a) { return solve(a, MatX::identity(a.rows())); }

bool is_invertible(const MatX& a) {
    return a.rows() == a.cols() && exact_rank(a) == a.rows();
}

}  // namespace feedcanon
