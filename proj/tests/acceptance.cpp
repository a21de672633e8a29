// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL]
// line; the binary exits nonzero if any executed criterion fails.
// Run all criteria by default, or a single one with --criterion N.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/orbit.hpp"
#include "feedcanon/pairs.hpp"
#include "feedcanon/reduction.hpp"
#include "feedcanon/rng.hpp"
#include "feedcanon/sweep.hpp"
#include "feedcanon/triples.hpp"

using namespace feedcanon;

namespace {

struct Checker {
    long failures = 0;
    long checks = 0;
    std::string first_failure;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
};

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

MatX random_matx(Rng& rng, int rows, int cols, long lo, long hi) {
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rat(rng.uniform_int(lo, hi));
    return m;
}

TripleF add(const TripleF& x, const TripleF& y) { return {x.C + y.C, x.B + y.B, x.A + y.A}; }

// --------------------------------------------------------------------
// 1. Rigidity threshold: the integer sign test agrees with a 100-digit
//    evaluation of m < n(1+sqrt(5))/2 on the whole 200x200 grid, and
//    consecutive Fibonacci sizes alternate with margin +-1. Under 1 s.
bool criterion_1(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    const int prec_bits = 512;  // > 100 decimal digits
    mpf_class phi(0, prec_bits);
    {
        mpf_class five(5, prec_bits);
        phi = (1 + sqrt(five)) / 2;
    }
    for (int m = 1; m <= 200; ++m)
        for (int n = 1; n <= 200; ++n) {
            const bool high_prec = mpf_class(m, prec_bits) < mpf_class(n, prec_bits) * phi;
            ck.require(rigid_exists(m, n) == high_prec,
                       "threshold mismatch at (" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
    // fib[k] = F_{k+1}, so the pair (F_{k+1}, F_k) is (fib[k], fib[k-1]).
    long long fib[13] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233};
    for (int k = 1; k <= 12; ++k) {
        const long long margin = rigid_margin(static_cast<int>(fib[k]), static_cast<int>(fib[k - 1]));
        ck.require(margin == (k % 2 == 1 ? -1 : 1), "Fibonacci margin at k=" + std::to_string(k));
        ck.require(rigid_exists(static_cast<int>(fib[k]), static_cast<int>(fib[k - 1])) ==
                       (k % 2 == 1),
                   "Fibonacci alternation at k=" + std::to_string(k));
    }
    const double dt = now_seconds() - t0;
    ck.require(dt < 1.0, "runtime " + std::to_string(dt) + "s exceeds 1s");
    detail = std::to_string(ck.checks) + " checks, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 2. Rigid orbit fullness: exact orbit dimension of the canonical rigid
//    triple equals m(n+2m) on the stated grid. Under 30 s.
bool criterion_2(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    int cells = 0;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 2 * n; ++m) {
            if (m > n && !rigid_exists(m, n)) continue;
            const OrbitReport r = orbit_dimension(rigid_canonical<Rat>(m, n));
            ck.require(r.orbit_dim == m * (n + 2 * m) && r.rigid,
                       "orbit not full at (" + std::to_string(m) + "," + std::to_string(n) + ")");
            ++cells;
        }
    const double dt = now_seconds() - t0;
    ck.require(dt < 30.0, "runtime exceeds 30s");
    detail = std::to_string(cells) + " rigid cells, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 3. Non-rigidity universality: above the threshold, no seeded random
//    exact triple reaches full orbit dimension. Under 60 s.
bool criterion_3(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    int samples_run = 0;
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 6; ++m) {
            if (rigid_margin(m, n) <= 0) continue;
            for (int s = 0; s < 20; ++s) {
                const TripleX t = random_triple_exact(m, n, Rng::mix(3, static_cast<uint64_t>(s)));
                const OrbitReport r = orbit_dimension(t);
                ck.require(r.orbit_dim < m * (n + 2 * m) && !r.rigid,
                           "full-rank sample at (" + std::to_string(m) + "," + std::to_string(n) +
                               ") seed " + std::to_string(s));
                ++samples_run;
            }
        }
    const double dt = now_seconds() - t0;
    ck.require(dt < 60.0, "runtime exceeds 60s");
    detail = std::to_string(samples_run) + " samples, zero exceptions, " +
             std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 4. Endomorphism dimension: the stabilizer of the canonical pair has
//    dimension n^2 and the block parametrization spans exactly the
//    solution space of the defining identity. Under 30 s.
bool criterion_4(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 8; ++m) {
            const PairX h = canonical_pair_H<Rat>(m, n);
            const MatX sys = pair_stabilizer_system(h);
            const auto nullsp = nullspace_basis(sys);
            ck.require(static_cast<int>(nullsp.size()) == n * n,
                       "stabilizer dim != n^2 at (" + std::to_string(m) + "," + std::to_string(n) + ")");
            ck.require(pair_stabilizer_dimension(h) == n * n, "pair_stabilizer_dimension mismatch");

            // containment: every parameter direction solves the identity
            const auto [alpha, beta] = alpha_beta(m, n);
            const int nb = n - beta;
            MatX param_vectors(m * m + n * n + n * m, n * n);
            int col = 0;
            auto push = [&](const MatX& s1, const MatX& s2, const MatX& s3, const MatX& s4) {
                const PairWitnessX w = endomorphism_from_params<Rat>(m, n, s1, s2, s3, s4);
                MatX z = vstack(vstack(vec(w.S), vec(w.P)), vec(w.U));
                param_vectors.set_block(0, col, z);
                ck.require((sys * z).is_zero(), "parameter direction outside the solution space at (" +
                                                    std::to_string(m) + "," + std::to_string(n) + ")");
                ++col;
            };
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j) {
                    MatX s1(nb, nb);
                    s1(i, j) = Rat(1);
                    push(s1, MatX(nb, beta), MatX(beta, beta), MatX(nb, beta));
                }
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < beta; ++j) {
                    MatX s2(nb, beta);
                    s2(i, j) = Rat(1);
                    push(MatX(nb, nb), s2, MatX(beta, beta), MatX(nb, beta));
                }
            for (int i = 0; i < beta; ++i)
                for (int j = 0; j < beta; ++j) {
                    MatX s3(beta, beta);
                    s3(i, j) = Rat(1);
                    push(MatX(nb, nb), MatX(nb, beta), s3, MatX(nb, beta));
                }
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < beta; ++j) {
                    MatX s4(nb, beta);
                    s4(i, j) = Rat(1);
                    push(MatX(nb, nb), MatX(nb, beta), MatX(beta, beta), s4);
                }
            // dimension match: the n^2 directions are independent, so they
            // span the whole n^2-dimensional solution space
            ck.require(col == n * n, "parameter count");
            ck.require(exact_rank(param_vectors) == n * n,
                       "parametrization degenerate at (" + std::to_string(m) + "," +
                           std::to_string(n) + ")");
        }
    const double dt = now_seconds() - t0;
    ck.require(dt < 30.0, "runtime exceeds 30s");
    detail = "grid n<=5, m<=8, containment both ways, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 5. Brunovsky round trip: 200 seeded exact pairs; the witness carries
//    the pair exactly onto the assembled canonical form, and the
//    invariants are consistent.
bool criterion_5(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    Rng size_rng(5);
    for (int c = 0; c < 200; ++c) {
        const int m = static_cast<int>(size_rng.uniform_int(0, 6));
        const int n = static_cast<int>(size_rng.uniform_int(0, 6));
        Rng rng(Rng::mix(50, static_cast<uint64_t>(c)));
        const PairX p{random_matx(rng, m, n, -3, 3), random_matx(rng, m, m, -3, 3)};
        const BrunovskyResult r = brunovsky_decompose(p);
        const PairX canon = brunovsky_assemble(r.invariants);
        ck.require(apply_pair_feedback(p, r.witness) == canon,
                   "witness does not verify exactly, case " + std::to_string(c));
        ck.require(pair_witness_residual(p, canon, r.witness) == 0.0,
                   "nonzero residual, case " + std::to_string(c));
        ck.require(r.invariants.state_dim() == m, "state dimension sum, case " + std::to_string(c));
        ck.require(r.invariants.input_dim() == n, "input dimension sum, case " + std::to_string(c));
    }
    const double dt = now_seconds() - t0;
    detail = "200 pairs, exact witnesses, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 6. Reduction soundness: seeded float triples collapse to the rigid
//    canonical triple with exact structure, |nabla| < eps, and witness
//    residual below 1e-8.
bool criterion_6(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    const double eps = 1e-6;
    int runs = 0;
    for (auto [m, n] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{4, 3}, std::pair{8, 5}}) {
        for (int s = 0; s < 50; ++s) {
            const TripleF t = random_triple_float(m, n, Rng::mix(6, static_cast<uint64_t>(s)));
            const RigidReduction r = reduce_to_rigid(t, eps);
            ck.require(r.triple == rigid_canonical<Cplx>(m, n),
                       "output not bit-exact canonical at (" + std::to_string(m) + "," +
                           std::to_string(n) + ") seed " + std::to_string(s));
            const CollapseResult c = collapse_trace(t, r.trace);
            ck.require(triple_norm(c.nabla) < eps, "|nabla| >= eps at (" + std::to_string(m) + "," +
                                                       std::to_string(n) + ")");
            const WitnessCheck wc = verify_witness(add(t, c.nabla), r.triple, c.witness, 1e-8);
            ck.require(wc.ok, "witness residual " + std::to_string(wc.residual) + " at (" +
                                  std::to_string(m) + "," + std::to_string(n) + ")");
            ++runs;
        }
    }
    const double dt = now_seconds() - t0;
    detail = std::to_string(runs) + " pipelines, eps 1e-6, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 7. Alpha-n structure: the reduced triple carries a diagonal leading
//    block with separated eigenvalues, exact ones in the scaled row,
//    exact structural blocks, and a verifying witness.
bool criterion_7(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    const double eps = 1e-6;
    for (auto [m, n] : {std::pair{4, 2}, std::pair{2, 1}}) {
        for (int s = 0; s < 20; ++s) {
            const TripleF t = random_triple_float(m, n, Rng::mix(7, static_cast<uint64_t>(s)));
            const AlphaNReduction r = reduce_alpha_n(t, eps);
            const std::string at =
                " at (" + std::to_string(m) + "," + std::to_string(n) + ") seed " + std::to_string(s);

            MatF c_block(m, n);
            c_block.set_block(0, 0, MatF::identity(n));
            MatF b_block(m, m);
            b_block.set_block(n, 0, make_F<Cplx>(m - n, m));
            ck.require(r.triple.C == c_block, "C block not exact" + at);
            ck.require(r.triple.B == b_block, "B block not exact" + at);
            ck.require(r.triple.A.block(0, 0, n, m).is_zero(), "A top strip not exact" + at);

            const MatF n11 = r.triple.A.block(n, 0, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) ck.require(n11(i, j) == Cplx(0.0, 0.0), "N11 not diagonal" + at);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    ck.require(std::abs(n11(i, i) - n11(j, j)) > 1e-8, "eigenvalue gap" + at);
            for (int j = 1; j < n; ++j)
                ck.require(r.triple.A(n, n + j) == Cplx(1.0, 0.0), "scaled entry not exactly 1" + at);

            const CollapseResult c = collapse_trace(t, r.trace);
            ck.require(triple_norm(c.nabla) < eps, "|nabla| >= eps" + at);
            ck.require(verify_witness(add(t, c.nabla), r.triple, c.witness, 1e-8).ok,
                       "witness residual" + at);
        }
    }
    const double dt = now_seconds() - t0;
    detail = "40 pipelines at (4,2) and (2,1), " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 8. Strict-equivalence bridge: witnesses translate to (S, R) pairs
//    that pass the polynomial identity, and pattern-violating R's are
//    rejected.
bool criterion_8(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    for (int c = 0; c < 100; ++c) {
        Rng rng(Rng::mix(8, static_cast<uint64_t>(c)));
        const int m = static_cast<int>(rng.uniform_int(1, 4));
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const TripleX t = random_triple_exact(m, n, Rng::mix(80, static_cast<uint64_t>(c)));
        MatX s(0, 0), p(0, 0);
        do {
            s = random_matx(rng, m, m, -3, 3);
        } while (!is_invertible(s));
        do {
            p = random_matx(rng, n, n, -3, 3);
        } while (!is_invertible(p));
        const FeedbackWitnessX w{s, p, random_matx(rng, n, m, -3, 3), random_matx(rng, n, m, -3, 3)};
        const TripleX t2 = apply_feedback(t, w);
        const MatX r = w.right_factor();
        ck.require(strict_equiv_check(t, t2, w.S, r), "forward bridge, case " + std::to_string(c));
        const FeedbackWitnessX back = witness_from_strict(w.S, r);
        ck.require(apply_feedback(t, back) == t2, "extracted witness, case " + std::to_string(c));

        // violate one zero block of the pattern and expect rejection
        MatX bad = r;
        const int which = static_cast<int>(rng.uniform_int(0, 3));
        const int row_off = which < 2 ? n : n + m;
        const int col_off = which == 0 ? 0 : (which == 1 ? n + m : (which == 2 ? 0 : n));
        bad(row_off, col_off) = bad(row_off, col_off) + Rat(1);
        bool rejected = false;
        try {
            (void)witness_from_strict(w.S, bad);
        } catch (const std::invalid_argument&) {
            rejected = true;
        }
        ck.require(rejected, "pattern violation accepted, case " + std::to_string(c));
    }
    const double dt = now_seconds() - t0;
    detail = "100 cases, both directions, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

// --------------------------------------------------------------------
// 9. Sweep reproducibility: byte-identical CSV across runs and thread
//    counts, and every row satisfies the cell invariant.
bool criterion_9(std::string& detail) {
    const double t0 = now_seconds();
    Checker ck;
    SweepConfig cfg;
    cfg.max_m = 6;
    cfg.max_n = 4;
    cfg.samples = 10;
    cfg.seed = 9;
    cfg.threads = 1;
    const std::string run1 = sweep_csv(cfg);
    const std::string run2 = sweep_csv(cfg);
    ck.require(run1 == run2, "two single-threaded runs differ");
    cfg.threads = 4;
    const std::string run4 = sweep_csv(cfg);
    ck.require(run1 == run4, "thread counts 1 and 4 differ");

    for (const SweepCell& c : run_sweep(cfg)) {
        const std::string at = " at (" + std::to_string(c.m) + "," + std::to_string(c.n) + ")";
        ck.require(c.ambient_dim == c.m * (c.n + 2 * c.m), "ambient dimension" + at);
        ck.require(c.max_orbit_dim <= c.ambient_dim, "orbit above ambient" + at);
        ck.require((c.max_orbit_dim == c.ambient_dim) == (c.full_rank_count > 0),
                   "full-rank bookkeeping" + at);
        if (!c.predicted_rigid)
            ck.require(c.full_rank_count == 0, "non-rigid cell with a full-rank sample" + at);
        else
            ck.require(c.full_rank_count > 0, "rigid cell with no full-rank sample" + at);
    }
    const double dt = now_seconds() - t0;
    detail = "3 runs of the 6x4 grid, 10 samples, " + std::to_string(dt).substr(0, 5) + "s";
    if (ck.failures) detail += "; first failure: " + ck.first_failure;
    return ck.failures == 0;
}

struct Criterion {
    int id;
    const char* name;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "rigidity threshold vs 100-digit arithmetic", criterion_1},
    {2, "rigid canonical triples have full orbit dimension", criterion_2},
    {3, "no rigid triple exists above the threshold", criterion_3},
    {4, "canonical pair stabilizer has dimension n^2 with exact span", criterion_4},
    {5, "Brunovsky decompose/assemble round trip with exact witness", criterion_5},
    {6, "rigid reduction pipeline: exact target, budget, residual", criterion_6},
    {7, "alpha-n normal form structure", criterion_7},
    {8, "feedback similarity <-> strict equivalence bridge", criterion_8},
    {9, "sweep reproducibility and cell invariants", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
