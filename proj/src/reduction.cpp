#include "feedcanon/reduction.hpp"

#include <cmath>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/float_linalg.hpp"

namespace feedcanon {

double budget_allowance(const PerturbationBudget& b) {
    if (!(b.epsilon > 0.0)) throw std::invalid_argument("budget_allowance: epsilon must be positive");
    if (b.step_index == 0) return b.epsilon / 2.0;
    return std::ldexp(b.epsilon, -(b.step_index + 1)) / (b.norm_S_acc * b.norm_Rinv_acc);
}

double pair_norm(const PairF& p) { return frobenius_norm(p.B) + frobenius_norm(p.A); }

namespace {

double checked_allowance(double epsilon, int index, double ns, double nrinv) {
    return budget_allowance({epsilon, index, ns, nrinv});
}

TripleF add(const TripleF& a, const TripleF& b) {
    return {a.C + b.C, a.B + b.B, a.A + b.A};
}

PairF add(const PairF& a, const PairF& b) { return {a.B + b.B, a.A + b.A}; }

FeedbackWitnessF witness_from_products(const MatF& s_acc, const MatF& r_acc, int m, int n) {
    return {s_acc, r_acc.block(0, 0, n, n), r_acc.block(0, n + m, n, m), r_acc.block(0, n, n, m)};
}

PairWitnessF pair_witness_from_products(const MatF& s_acc, const MatF& r_acc, int m, int n) {
    return {s_acc, r_acc.block(0, 0, n, n), r_acc.block(0, n, n, m)};
}

}  // namespace

CollapseResult collapse_trace(const TripleF& t, const ReductionTrace& tr) {
    const int m = t.m(), n = t.n();
    MatF s_acc = MatF::identity(m);
    MatF r_acc = MatF::identity(n + 2 * m);
    MatF rinv_acc = MatF::identity(n + 2 * m);
    MatF nabla_blk(m, n + 2 * m);
    int index = 0;
    for (const TripleStep& step : tr.steps) {
        const double nd = triple_norm(step.delta);
        if (nd > 0.0) {
            const double cap =
                checked_allowance(tr.epsilon, index, frobenius_norm(s_acc), frobenius_norm(rinv_acc));
            if (!(nd < cap))
                throw std::runtime_error("collapse_trace: step " + std::to_string(index + 1) +
                                         " exceeds the budget allowance");
            nabla_blk = nabla_blk + s_acc * block_matrix(step.delta) * rinv_acc;
        }
        s_acc = s_acc * step.witness.S;
        r_acc = r_acc * step.witness.right_factor();
        rinv_acc = inverse_witness(step.witness).right_factor() * rinv_acc;
        ++index;
    }
    CollapseResult out;
    out.nabla = {nabla_blk.block(0, 0, m, n), nabla_blk.block(0, n, m, m),
                 nabla_blk.block(0, n + m, m, m)};
    out.witness = witness_from_products(s_acc, r_acc, m, n);
    return out;
}

PairCollapseResult collapse_pair_trace(const PairF& p, const PairReductionTrace& tr) {
    const int m = p.m(), n = p.n();
    MatF s_acc = MatF::identity(m);
    MatF r_acc = MatF::identity(n + m);
    MatF rinv_acc = MatF::identity(n + m);
    MatF nabla_blk(m, n + m);
    int index = 0;
    for (const PairStep& step : tr.steps) {
        const double nd = pair_norm(step.delta);
        if (nd > 0.0) {
            const double cap =
                checked_allowance(tr.epsilon, index, frobenius_norm(s_acc), frobenius_norm(rinv_acc));
            if (!(nd < cap))
                throw std::runtime_error("collapse_pair_trace: step " + std::to_string(index + 1) +
                                         " exceeds the budget allowance");
            nabla_blk = nabla_blk + s_acc * hstack(step.delta.B, step.delta.A) * rinv_acc;
        }
        s_acc = s_acc * step.witness.S;
        r_acc = r_acc * step.witness.right_factor();
        const PairWitnessF winv = inverse_witness(step.witness);
        rinv_acc = winv.right_factor() * rinv_acc;
        ++index;
    }
    PairCollapseResult out;
    out.nabla = {nabla_blk.block(0, 0, m, n), nabla_blk.block(0, n, m, m)};
    out.witness = pair_witness_from_products(s_acc, r_acc, m, n);
    return out;
}

namespace {

// ---------------------------------------------------------------------
// Sinks. A pipeline operates through a sink so that the same code runs
// at the top level and inside the staircase/lift recursions; every
// perturbation and witness is forwarded upward in full coordinates,
// where the root does the budget accounting.

class PairSink {
  public:
    virtual ~PairSink() = default;
    virtual const PairF& current() const = 0;
    virtual double allowance() const = 0;
    virtual void perturb(const PairF& delta) = 0;
    virtual void transform(const PairWitnessF& w) = 0;
    virtual void snap(const PairF& exact_form) = 0;
};

class TripleSink {
  public:
    virtual ~TripleSink() = default;
    virtual const TripleF& current() const = 0;
    virtual double allowance() const = 0;
    virtual void perturb(const TripleF& delta) = 0;
    virtual void transform(const FeedbackWitnessF& w) = 0;
    virtual void snap(const TripleF& exact_form) = 0;
};

class PairRootSink final : public PairSink {
  public:
    PairRootSink(const PairF& start, double epsilon) : current_(start), eps_(epsilon) {
        if (!(epsilon > 0.0)) throw std::invalid_argument("reduce: epsilon must be positive");
        if (!all_finite(start.B) || !all_finite(start.A))
            throw std::invalid_argument("reduce: non-finite entries");
        s_acc_ = MatF::identity(start.m());
        r_acc_ = MatF::identity(start.n() + start.m());
        rinv_acc_ = r_acc_;
    }

    const PairF& current() const override { return current_; }
    double allowance() const override {
        return checked_allowance(eps_, static_cast<int>(steps_.size()), frobenius_norm(s_acc_),
                                 frobenius_norm(rinv_acc_));
    }
    void perturb(const PairF& delta) override {
        const double nd = pair_norm(delta);
        if (!(nd < allowance()))
            throw std::runtime_error("reduce: perturbation exceeds the budget allowance");
        current_ = add(current_, delta);
        steps_.push_back({delta, PairWitnessF::identity(current_.m(), current_.n())});
        open_ = true;
    }
    void transform(const PairWitnessF& w) override {
        current_ = apply_pair_feedback(current_, w);
        if (open_) {
            steps_.back().witness = w;
            open_ = false;
        } else {
            steps_.push_back({PairF(MatF(current_.m(), current_.n()), MatF(current_.m(), current_.m())), w});
        }
        s_acc_ = s_acc_ * w.S;
        r_acc_ = r_acc_ * w.right_factor();
        rinv_acc_ = inverse_witness(w).right_factor() * rinv_acc_;
    }
    void snap(const PairF& exact_form) override { current_ = exact_form; }

    PairReductionTrace finish(const PairF& original) {
        PairReductionTrace tr;
        tr.epsilon = eps_;
        tr.steps = std::move(steps_);
        const PairCollapseResult c = collapse_pair_trace(original, tr);
        tr.nabla = c.nabla;
        tr.final_witness = c.witness;
        tr.budget_ok = pair_norm(tr.nabla) < eps_;
        return tr;
    }

  private:
    PairF current_;
    double eps_;
    std::vector<PairStep> steps_;
    bool open_ = false;
    MatF s_acc_, r_acc_, rinv_acc_;
};

class TripleRootSink final : public TripleSink {
  public:
    TripleRootSink(const TripleF& start, double epsilon) : current_(start), eps_(epsilon) {
        if (!(epsilon > 0.0)) throw std::invalid_argument("reduce: epsilon must be positive");
        if (!all_finite(start.C) || !all_finite(start.B) || !all_finite(start.A))
            throw std::invalid_argument("reduce: non-finite entries");
        s_acc_ = MatF::identity(start.m());
        r_acc_ = MatF::identity(start.n() + 2 * start.m());
        rinv_acc_ = r_acc_;
    }

    const TripleF& current() const override { return current_; }
    double allowance() const override {
        return checked_allowance(eps_, static_cast<int>(steps_.size()), frobenius_norm(s_acc_),
                                 frobenius_norm(rinv_acc_));
    }
    void perturb(const TripleF& delta) override {
        const double nd = triple_norm(delta);
        if (!(nd < allowance()))
            throw std::runtime_error("reduce: perturbation exceeds the budget allowance");
        current_ = add(current_, delta);
        steps_.push_back({delta, FeedbackWitnessF::identity(current_.m(), current_.n())});
        open_ = true;
    }
    void transform(const FeedbackWitnessF& w) override {
        current_ = apply_feedback(current_, w);
        if (open_) {
            steps_.back().witness = w;
            open_ = false;
        } else {
            const int m = current_.m(), n = current_.n();
            steps_.push_back({TripleF(MatF(m, n), MatF(m, m), MatF(m, m)), w});
        }
        s_acc_ = s_acc_ * w.S;
        r_acc_ = r_acc_ * w.right_factor();
        rinv_acc_ = inverse_witness(w).right_factor() * rinv_acc_;
    }
    void snap(const TripleF& exact_form) override { current_ = exact_form; }

    ReductionTrace finish(const TripleF& original) {
        ReductionTrace tr;
        tr.epsilon = eps_;
        tr.steps = std::move(steps_);
        const CollapseResult c = collapse_trace(original, tr);
        tr.nabla = c.nabla;
        tr.final_witness = c.witness;
        tr.budget_ok = triple_norm(tr.nabla) < eps_;
        return tr;
    }

  private:
    TripleF current_;
    double eps_;
    std::vector<TripleStep> steps_;
    bool open_ = false;
    MatF s_acc_, r_acc_, rinv_acc_;
};

// Staircase recursion frame: the parent pair is ([I_r; 0], [[0,0],[M,N]])
// and this sink exposes the (M, N) subpair.
class PairLiftSink final : public PairSink {
  public:
    explicit PairLiftSink(PairSink& parent) : parent_(parent) {
        const PairF& p = parent.current();
        pm_ = p.m();
        r_ = p.n();
        local_ = PairF(p.A.block(r_, 0, pm_ - r_, r_), p.A.block(r_, r_, pm_ - r_, pm_ - r_));
    }

    const PairF& current() const override { return local_; }
    double allowance() const override { return parent_.allowance(); }
    void perturb(const PairF& delta) override {
        MatF da(pm_, pm_);
        da.set_block(r_, 0, delta.B);
        da.set_block(r_, r_, delta.A);
        parent_.perturb(PairF(MatF(pm_, r_), da));
        local_ = add(local_, delta);
    }
    void transform(const PairWitnessF& w) override {
        const PairF next = apply_pair_feedback(local_, w);
        MatF s_h(pm_, pm_);
        s_h.set_block(0, 0, w.P);
        s_h.set_block(0, r_, w.U);
        s_h.set_block(r_, r_, w.S);
        MatF u_h(r_, pm_);
        u_h.set_block(0, 0, w.U * next.B);
        u_h.set_block(0, r_, w.U * next.A);
        parent_.transform({s_h, w.P, u_h});
        local_ = next;
    }
    void snap(const PairF& exact_form) override {
        local_ = exact_form;
        MatF b(pm_, r_);
        b.set_block(0, 0, MatF::identity(r_));
        MatF a(pm_, pm_);
        a.set_block(r_, 0, exact_form.B);
        a.set_block(r_, r_, exact_form.A);
        parent_.snap(PairF(b, a));
    }

  private:
    PairSink& parent_;
    PairF local_;
    int pm_ = 0;
    int r_ = 0;
};

// Presents the (C, B) subpair of a triple; pair feedback (S, P, U) acts
// on the triple as (S, P, V=U) with the A-coupling left free.
class PairOverTripleSink final : public PairSink {
  public:
    explicit PairOverTripleSink(TripleSink& t) : t_(t) {
        const TripleF& cur = t.current();
        local_ = PairF(cur.C, cur.B);
    }

    const PairF& current() const override { return local_; }
    double allowance() const override { return t_.allowance(); }
    void perturb(const PairF& delta) override {
        t_.perturb(TripleF(delta.B, delta.A, MatF(delta.m(), delta.m())));
        local_ = add(local_, delta);
    }
    void transform(const PairWitnessF& w) override {
        const int m = local_.m(), n = local_.n();
        t_.transform({w.S, w.P, MatF(n, m), w.U});
        local_ = apply_pair_feedback(local_, w);
    }
    void snap(const PairF& exact_form) override {
        local_ = exact_form;
        t_.snap(TripleF(exact_form.B, exact_form.A, t_.current().A));
    }

  private:
    TripleSink& t_;
    PairF local_;
};

// Lift recursion frame for the rigid pipeline: the parent is an exact
// K(N) form and this sink exposes the embedded subtriple N = [C' B' A'].
class RigidLiftSink final : public TripleSink {
  public:
    explicit RigidLiftSink(TripleSink& parent) : parent_(parent) {
        const TripleF& k = parent.current();
        pm_ = k.m();
        pn_ = k.n();
        const int p = pm_ - pn_, q = 2 * pn_ - pm_;
        const MatF nmat = k.A.block(pn_, 0, p, pm_);
        local_ = TripleF(nmat.block(0, 0, p, q), nmat.block(0, q, p, p), nmat.block(0, q + p, p, p));
    }

    const TripleF& current() const override { return local_; }
    double allowance() const override { return parent_.allowance(); }
    void perturb(const TripleF& delta) override {
        MatF da(pm_, pm_);
        da.set_block(pn_, 0, block_matrix(delta));
        parent_.perturb(TripleF(MatF(pm_, pn_), MatF(pm_, pm_), da));
        local_ = add(local_, delta);
    }
    void transform(const FeedbackWitnessF& w) override {
        const TripleF next = apply_feedback(local_, w);
        parent_.transform(k_witness<Cplx>(pm_, pn_, w.P, w.V, w.S, w.U, block_matrix(next)));
        local_ = next;
    }
    void snap(const TripleF& exact_form) override {
        local_ = exact_form;
        parent_.snap(make_K<Cplx>(pm_, pn_, block_matrix(exact_form)));
    }

  private:
    TripleSink& parent_;
    TripleF local_;
    int pm_ = 0;
    int pn_ = 0;
};

// ---------------------------------------------------------------------
// Pair pipeline.

// Minimal-norm rank repair: singular values at or below the relative
// cutoff are replaced along fresh singular directions, keeping the
// perturbation inside the current allowance.
void ensure_full_rank(PairSink& sink) {
    const PairF& p = sink.current();
    const int m = p.m(), n = p.n(), r = std::min(m, n);
    if (r == 0) return;
    const Svd d = svd(p.B);
    const double smax = d.sigma.empty() ? 0.0 : d.sigma.front();
    const double cutoff = smax * 1e-9;
    std::vector<int> bad;
    for (int i = 0; i < r; ++i)
        if (!(d.sigma[i] > cutoff)) bad.push_back(i);
    if (bad.empty()) return;

    double repair = sink.allowance() / (4.0 * std::sqrt(static_cast<double>(bad.size())));
    MatF db(m, n);
    for (int i : bad) {
        const MatF ui = d.U.block(0, i, m, 1);
        const MatF vi = d.V.block(0, i, n, 1);
        const MatF wi = p.B * vi;
        db = db + (Cplx(repair, 0.0) * ui - wi) * vi.conj_transpose();
    }
    double nd = frobenius_norm(db);
    while (nd > 0.0 && !(nd < 0.9 * sink.allowance())) {
        db = Cplx(0.5, 0.0) * db;
        nd = frobenius_norm(db);
    }
    sink.perturb(PairF(db, MatF(m, m)));
}

void reduce_pair_core(PairSink& sink) {
    const int m = sink.current().m(), n = sink.current().n();
    if (n < 1)
        throw std::invalid_argument(
            "reduce_pair_generic: n must be >= 1 (pairs without inputs reduce only to spectral "
            "data)");
    const int r = std::min(m, n);

    if (m <= n && sink.current().B == make_G<Cplx>(m, n) && sink.current().A.is_zero()) {
        sink.snap(PairF(make_G<Cplx>(m, n), MatF(m, m)));
        return;
    }

    MatF target_b(m, n);
    target_b.set_block(0, 0, MatF::identity(r));  // F_mn when m <= n, [I_n;0] otherwise
    if (sink.current().B != target_b) {
        ensure_full_rank(sink);
        const Svd d = svd(sink.current().B);
        // Split each singular value as sqrt * sqrt between S and P so that
        // neither transform carries the full conditioning of B.
        MatF sig_s = MatF::identity(m);
        MatF sig_p = MatF::identity(n);
        for (int i = 0; i < r; ++i) {
            const double root = std::sqrt(d.sigma[i]);
            sig_s(i, i) = Cplx(root, 0.0);
            sig_p(i, i) = Cplx(1.0 / root, 0.0);
        }
        sink.transform({d.U * sig_s, d.V * sig_p, MatF(n, m)});
        PairF cur = sink.current();
        cur.B = target_b;
        sink.snap(cur);
    }

    if (m <= n) {
        if (!sink.current().A.is_zero()) {
            MatF u(n, m);
            u.set_block(0, 0, -sink.current().A);
            sink.transform({MatF::identity(m), MatF::identity(n), u});
            sink.snap(PairF(target_b, MatF(m, m)));
        }
        if (m >= 1 && m < n) {
            // Column flip F_mn -> G_mn.
            MatF flip(n, n);
            for (int c = 0; c < n; ++c) flip(c >= n - m ? c - (n - m) : m + c, c) = Cplx(1.0, 0.0);
            sink.transform({MatF::identity(m), flip, MatF(n, m)});
        }
        sink.snap(PairF(make_G<Cplx>(m, n), MatF(m, m)));
        return;
    }

    const MatF top = sink.current().A.block(0, 0, n, m);
    if (!top.is_zero()) {
        MatF u = -top;
        sink.transform({MatF::identity(m), MatF::identity(n), u});
    }
    {
        PairF cur = sink.current();
        cur.A.set_block(0, 0, MatF(n, m));
        sink.snap(cur);
    }
    PairLiftSink sub(sink);
    reduce_pair_core(sub);
}

// ---------------------------------------------------------------------
// Triple pipelines.

void reduce_K_core(TripleSink& sink) {
    const int m = sink.current().m(), n = sink.current().n();
    if (n < 1)
        throw std::invalid_argument(
            "reduce_triple_to_K: n must be >= 1 (triples without inputs are out of reach of the "
            "K form)");
    {
        PairOverTripleSink pair_view(sink);
        reduce_pair_core(pair_view);
    }
    if (m <= n) {
        if (!sink.current().A.is_zero()) {
            // C = G_mn picks out the last m rows of U.
            MatF u(n, m);
            u.set_block(n - m, 0, -sink.current().A);
            sink.transform({MatF::identity(m), MatF::identity(n), u, MatF(n, m)});
        }
        sink.snap(make_K<Cplx>(m, n, std::nullopt));
        return;
    }
    const MatF top = sink.current().A.block(0, 0, n, m);
    if (!top.is_zero()) {
        sink.transform({MatF::identity(m), MatF::identity(n), -top, MatF(n, m)});
    }
    sink.snap(make_K<Cplx>(m, n, sink.current().A.block(n, 0, m - n, m)));
}

void reduce_rigid_core(TripleSink& sink) {
    const int m = sink.current().m(), n = sink.current().n();
    reduce_K_core(sink);
    if (m <= n) {
        if (m >= 1 && m < n) {
            // Column flip G_mn -> F_mn.
            MatF flip(n, n);
            for (int c = 0; c < n; ++c) flip(c < m ? c + (n - m) : c - m, c) = Cplx(1.0, 0.0);
            sink.transform({MatF::identity(m), flip, MatF(n, m), MatF(n, m)});
        }
        sink.snap(TripleF(make_F<Cplx>(m, n), MatF(m, m), MatF(m, m)));
        return;
    }
    RigidLiftSink sub(sink);
    reduce_rigid_core(sub);
}

}  // namespace

PairReduction reduce_pair_generic(const PairF& p, double epsilon) {
    PairRootSink root(p, epsilon);
    reduce_pair_core(root);
    if (root.current() != canonical_pair_H<Cplx>(p.m(), p.n()))
        throw std::logic_error("reduce_pair_generic: output is not the canonical pair");
    PairReduction out;
    out.pair = root.current();
    out.trace = root.finish(p);
    out.witness = out.trace.final_witness;
    return out;
}

KReduction reduce_triple_to_K(const TripleF& t, double epsilon) {
    TripleRootSink root(t, epsilon);
    reduce_K_core(root);
    KReduction out;
    out.triple = root.current();
    if (t.m() > t.n()) out.N = out.triple.A.block(t.n(), 0, t.m() - t.n(), t.m());
    out.trace = root.finish(t);
    out.witness = out.trace.final_witness;
    return out;
}

RigidReduction reduce_to_rigid(const TripleF& t, double epsilon) {
    const int m = t.m(), n = t.n();
    if (n < 1) throw std::invalid_argument("reduce_to_rigid: n must be >= 1");
    if (!rigid_exists(m, n))
        throw std::invalid_argument(
            "reduce_to_rigid: no rigid triple exists for this size (m exceeds the golden ratio "
            "bound n(1+sqrt(5))/2, margin m^2-mn-n^2 = " +
            std::to_string(rigid_margin(m, n)) + ")");
    TripleRootSink root(t, epsilon);
    reduce_rigid_core(root);
    if (root.current() != rigid_canonical<Cplx>(m, n))
        throw std::logic_error("reduce_to_rigid: output is not the canonical rigid triple");
    RigidReduction out;
    out.triple = root.current();
    out.trace = root.finish(t);
    out.witness = out.trace.final_witness;
    return out;
}

namespace {

// Exact skeleton of the alpha*n form: structural blocks, a diagonal
// leading N block, and (optionally) exact ones in the scaled row.
TripleF snap_alpha_structure(const TripleF& cur, int m, int n, bool set_ones) {
    MatF c(m, n);
    c.set_block(0, 0, MatF::identity(n));
    MatF b(m, m);
    b.set_block(n, 0, make_F<Cplx>(m - n, m));
    MatF a = cur.A;
    a.set_block(0, 0, MatF(n, m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) a(n + i, j) = Cplx(0.0, 0.0);
    if (set_ones)
        for (int j = 1; j < n; ++j) a(n, n + j) = Cplx(1.0, 0.0);
    return {c, b, a};
}

}  // namespace

AlphaNReduction reduce_alpha_n(const TripleF& t, double epsilon) {
    const int m = t.m(), n = t.n();
    if (n < 1 || m % n != 0 || m / n < 2)
        throw std::invalid_argument("reduce_alpha_n: m must be alpha*n with alpha >= 2");
    const int alpha = m / n;

    TripleRootSink root(t, epsilon);
    reduce_K_core(root);

    auto n11 = [&]() { return root.current().A.block(n, 0, n, n); };
    auto min_gap = [](const std::vector<Cplx>& vals) {
        double g = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < vals.size(); ++i)
            for (size_t j = i + 1; j < vals.size(); ++j)
                g = std::min(g, std::abs(vals[i] - vals[j]));
        return g;
    };
    auto eig_scale = [](const std::vector<Cplx>& vals) {
        double s = 1.0;
        for (const Cplx& v : vals) s = std::max(s, std::abs(v));
        return s;
    };

    Eig eg = eigendecompose(n11());
    if (min_gap(eg.values) < 1e-8 * eig_scale(eg.values)) {
        double delta = root.allowance() / (2.0 * n);
        MatF shift(n, n);
        for (int i = 0; i < n; ++i) shift(i, i) = Cplx((i + 1) * delta, 0.0);
        double nd = frobenius_norm(shift);
        while (!(nd < 0.9 * root.allowance())) {
            shift = Cplx(0.5, 0.0) * shift;
            nd = frobenius_norm(shift);
        }
        MatF da(m, m);
        da.set_block(n, 0, shift);
        root.perturb(TripleF(MatF(m, n), MatF(m, m), da));
        eg = eigendecompose(n11());
        if (min_gap(eg.values) < 1e-8 * eig_scale(eg.values))
            throw std::runtime_error(
                "reduce_alpha_n: eigenvalues remained clustered after the diagonal shift");
    }

    const MatF off_diag_mask = n11();
    bool diagonal_already = true;
    for (int i = 0; i < n && diagonal_already; ++i)
        for (int j = 0; j < n && diagonal_already; ++j)
            if (i != j && off_diag_mask(i, j) != Cplx(0.0, 0.0)) diagonal_already = false;
    if (!diagonal_already) {
        MatF s(m, m);
        for (int k = 0; k < alpha; ++k) s.set_block(k * n, k * n, eg.vectors);
        root.transform({s, eg.vectors, MatF(n, m), MatF(n, m)});
    }
    root.snap(snap_alpha_structure(root.current(), m, n, false));

    if (n >= 2) {
        std::vector<int> missing;
        const MatF n12 = root.current().A.block(n, n, n, n);
        const double small = 1e-8 * std::max(1.0, frobenius_norm(n12));
        for (int j = 1; j < n; ++j)
            if (std::abs(n12(0, j)) <= small) missing.push_back(j);
        if (!missing.empty()) {
            double bump = root.allowance() / (2.0 * n);
            MatF da(m, m);
            for (int j : missing) da(n, n + j) = Cplx(bump, 0.0);
            double nd = frobenius_norm(da);
            while (!(nd < 0.9 * root.allowance())) {
                da = Cplx(0.5, 0.0) * da;
                nd = frobenius_norm(da);
            }
            root.perturb(TripleF(MatF(m, n), MatF(m, m), da));
        }
        bool ones_already = true;
        for (int j = 1; j < n && ones_already; ++j)
            if (root.current().A(n, n + j) != Cplx(1.0, 0.0)) ones_already = false;
        if (!ones_already) {
            MatF d = MatF::identity(n);
            for (int j = 1; j < n; ++j) d(j, j) = Cplx(1.0, 0.0) / root.current().A(n, n + j);
            MatF s(m, m);
            for (int k = 0; k < alpha; ++k) s.set_block(k * n, k * n, d);
            root.transform({s, d, MatF(n, m), MatF(n, m)});
        }
        root.snap(snap_alpha_structure(root.current(), m, n, true));
    }

    AlphaNReduction out;
    out.triple = root.current();
    out.trace = root.finish(t);
    out.witness = out.trace.final_witness;
    return out;
}

}  // namespace feedcanon
