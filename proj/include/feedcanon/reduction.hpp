#pragma once

#include <optional>
#include <vector>

#include "feedcanon/pairs.hpp"
#include "feedcanon/triples.hpp"

namespace feedcanon {

/// State of the perturbation schedule after step_index steps, carrying
/// the Frobenius norms of the accumulated transforms S_1...S_i and
/// (R_1...R_i)^{-1}.
struct PerturbationBudget {
    double epsilon = 0.0;
    int step_index = 0;
    double norm_S_acc = 1.0;
    double norm_Rinv_acc = 1.0;
};

/// Allowance for the next perturbation: eps/2 at step 0, afterwards
/// eps / (2^{i+1} ||S~_i|| ||R~_i^{-1}||). Strictly decreasing in i for
/// fixed norms.
double budget_allowance(const PerturbationBudget& b);

struct TripleStep {
    TripleF delta;
    FeedbackWitnessF witness;
};

/// Ordered perturbation/transform steps with their collapsed summary:
/// the single equivalent perturbation nabla and final witness.
struct ReductionTrace {
    double epsilon = 0.0;
    std::vector<TripleStep> steps;
    TripleF nabla;
    FeedbackWitnessF final_witness;
    bool budget_ok = false;
};

struct CollapseResult {
    TripleF nabla;
    FeedbackWitnessF witness;
};

/// Folds the step sequence into (nabla, witness) so that applying the
/// witness to t + nabla reproduces the final triple (up to float
/// roundoff). Throws when any step violates its scheduled allowance.
CollapseResult collapse_trace(const TripleF& t, const ReductionTrace& tr);

struct PairStep {
    PairF delta;
    PairWitnessF witness;
};

struct PairReductionTrace {
    double epsilon = 0.0;
    std::vector<PairStep> steps;
    PairF nabla;
    PairWitnessF final_witness;
    bool budget_ok = false;
};

struct PairCollapseResult {
    PairF nabla;
    PairWitnessF witness;
};

PairCollapseResult collapse_pair_trace(const PairF& p, const PairReductionTrace& tr);

/// ||B|| + ||A||, the pair analogue of triple_norm.
double pair_norm(const PairF& p);

struct PairReduction {
    PairF pair;  // exactly canonical_pair_H(m, n)
    PairWitnessF witness;
    PairReductionTrace trace;
};

/// Genericization of a float pair: rank-repairs B within the step
/// allowance, normalizes it, clears the reachable part of A and recurses
/// on the staircase remainder. The output equals canonical_pair_H(m, n)
/// with all identity/zero blocks set exactly.
PairReduction reduce_pair_generic(const PairF& p, double epsilon);

struct KReduction {
    TripleF triple;
    FeedbackWitnessF witness;
    ReductionTrace trace;
    std::optional<MatF> N;  // absent for m <= n
};

/// Runs the pair pipeline on the (C, B) subpair with every witness
/// lifted to the full triple, then clears the reachable strip of A.
KReduction reduce_triple_to_K(const TripleF& t, double epsilon);

struct AlphaNReduction {
    TripleF triple;
    FeedbackWitnessF witness;
    ReductionTrace trace;
};

/// Normal form for m = alpha*n, alpha >= 2: after the K reduction, the
/// leading block of N gains distinct eigenvalues (perturbing within the
/// allowance when gaps fall below 1e-8 relative), is diagonalized by a
/// simultaneous block similarity, and the first row of the next block is
/// scaled to (*, 1, ..., 1) with exact ones.
AlphaNReduction reduce_alpha_n(const TripleF& t, double epsilon);

struct RigidReduction {
    TripleF triple;  // exactly rigid_canonical(m, n)
    FeedbackWitnessF witness;
    ReductionTrace trace;
};

/// Full recursion onto the canonical rigid triple. Refuses sizes for
/// which no rigid triple exists.
RigidReduction reduce_to_rigid(const TripleF& t, double epsilon);

}  // namespace feedcanon
