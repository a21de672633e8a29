#pragma once

#include <string>

#include <json.hpp>

#include "feedcanon/orbit.hpp"
#include "feedcanon/pairs.hpp"
#include "feedcanon/reduction.hpp"
#include "feedcanon/triples.hpp"

namespace feedcanon {

/// Schema violations in otherwise well-formed JSON (wrong types, shape
/// mismatches, mixed scalar kinds).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Field { exact, floating };

/// Scalar kind of a serialized matrix: string entries are exact, number
/// entries floating. Empty matrices default to exact.
Field matrix_field(const nlohmann::json& j);

nlohmann::json to_json(const MatX& m);
nlohmann::json to_json(const MatF& m);
MatX matx_from_json(const nlohmann::json& j);
MatF matf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PairX& p);
nlohmann::json to_json(const PairF& p);
PairX pairx_from_json(const nlohmann::json& j);
PairF pairf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TripleX& t);
nlohmann::json to_json(const TripleF& t);
TripleX triplex_from_json(const nlohmann::json& j);
TripleF triplef_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PairWitnessX& w);
nlohmann::json to_json(const PairWitnessF& w);
PairWitnessX pair_witnessx_from_json(const nlohmann::json& j);
PairWitnessF pair_witnessf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FeedbackWitnessX& w);
nlohmann::json to_json(const FeedbackWitnessF& w);
FeedbackWitnessX witnessx_from_json(const nlohmann::json& j);
FeedbackWitnessF witnessf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BrunovskyInvariants& inv);
BrunovskyInvariants invariants_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrbitReport& r);
OrbitReport orbit_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReductionTrace& tr);
ReductionTrace trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PairReductionTrace& tr);
PairReductionTrace pair_trace_from_json(const nlohmann::json& j);

}  // namespace feedcanon
