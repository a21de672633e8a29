#include "feedcanon/json_io.hpp"

namespace feedcanon {

using nlohmann::json;

namespace {

const json& require_key(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

int require_int(const json& j, const char* key) {
    const json& v = require_key(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("key '") + key + "' must be an integer");
    return v.get<int>();
}

void check_entry_count(const json& entries, int rows, int cols) {
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
        throw SchemaError("matrix entries must be a row-major array of length rows*cols");
}

}  // namespace

Field matrix_field(const json& j) {
    const json& entries = require_key(j, "entries");
    if (!entries.is_array()) throw SchemaError("matrix entries must be an array");
    for (const json& e : entries) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("matrix entry must be [re, im]");
        if (e[0].is_string() && e[1].is_string()) return Field::exact;
        if (e[0].is_number() && e[1].is_number()) return Field::floating;
        throw SchemaError("matrix entry components must be both strings or both numbers");
    }
    return Field::exact;
}

json to_json(const MatX& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            entries.push_back({rational_to_string(m(i, j).re), rational_to_string(m(i, j).im)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json to_json(const MatF& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

MatX matx_from_json(const json& j) {
    const int rows = require_int(j, "rows"), cols = require_int(j, "cols");
    if (rows < 0 || cols < 0) throw SchemaError("matrix dimensions must be nonnegative");
    const json& entries = require_key(j, "entries");
    check_entry_count(entries, rows, cols);
    if (matrix_field(j) != Field::exact) throw SchemaError("expected an exact-field matrix");
    MatX m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c, ++k) {
            const json& e = entries[k];
            try {
                m(i, c) = Rat(parse_rational(e[0].get<std::string>()),
                              parse_rational(e[1].get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                throw SchemaError(ex.what());
            }
        }
    return m;
}

MatF matf_from_json(const json& j) {
    const int rows = require_int(j, "rows"), cols = require_int(j, "cols");
    if (rows < 0 || cols < 0) throw SchemaError("matrix dimensions must be nonnegative");
    const json& entries = require_key(j, "entries");
    check_entry_count(entries, rows, cols);
    if (matrix_field(j) != Field::floating && rows * cols > 0)
        throw SchemaError("expected a float-field matrix");
    MatF m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c, ++k)
            m(i, c) = Cplx(entries[k][0].get<double>(), entries[k][1].get<double>());
    return m;
}

template <class T>
static json pair_to_json(const MatrixPairT<T>& p) {
    return {{"m", p.m()}, {"n", p.n()}, {"B", to_json(p.B)}, {"A", to_json(p.A)}};
}
json to_json(const PairX& p) { return pair_to_json(p); }
json to_json(const PairF& p) { return pair_to_json(p); }

PairX pairx_from_json(const json& j) {
    PairX p(matx_from_json(require_key(j, "B")), matx_from_json(require_key(j, "A")));
    if (require_int(j, "m") != p.m() || require_int(j, "n") != p.n())
        throw SchemaError("pair: m/n fields disagree with matrix sizes");
    return p;
}
PairF pairf_from_json(const json& j) {
    PairF p(matf_from_json(require_key(j, "B")), matf_from_json(require_key(j, "A")));
    if (require_int(j, "m") != p.m() || require_int(j, "n") != p.n())
        throw SchemaError("pair: m/n fields disagree with matrix sizes");
    return p;
}

template <class T>
static json triple_to_json(const MatrixTripleT<T>& t) {
    return {{"m", t.m()},
            {"n", t.n()},
            {"C", to_json(t.C)},
            {"B", to_json(t.B)},
            {"A", to_json(t.A)}};
}
json to_json(const TripleX& t) { return triple_to_json(t); }
json to_json(const TripleF& t) { return triple_to_json(t); }

TripleX triplex_from_json(const json& j) {
    TripleX t(matx_from_json(require_key(j, "C")), matx_from_json(require_key(j, "B")),
              matx_from_json(require_key(j, "A")));
    if (require_int(j, "m") != t.m() || require_int(j, "n") != t.n())
        throw SchemaError("triple: m/n fields disagree with matrix sizes");
    return t;
}
TripleF triplef_from_json(const json& j) {
    TripleF t(matf_from_json(require_key(j, "C")), matf_from_json(require_key(j, "B")),
              matf_from_json(require_key(j, "A")));
    if (require_int(j, "m") != t.m() || require_int(j, "n") != t.n())
        throw SchemaError("triple: m/n fields disagree with matrix sizes");
    return t;
}

json to_json(const PairWitnessX& w) {
    return {{"S", to_json(w.S)}, {"P", to_json(w.P)}, {"U", to_json(w.U)}};
}
json to_json(const PairWitnessF& w) {
    return {{"S", to_json(w.S)}, {"P", to_json(w.P)}, {"U", to_json(w.U)}};
}
PairWitnessX pair_witnessx_from_json(const json& j) {
    return {matx_from_json(require_key(j, "S")), matx_from_json(require_key(j, "P")),
            matx_from_json(require_key(j, "U"))};
}
PairWitnessF pair_witnessf_from_json(const json& j) {
    return {matf_from_json(require_key(j, "S")), matf_from_json(require_key(j, "P")),
            matf_from_json(require_key(j, "U"))};
}

json to_json(const FeedbackWitnessX& w) {
    return {{"S", to_json(w.S)}, {"P", to_json(w.P)}, {"U", to_json(w.U)}, {"V", to_json(w.V)}};
}
json to_json(const FeedbackWitnessF& w) {
    return {{"S", to_json(w.S)}, {"P", to_json(w.P)}, {"U", to_json(w.U)}, {"V", to_json(w.V)}};
}
FeedbackWitnessX witnessx_from_json(const json& j) {
    return {matx_from_json(require_key(j, "S")), matx_from_json(require_key(j, "P")),
            matx_from_json(require_key(j, "U")), matx_from_json(require_key(j, "V"))};
}
FeedbackWitnessF witnessf_from_json(const json& j) {
    return {matf_from_json(require_key(j, "S")), matf_from_json(require_key(j, "P")),
            matf_from_json(require_key(j, "U")), matf_from_json(require_key(j, "V"))};
}

json to_json(const BrunovskyInvariants& inv) {
    json factors = json::array();
    for (const Poly& f : inv.invariant_factors) {
        json coeffs = json::array();
        for (const Rat& c : f.coeffs()) coeffs.push_back(rat_to_token(c));
        factors.push_back(coeffs);
    }
    return {{"ctrl_indices", inv.ctrl_indices},
            {"zero_cols", inv.zero_cols},
            {"invariant_factors", factors}};
}

BrunovskyInvariants invariants_from_json(const json& j) {
    BrunovskyInvariants inv;
    for (const json& k : require_key(j, "ctrl_indices")) inv.ctrl_indices.push_back(k.get<int>());
    inv.zero_cols = require_int(j, "zero_cols");
    for (const json& f : require_key(j, "invariant_factors")) {
        std::vector<Rat> coeffs;
        for (const json& c : f) {
            try {
                coeffs.push_back(parse_rat_token(c.get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                throw SchemaError(ex.what());
            }
        }
        inv.invariant_factors.emplace_back(std::move(coeffs));
    }
    return inv;
}

json to_json(const OrbitReport& r) {
    return {{"m", r.m},
            {"n", r.n},
            {"ambient_dim", r.ambient_dim},
            {"group_dim", r.group_dim},
            {"orbit_dim", r.orbit_dim},
            {"stabilizer_dim", r.stabilizer_dim},
            {"rigid", r.rigid}};
}

OrbitReport orbit_report_from_json(const json& j) {
    OrbitReport r;
    r.m = require_int(j, "m");
    r.n = require_int(j, "n");
    r.ambient_dim = require_int(j, "ambient_dim");
    r.group_dim = require_int(j, "group_dim");
    r.orbit_dim = require_int(j, "orbit_dim");
    r.stabilizer_dim = require_int(j, "stabilizer_dim");
    r.rigid = require_key(j, "rigid").get<bool>();
    return r;
}

json to_json(const ReductionTrace& tr) {
    json steps = json::array();
    for (const TripleStep& s : tr.steps)
        steps.push_back({{"delta", to_json(s.delta)}, {"witness", to_json(s.witness)}});
    return {{"epsilon", tr.epsilon},
            {"steps", steps},
            {"nabla", to_json(tr.nabla)},
            {"final_witness", to_json(tr.final_witness)},
            {"budget_ok", tr.budget_ok}};
}

ReductionTrace trace_from_json(const json& j) {
    ReductionTrace tr;
    tr.epsilon = require_key(j, "epsilon").get<double>();
    for (const json& s : require_key(j, "steps"))
        tr.steps.push_back(
            {triplef_from_json(require_key(s, "delta")), witnessf_from_json(require_key(s, "witness"))});
    tr.nabla = triplef_from_json(require_key(j, "nabla"));
    tr.final_witness = witnessf_from_json(require_key(j, "final_witness"));
    tr.budget_ok = require_key(j, "budget_ok").get<bool>();
    return tr;
}

json to_json(const PairReductionTrace& tr) {
    json steps = json::array();
    for (const PairStep& s : tr.steps)
        steps.push_back({{"delta", to_json(s.delta)}, {"witness", to_json(s.witness)}});
    return {{"epsilon", tr.epsilon},
            {"steps", steps},
            {"nabla", to_json(tr.nabla)},
            {"final_witness", to_json(tr.final_witness)},
            {"budget_ok", tr.budget_ok}};
}

PairReductionTrace pair_trace_from_json(const json& j) {
    PairReductionTrace tr;
    tr.epsilon = require_key(j, "epsilon").get<double>();
    for (const json& s : require_key(j, "steps"))
        tr.steps.push_back({pairf_from_json(require_key(s, "delta")),
                            pair_witnessf_from_json(require_key(s, "witness"))});
    tr.nabla = pairf_from_json(require_key(j, "nabla"));
    tr.final_witness = pair_witnessf_from_json(require_key(j, "final_witness"));
    tr.budget_ok = require_key(j, "budget_ok").get<bool>();
    return tr;
}

}  // namespace feedcanon
