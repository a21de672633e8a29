// Command-line front end: canonical forms, orbit dimensions, rigidity
// decisions, perturbation pipelines, and the sweep harness. All matrix
// I/O is JSON; sweep output is CSV.
//
// Exit codes: 0 success, 1 failed verification, 2 parse/usage error,
// 3 precondition violation, 4 internal invariant violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/json_io.hpp"
#include "feedcanon/orbit.hpp"
#include "feedcanon/pairs.hpp"
#include "feedcanon/reduction.hpp"
#include "feedcanon/sweep.hpp"
#include "feedcanon/triples.hpp"

using nlohmann::json;
using namespace feedcanon;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

uint64_t default_seed() {
    const char* env = std::getenv("FEEDCANON_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw SchemaError("FEEDCANON_SEED must be a nonnegative integer");
    }
}

Field parse_field(const std::string& s) {
    if (s == "exact") return Field::exact;
    if (s == "float") return Field::floating;
    throw SchemaError("--field must be 'exact' or 'float'");
}

json size_sequence_json(const RigidInfo& info) {
    json seq = json::array();
    for (const auto& [mm, nn] : info.size_sequence) seq.push_back({mm, nn});
    return seq;
}

int run(int argc, char** argv) {
    CLI::App app{"feedcanon: canonical forms and rigidity of linear systems under feedback"};
    app.require_subcommand(1);

    uint64_t seed = default_seed();
    std::string field_name = "exact";
    double eps = 1e-6;
    double tol = 1e-9;

    // rigid-check
    auto* rigid_check = app.add_subcommand("rigid-check", "decide whether a rigid triple exists");
    int rc_m = 0, rc_n = 0;
    rigid_check->add_option("m", rc_m, "state dimension")->required();
    rigid_check->add_option("n", rc_n, "input dimension")->required();
    rigid_check->callback([&] {
        json out{{"m", rc_m}, {"n", rc_n}, {"rigid", rigid_exists(rc_m, rc_n)},
                 {"margin", rigid_margin(rc_m, rc_n)}};
        if (rigid_exists(rc_m, rc_n)) {
            const RigidInfo info = rigid_canonical_info(rc_m, rc_n);
            out["size_sequence"] = size_sequence_json(info);
        }
        emit(out);
    });

    // rigid-construct
    auto* rigid_con = app.add_subcommand("rigid-construct", "emit the canonical rigid triple");
    int rg_m = 0, rg_n = 0;
    rigid_con->add_option("m", rg_m)->required();
    rigid_con->add_option("n", rg_n)->required();
    rigid_con->add_option("--field", field_name, "exact|float");
    rigid_con->callback([&] {
        const RigidInfo info = rigid_canonical_info(rg_m, rg_n);
        json triple = parse_field(field_name) == Field::exact
                          ? to_json(rigid_canonical<Rat>(rg_m, rg_n))
                          : to_json(rigid_canonical<Cplx>(rg_m, rg_n));
        emit({{"triple", triple},
              {"p", info.p},
              {"q", info.q},
              {"levels", info.levels},
              {"size_sequence", size_sequence_json(info)}});
    });

    // canon-pair
    auto* canon = app.add_subcommand("canon-pair", "emit the generic canonical pair");
    int cp_m = 0, cp_n = 0;
    std::string form = "H";
    canon->add_option("m", cp_m)->required();
    canon->add_option("n", cp_n)->required();
    canon->add_option("--form", form, "H|F");
    canon->add_option("--field", field_name, "exact|float");
    canon->callback([&] {
        if (form != "H" && form != "F") throw SchemaError("--form must be 'H' or 'F'");
        if (parse_field(field_name) == Field::exact)
            emit(to_json(form == "H" ? canonical_pair_H<Rat>(cp_m, cp_n)
                                     : canonical_pair_F<Rat>(cp_m, cp_n)));
        else
            emit(to_json(form == "H" ? canonical_pair_H<Cplx>(cp_m, cp_n)
                                     : canonical_pair_F<Cplx>(cp_m, cp_n)));
    });

    // brunovsky
    auto* brun = app.add_subcommand("brunovsky", "decompose an exact pair");
    std::string brun_file;
    brun->add_option("pair", brun_file, "pair JSON file")->required();
    brun->callback([&] {
        const json j = load_json(brun_file);
        if (matrix_field(j.at("B")) != Field::exact)
            throw std::invalid_argument(
                "brunovsky: the decision procedure is exact-only; float-field input rejected");
        const PairX p = pairx_from_json(j);
        const BrunovskyResult r = brunovsky_decompose(p);
        emit({{"invariants", to_json(r.invariants)},
              {"witness", to_json(r.witness)},
              {"canonical", to_json(brunovsky_assemble(r.invariants))}});
    });

    // orbit-dim
    auto* orbit = app.add_subcommand("orbit-dim", "orbit/stabilizer dimensions of a pair or triple");
    std::string orbit_file;
    orbit->add_option("input", orbit_file, "pair or triple JSON file")->required();
    orbit->add_option("--tol", tol, "float-field rank tolerance");
    orbit->callback([&] {
        const json j = load_json(orbit_file);
        const bool is_triple = j.contains("C");
        const Field f = matrix_field(j.at("A"));
        OrbitReport rep;
        if (is_triple)
            rep = f == Field::exact ? orbit_dimension(triplex_from_json(j))
                                    : orbit_dimension(triplef_from_json(j), tol);
        else
            rep = f == Field::exact ? pair_orbit_dimension(pairx_from_json(j))
                                    : pair_orbit_dimension(pairf_from_json(j), tol);
        emit(to_json(rep));
    });

    // reduce-pair
    auto* rpair = app.add_subcommand("reduce-pair", "genericize a float pair");
    std::string rpair_file;
    rpair->add_option("pair", rpair_file)->required();
    rpair->add_option("--eps", eps, "perturbation budget");
    rpair->callback([&] {
        const json j = load_json(rpair_file);
        if (matrix_field(j.at("B")) != Field::floating)
            throw std::invalid_argument("reduce-pair: float-field input required");
        const PairReduction r = reduce_pair_generic(pairf_from_json(j), eps);
        emit({{"pair", to_json(r.pair)}, {"witness", to_json(r.witness)}, {"trace", to_json(r.trace)}});
    });

    // reduce-k
    auto* rk = app.add_subcommand("reduce-k", "reduce a float triple to the K form");
    std::string rk_file;
    rk->add_option("triple", rk_file)->required();
    rk->add_option("--eps", eps, "perturbation budget");
    rk->callback([&] {
        const json j = load_json(rk_file);
        if (matrix_field(j.at("A")) != Field::floating)
            throw std::invalid_argument("reduce-k: float-field input required");
        const KReduction r = reduce_triple_to_K(triplef_from_json(j), eps);
        json out{{"triple", to_json(r.triple)},
                 {"witness", to_json(r.witness)},
                 {"trace", to_json(r.trace)},
                 {"N", nullptr}};
        if (r.N) out["N"] = to_json(*r.N);
        emit(out);
    });

    // reduce-alpha-n
    auto* ran = app.add_subcommand("reduce-alpha-n", "normal form for m = alpha*n, alpha >= 2");
    std::string ran_file;
    ran->add_option("triple", ran_file)->required();
    ran->add_option("--eps", eps, "perturbation budget");
    ran->callback([&] {
        const json j = load_json(ran_file);
        if (matrix_field(j.at("A")) != Field::floating)
            throw std::invalid_argument("reduce-alpha-n: float-field input required");
        const AlphaNReduction r = reduce_alpha_n(triplef_from_json(j), eps);
        emit({{"triple", to_json(r.triple)}, {"witness", to_json(r.witness)}, {"trace", to_json(r.trace)}});
    });

    // reduce-rigid
    auto* rr = app.add_subcommand("reduce-rigid", "reduce a float triple to the rigid canonical triple");
    std::string rr_file;
    rr->add_option("triple", rr_file)->required();
    rr->add_option("--eps", eps, "perturbation budget");
    rr->callback([&] {
        const json j = load_json(rr_file);
        if (matrix_field(j.at("A")) != Field::floating)
            throw std::invalid_argument("reduce-rigid: float-field input required");
        const RigidReduction r = reduce_to_rigid(triplef_from_json(j), eps);
        emit({{"triple", to_json(r.triple)}, {"witness", to_json(r.witness)}, {"trace", to_json(r.trace)}});
    });

    // verify-witness
    auto* verify = app.add_subcommand("verify-witness", "check a witness between two triples");
    std::string v_t1, v_t2, v_w;
    verify->add_option("triple", v_t1)->required();
    verify->add_option("triple2", v_t2)->required();
    verify->add_option("witness", v_w)->required();
    verify->add_option("--tol", tol, "residual tolerance");
    bool verify_failed = false;
    verify->callback([&] {
        const json j1 = load_json(v_t1), j2 = load_json(v_t2), jw = load_json(v_w);
        WitnessCheck check{};
        if (matrix_field(j1.at("A")) == Field::exact) {
            check = verify_witness(triplex_from_json(j1), triplex_from_json(j2),
                                   witnessx_from_json(jw), tol);
        } else {
            check = verify_witness(triplef_from_json(j1), triplef_from_json(j2),
                                   witnessf_from_json(jw), tol);
        }
        emit({{"residual", check.residual}, {"ok", check.ok}});
        verify_failed = !check.ok;
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "rigidity grid sweep, CSV output");
    SweepConfig cfg;
    std::string sweep_out;
    int sweep_threads = 0;
    sweep->add_option("max_m", cfg.max_m)->required();
    sweep->add_option("max_n", cfg.max_n)->required();
    sweep->add_option("out", sweep_out, "output CSV path")->required();
    sweep->add_option("--samples", cfg.samples, "samples per cell")->default_val(10);
    sweep->add_option("--seed", seed, "base seed");
    sweep->add_option("--field", field_name, "exact|float");
    sweep->add_option("--tol", cfg.tol, "float-field rank tolerance");
    sweep->add_option("--threads", sweep_threads, "OpenMP thread count (0 = default)");
    sweep->callback([&] {
        cfg.seed = seed;
        cfg.field = parse_field(field_name);
        cfg.threads = sweep_threads;
        std::ofstream out(sweep_out);
        if (!out) throw std::invalid_argument("sweep: cannot open output file '" + sweep_out + "'");
        write_sweep_csv(out, run_sweep(cfg));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 2;
    }
    return verify_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SchemaError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrixError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    }
}
