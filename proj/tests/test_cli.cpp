#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "feedcanon/json_io.hpp"
#include "feedcanon/triples.hpp"

using namespace feedcanon;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "feedcanon_cli_tests";
    fs::create_directories(d);
    return d;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string cmd =
        std::string(FEEDCANON_CLI_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string write_file(const std::string& name, const json& j) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << j.dump();
    return p.string();
}

}  // namespace

TEST_CASE("rigid-check command") {
    const CliResult r = run_cli("rigid-check 8 5");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("rigid") == true);
    CHECK(j.at("margin") == -1);
    CHECK(j.at("size_sequence") == json({{8, 5}, {3, 2}, {1, 1}}));

    const json j2 = json::parse(run_cli("rigid-check 2 1").out);
    CHECK(j2.at("rigid") == false);
    CHECK(j2.at("margin") == 1);

    const json j3 = json::parse(run_cli("rigid-check 1 1").out);
    CHECK(j3.at("rigid") == true);
    CHECK(j3.at("margin") == -1);

    CHECK(run_cli("rigid-check 0 1").exit_code == 3);
    CHECK(run_cli("rigid-check").exit_code == 2);  // usage error
}

TEST_CASE("orbit-dim command on a rigid canonical triple") {
    const std::string f = write_file("rigid32.json", to_json(rigid_canonical<Rat>(3, 2)));
    const CliResult r = run_cli("orbit-dim " + f);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("orbit_dim") == 24);
    CHECK(j.at("rigid") == true);
    CHECK(orbit_report_from_json(j).ambient_dim == 24);
}

TEST_CASE("verify-witness command") {
    const TripleX t = random_triple_exact(2, 1, 3);
    const std::string tf = write_file("t.json", to_json(t));
    const std::string wf = write_file("w.json", to_json(FeedbackWitnessX::identity(2, 1)));
    const CliResult ok = run_cli("verify-witness " + tf + " " + tf + " " + wf);
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out).at("residual") == 0.0);

    // a wrong witness exits nonzero
    TripleX t2 = t;
    t2.A(0, 0) += Rat(1);
    const std::string tf2 = write_file("t2.json", to_json(t2));
    const CliResult bad = run_cli("verify-witness " + tf + " " + tf2 + " " + wf);
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.out).at("ok") == false);
}

TEST_CASE("reduce-rigid refusal and exit codes") {
    const std::string f = write_file("t21.json", to_json(random_triple_float(2, 1, 4)));
    CHECK(run_cli("reduce-rigid " + f).exit_code == 3);

    // exact input into a float pipeline is a precondition violation
    const std::string fx = write_file("t21x.json", to_json(random_triple_exact(3, 2, 4)));
    CHECK(run_cli("reduce-rigid " + fx).exit_code == 3);

    // malformed JSON is a parse error
    const fs::path badp = scratch_dir() / "bad.json";
    std::ofstream(badp) << "{ not json";
    CHECK(run_cli("reduce-rigid " + badp.string()).exit_code == 2);
    CHECK(run_cli("reduce-rigid " + (scratch_dir() / "missing.json").string()).exit_code == 2);
}

TEST_CASE("reduce-rigid produces the canonical triple") {
    const std::string f = write_file("t32.json", to_json(random_triple_float(3, 2, 11)));
    const CliResult r = run_cli("reduce-rigid " + f + " --eps 1e-6");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(triplef_from_json(j.at("triple")) == rigid_canonical<Cplx>(3, 2));
    CHECK(j.at("trace").at("budget_ok") == true);
    // round trip of the trace schema
    CHECK(trace_from_json(j.at("trace")).steps.size() == j.at("trace").at("steps").size());
}

TEST_CASE("brunovsky command") {
    const std::string f =
        write_file("pair.json", to_json(PairX{MatX::identity(2), MatX::identity(2)}));
    const CliResult r = run_cli("brunovsky " + f);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("invariants").at("ctrl_indices") == json({1, 1}));
    CHECK(invariants_from_json(j.at("invariants")).zero_cols == 0);

    // float pairs are rejected by the exact decision procedure
    const std::string ff =
        write_file("pairf.json", to_json(PairF{MatF::identity(2), MatF::identity(2)}));
    CHECK(run_cli("brunovsky " + ff).exit_code == 3);
}

TEST_CASE("canon-pair command") {
    const json j = json::parse(run_cli("canon-pair 3 2 --form H").out);
    CHECK(pairx_from_json(j) == canonical_pair_H<Rat>(3, 2));
    CHECK(run_cli("canon-pair 3 0").exit_code == 3);
}

TEST_CASE("sweep command determinism") {
    const fs::path out1 = scratch_dir() / "s1.csv";
    const fs::path out2 = scratch_dir() / "s2.csv";
    CHECK(run_cli("sweep 3 3 " + out1.string() + " --samples 3 --seed 5").exit_code == 0);
    CHECK(run_cli("sweep 3 3 " + out2.string() + " --samples 3 --seed 5 --threads 4").exit_code == 0);
    std::ifstream a(out1), b(out2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    const std::string header = sa.str().substr(0, sa.str().find('\n'));
    CHECK(header == "m,n,predicted_rigid,samples,full_rank_count,max_orbit_dim,ambient_dim");
    CHECK(run_cli("sweep 99 2 " + out1.string()).exit_code == 3);  // over the cap
}

TEST_CASE("FEEDCANON_SEED environment default") {
    const fs::path out1 = scratch_dir() / "e1.csv";
    const fs::path out2 = scratch_dir() / "e2.csv";
    const std::string base = std::string(FEEDCANON_CLI_BIN);
    std::system(("FEEDCANON_SEED=7 " + base + " sweep 2 2 " + out1.string() + " --samples 2 >/dev/null").c_str());
    std::system((base + " sweep 2 2 " + out2.string() + " --samples 2 --seed 7 >/dev/null").c_str());
    std::ifstream a(out1), b(out2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("rigid-construct and canon-pair F form") {
    const json j = json::parse(run_cli("rigid-construct 3 2").out);
    CHECK(triplex_from_json(j.at("triple")) == rigid_canonical<Rat>(3, 2));
    CHECK(j.at("p") == 1);
    CHECK(j.at("q") == 1);
    CHECK(j.at("levels") == 1);
    CHECK(run_cli("rigid-construct 2 1").exit_code == 3);

    const json jf = json::parse(run_cli("canon-pair 2 3 --form F").out);
    CHECK(pairx_from_json(jf) == canonical_pair_F<Rat>(2, 3));
}

TEST_CASE("reduce-pair, reduce-k and reduce-alpha-n commands") {
    const std::string pf = write_file(
        "rp.json", to_json(PairF{to_float(MatX::identity(3)).block(0, 0, 3, 2),
                                 to_float(Rat(2) * MatX::identity(3))}));
    const CliResult rp = run_cli("reduce-pair " + pf);
    REQUIRE(rp.exit_code == 0);
    const json jp = json::parse(rp.out);
    CHECK(pairf_from_json(jp.at("pair")) == canonical_pair_H<Cplx>(3, 2));
    CHECK(jp.at("trace").at("budget_ok") == true);

    const std::string tf = write_file("rk.json", to_json(random_triple_float(3, 2, 17)));
    const CliResult rk = run_cli("reduce-k " + tf);
    REQUIRE(rk.exit_code == 0);
    const json jk = json::parse(rk.out);
    REQUIRE(!jk.at("N").is_null());
    CHECK(triplef_from_json(jk.at("triple")) ==
          make_K<Cplx>(3, 2, matf_from_json(jk.at("N"))));

    // m <= n: N is null
    const std::string tf2 = write_file("rk2.json", to_json(random_triple_float(2, 3, 18)));
    const json jk2 = json::parse(run_cli("reduce-k " + tf2).out);
    CHECK(jk2.at("N").is_null());

    const std::string tf3 = write_file("ra.json", to_json(random_triple_float(4, 2, 19)));
    const CliResult ra = run_cli("reduce-alpha-n " + tf3);
    REQUIRE(ra.exit_code == 0);
    const json ja = json::parse(ra.out);
    const TripleF out = triplef_from_json(ja.at("triple"));
    CHECK(out.A(2, 3) == Cplx(1.0, 0.0));
    // wrong shape is a precondition violation
    CHECK(run_cli("reduce-alpha-n " + tf).exit_code == 3);
}

TEST_CASE("orbit-dim on a pair input") {
    const std::string f = write_file("hp.json", to_json(canonical_pair_H<Rat>(4, 2)));
    const json j = json::parse(run_cli("orbit-dim " + f).out);
    CHECK(j.at("orbit_dim") == 4 * (2 + 4));
    CHECK(j.at("group_dim") == 16 + 4 + 8);
    CHECK(j.at("rigid") == true);

    // float pair goes through the numeric route
    const std::string ff = write_file(
        "hpf.json", to_json(PairF{to_float(canonical_pair_H<Rat>(4, 2).B),
                                  to_float(canonical_pair_H<Rat>(4, 2).A)}));
    const json j2 = json::parse(run_cli("orbit-dim " + ff + " --tol 1e-9").out);
    CHECK(j2.at("orbit_dim") == 24);
}
