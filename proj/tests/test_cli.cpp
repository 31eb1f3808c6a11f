#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "lecam/json_io.hpp"
#include "lecam/random.hpp"
#include "lecam/verify.hpp"

#ifndef LECAM_CLI_PATH
#error "LECAM_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LECAM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path =
        (std::filesystem::temp_directory_path() / (std::string("cli_tmp_") + name)).string();
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
    return path;
}

std::string experiment_file(const std::string& name, const lecam::Experiment& e) {
    return write_temp(name, lecam::canonical_dump(lecam::to_json(e)));
}

}  // namespace

TEST_CASE("deficiency of an experiment against itself is zero") {
    std::string path = experiment_file("self.json", lecam::fixtures::ce2_source());
    RunResult r = run_cli("deficiency --source " + path + " --target " + path);
    CHECK(r.exit_code == 0);
    lecam::json j = lecam::parse_json(r.out);
    CHECK(j.at("value").get<double>() <= 1e-9);
    CHECK(j.at("solver_status").get<std::string>() == "optimal");
}

TEST_CASE("deficiency output parses and matches the library") {
    std::string s = experiment_file("p.json", lecam::fixtures::ce2_source());
    std::string t = experiment_file("q.json", lecam::fixtures::ce2_target());
    RunResult r = run_cli("deficiency --source " + s + " --target " + t + " --both --oracle 0.01");
    CHECK(r.exit_code == 0);
    lecam::json j = lecam::parse_json(r.out);
    CHECK(j.at("forward").at("value").get<double>() <= 1e-9);
    double back = j.at("backward").at("value").get<double>();
    CHECK(back == doctest::Approx(0.1142857).epsilon(1e-4));
    CHECK(j.at("forward").at("oracle_value").get<double>() <= 0.03);
}

TEST_CASE("malformed json exits 2 with diagnostics") {
    std::string path = write_temp("broken.json", "{\"parameters\": [\n  oops\n]}");
    RunResult r = run_cli("deficiency --source " + path + " --target " + path);
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown flags exit 64") {
    RunResult r = run_cli("deficiency --nonsense x");
    CHECK(r.exit_code == 64);
}

TEST_CASE("hierarchy subcommand reproduces the strictness fixture") {
    std::string e = experiment_file("h.json", lecam::fixtures::ce2_source());
    std::string m = write_temp("map.json",
                               R"({"map": {"a": "z0", "b": "z0", "c": "z1"},)"
                               R"( "from_outcomes": ["a", "b", "c"]})");
    RunResult r = run_cli("hierarchy --experiment " + e + " --map " + m + " --eps 0.01");
    CHECK(r.exit_code == 0);
    lecam::json j = lecam::parse_json(r.out);
    CHECK(j.at("levels").at("testing").get<bool>());
    CHECK(!j.at("levels").at("distortion").get<bool>());
    CHECK(j.at("likelihood_distortion").get<double>() >= 1.0);
}

TEST_CASE("certify reports a zero gap for identical experiments") {
    std::string path = experiment_file("cert.json", lecam::fixtures::ce2_source());
    RunResult r = run_cli("certify --source " + path + " --target " + path +
                          " --class exhaustive --epsilon 0.05");
    CHECK(r.exit_code == 0);
    lecam::json j = lecam::parse_json(r.out);
    CHECK(j.at("delta_hat").get<double>() <= 1e-12);
    CHECK(j.at("epsilon_simulable").get<bool>());
}

TEST_CASE("shannon subcommand emits the documented csv") {
    RunResult r = run_cli("shannon --p 0.1 --repetition 1,3,5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("n,rate,Pe,capacity\n", 0) == 0);
    CHECK(r.out.find("\n3,") != std::string::npos);
    CHECK(r.out.find("0.028") != std::string::npos);
}

TEST_CASE("gaussian ce3 emits the convention note in its report") {
    RunResult r = run_cli("gaussian ce3 --step 0.05");
    CHECK(r.exit_code == 0);
    lecam::json j = lecam::parse_json(r.out);
    CHECK(!j.at("convention_note").get<std::string>().empty());
    CHECK(j.at("simulation_error").get<double>() <= 0.05);
}

TEST_CASE("gaussian collapse writes the documented csv") {
    RunResult r = run_cli("gaussian collapse --sigma 2 --c-grid 0:1:0.5 --grid -4:4:0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("c,invariance_error,source_fidelity,target_fidelity\n", 0) == 0);
}

namespace {

// minimal structural validator for the schema file shipped in docs
void check_schema(const lecam::json& value, const std::string& subcommand) {
    static lecam::json schemas = [] {
        std::ifstream in(LECAM_SCHEMA_PATH, std::ios::binary);
        REQUIRE(in.good());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return lecam::parse_json(text);
    }();
    const lecam::json& required = schemas.at(subcommand).at("required");
    for (auto it = required.begin(); it != required.end(); ++it) {
        INFO(subcommand << "." << it.key());
        REQUIRE(value.contains(it.key()));
        const lecam::json& v = value.at(it.key());
        std::string want = it.value().get<std::string>();
        bool ok = (want.find("number") != std::string::npos && v.is_number()) ||
                  (want.find("string") != std::string::npos && v.is_string()) ||
                  (want.find("boolean") != std::string::npos && v.is_boolean()) ||
                  (want.find("array") != std::string::npos && v.is_array()) ||
                  (want.find("object") != std::string::npos && v.is_object());
        CHECK(ok);
    }
}

}  // namespace

TEST_CASE("subcommand outputs satisfy the documented schemas") {
    std::string p = experiment_file("sp.json", lecam::fixtures::ce2_source());
    std::string q = experiment_file("sq.json", lecam::fixtures::ce2_target());

    check_schema(lecam::parse_json(run_cli("deficiency --source " + p + " --target " + q).out),
                 "deficiency");
    std::string m = write_temp("smap.json",
                               R"({"map": {"a": "z0", "b": "z0", "c": "z1"},)"
                               R"( "from_outcomes": ["a", "b", "c"]})");
    check_schema(lecam::parse_json(run_cli("hierarchy --experiment " + p + " --map " + m).out),
                 "hierarchy");
    check_schema(lecam::parse_json(
                     run_cli("certify --source " + p + " --target " + q + " --epsilon 0.2").out),
                 "certify");
    check_schema(lecam::parse_json(run_cli("gaussian ce3 --step 0.1").out), "gaussian-ce3");

    // small two-step chain and an nft triple, built from library fixtures
    lecam::Rng rng(163);
    lecam::ChainSpec chain;
    chain.base = rng.random_experiment("base", 2, 2);
    chain.ideal.push_back(rng.random_kernel(chain.base.outcomes, {"z0", "z1"}));
    chain.approx.push_back(rng.random_kernel(chain.base.outcomes, {"z0", "z1"}));
    lecam::json cj{{"base", lecam::to_json(chain.base)},
                   {"ideal", {lecam::to_json(chain.ideal[0])}},
                   {"approx", {lecam::to_json(chain.approx[0])}}};
    std::string chain_path = write_temp("chain.json", lecam::canonical_dump(cj));
    RunResult comp = run_cli("compose --chain " + chain_path);
    CHECK(comp.exit_code == 0);
    check_schema(lecam::parse_json(comp.out), "compose");

    lecam::Experiment es = rng.random_experiment("S", 2, 3);
    lecam::Experiment et = rng.random_experiment("T", 2, 3);
    std::string sp = experiment_file("nft_s.json", es);
    std::string tp = experiment_file("nft_t.json", et);
    std::string kp = write_temp("nft_k.json",
                                lecam::canonical_dump(lecam::to_json(
                                    rng.random_kernel(es.outcomes, {"z0", "z1"}))));
    RunResult nft = run_cli("nft --source " + sp + " --target " + tp + " --map " + kp);
    CHECK(nft.exit_code == 0);
    check_schema(lecam::parse_json(nft.out), "nft");
}

TEST_CASE("verify-paper is deterministic byte for byte") {
    RunResult a = run_cli("verify-paper --seed 42 --quick");
    RunResult b = run_cli("verify-paper --seed 42 --quick");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
}
