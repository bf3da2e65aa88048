#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "corpus.hpp"
#include "monogen/serialize.hpp"

using namespace monogen;

namespace {

std::string cli_path() {
    const char* p = std::getenv("MONOGEN_CLI");
    REQUIRE_MESSAGE(p != nullptr, "MONOGEN_CLI must point at the built binary");
    return p;
}

std::string algebra_dir() {
    const char* p = std::getenv("MONOGEN_ALGEBRAS");
    REQUIRE_MESSAGE(p != nullptr, "MONOGEN_ALGEBRAS must point at the sample files");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& envPrefix = "") {
    const std::string cmd = envPrefix + cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/monogen_test_" + name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("index-form output matches the published forms byte for byte") {
    auto r = run("index-form " + algebra_dir() + "/dedekind.alg");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3\n");

    auto rn = run("index-form --normalize " + algebra_dir() + "/dedekind.alg");
    CHECK(rn.out == "2*b^3 + 15*b^2*c + 31*b*c^2 + 20*c^3\n");

    auto rg = run("index-form " + algebra_dir() + "/gauss.alg");
    CHECK(rg.out == "b\n");

    auto r175 = run("index-form " + algebra_dir() + "/cbrt175.alg");
    CHECK(r175.out == "5*b^3 - 7*c^3\n");

    // byte-stability across repeated runs and thread counts
    auto s1 = run("search " + algebra_dir() + "/dedekind.alg --box -10:10,-10:10 --threads 1");
    auto s2 = run("search " + algebra_dir() + "/dedekind.alg --box -10:10,-10:10 --threads 8");
    CHECK(s1.exit_code == 0);
    CHECK(s1.out == s2.out);
    auto s3 = run("search " + algebra_dir() + "/dedekind.alg --box -10:10,-10:10 --threads 1");
    CHECK(s1.out == s3.out);

    // MONOGEN_THREADS sets the default worker count; the default box is
    // [-10, 10] per scanned variable, so this equals the explicit runs
    auto s4 = run("search " + algebra_dir() + "/dedekind.alg", "MONOGEN_THREADS=4 ");
    CHECK(s4.exit_code == 0);
    CHECK(s4.out == s1.out);
}

TEST_CASE("check / obstruct / min-index wording") {
    auto rc = run("check " + algebra_dir() + "/gauss.alg --theta 4,1");
    CHECK(rc.exit_code == 0);
    CHECK(rc.out == "unit index value 1: monogenerator\n");

    auto rc2 = run("check " + algebra_dir() + "/dedekind.alg --theta 1,1,1");
    CHECK(rc2.out == "non-unit index value -68: not a monogenerator\n");

    auto ro = run("obstruct " + algebra_dir() + "/dedekind.alg --mod 2");
    CHECK(ro.exit_code == 0);
    CHECK(ro.out == "obstructed: non-monogenic over ℤ\n");

    auto ro2 = run("obstruct " + algebra_dir() + "/gauss.alg --mod 2");
    CHECK(ro2.out.find("inconclusive") == 0);

    auto rm = run("min-index " + algebra_dir() + "/dedekind.alg --box -5:5,-5:5");
    CHECK(rm.out == "box minimum |index| = 2\n");
}

TEST_CASE("min-poly and minors and check-k") {
    auto rs = run("min-poly " + algebra_dir() + "/split3q.alg");
    CHECK(rs.exit_code == 0);
    CHECK(rs.out.find("t^3") == 0);

    auto rk = run("minors " + algebra_dir() + "/gauss.alg --k 2");
    CHECK(rk.exit_code == 0);
    CHECK(rk.out.find("b1") != std::string::npos);
    CHECK(rk.out.find("b2") != std::string::npos);

    auto rck = run("check-k " + algebra_dir() + "/dedekind.alg --thetas \"0,0,1;0,1,0\"");
    CHECK(rck.exit_code == 0);
    CHECK(rck.out.find("generating tuple") == 0);
}

TEST_CASE("exit codes follow the documented contract") {
    // 2: parse error
    const std::string bad = write_temp("bad.alg", "{ not json");
    CHECK(run("index-form " + bad).exit_code == 2);

    // 3: validation failure, citing the offending identity on stderr
    const std::string invalid = write_temp("invalid.alg", R"({
      "base": {"kind": "Integers"}, "rank": 2,
      "presentation": {"kind": "structure_constants",
        "c": [[["1","0"],["0","5"]],[["0","1"],["-1","0"]]],
        "unitCoords": ["1","0"]}})");
    CHECK(run("validate " + invalid).exit_code == 3);

    // 4: non-integral order
    const std::string notOrder = write_temp("notorder.alg", R"({
      "base": {"kind": "Integers"}, "rank": 2,
      "presentation": {"kind": "order",
        "ambientPoly": [[0,"-5"],[2,"1"]],
        "basisRows": [["1","0"],["0","1/2"]]}})");
    CHECK(run("index-form " + notOrder).exit_code == 4);

    // 5: resource guard
    const std::string big = write_temp("big.alg", R"({
      "base": {"kind": "IntegersMod", "modulus": "2"}, "rank": 4,
      "presentation": {"kind": "split"}})");
    CHECK(run("minors " + big + " --k 4").exit_code == 5);

    // 0: happy paths
    CHECK(run("validate " + algebra_dir() + "/gauss.alg").exit_code == 0);
    CHECK(run("corpus").exit_code == 0);
}

TEST_CASE("json output mode") {
    auto r = run("index-form " + algebra_dir() + "/gauss.alg --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["result"]["poly"] == "b");
    CHECK(j["command"] == "index-form");

    auto rs = run("search " + algebra_dir() + "/gauss.alg --box -3:3 --format json");
    json js = json::parse(rs.out);
    CHECK(js["result"]["hits"].size() == 2);
    CHECK(js["result"]["scanned"] == 7);
}

TEST_CASE("algebra serialization round-trips the structure tensor") {
    for (const auto& entry : corpus::index_form_corpus()) {
        INFO("algebra ", entry.name);
        json j = algebra_to_json(*entry.alg, entry.vars);
        ParsedAlgebra back = algebra_from_json(j);
        REQUIRE(same_algebra(*back.alg, *entry.alg));
    }
}

TEST_CASE("corpus command reports per-example lines") {
    auto r = run("corpus");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[ok] quadratic-index-form") != std::string::npos);
    CHECK(r.out.find("[ok] dedekind-index-form") != std::string::npos);
    CHECK(r.out.find("[ok] maximal-order-index-form") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("corpus: all examples match") != std::string::npos);
}

TEST_CASE("parsed sample files validate and reproduce the library corpus") {
    // dedekind.alg parses to the same structure tensor as the programmatic one
    std::ifstream in(algebra_dir() + "/dedekind.alg");
    REQUIRE(in.good());
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ParsedAlgebra parsed = algebra_from_string(body);
    CHECK(same_algebra(*parsed.alg, *corpus::dedekind()));
    CHECK(parsed.aliases == std::vector<std::string>{"a", "b", "c"});
}
