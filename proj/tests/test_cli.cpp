#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
};

// Runs the CLI binary with the given arguments, capturing stdout.
RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(BIDLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

double out_num(const json& doc, const char* key) {
    return std::stod(doc.at("outputs").at(key).get<std::string>());
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "bidlab_cli_test";
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("solve-bid closed forms") {
    RunResult r = run_cli(
        "solve-bid --landscape power:1 --op tcpa_marginal_bid --T 0.3 --r 0");
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(out_num(doc, "b") == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(std::stod(doc["residuals"]["eq1"].get<std::string>()) ==
          doctest::Approx(0.0).epsilon(1e-9));

    r = run_cli("solve-bid --landscape pareto_hat --op fpa_bid --v 4");
    CHECK(r.code == 0);
    CHECK(out_num(json::parse(r.out), "b") == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("solve-bid scenario file and deterministic output") {
    const fs::path sc = scratch_dir() / "scenario.json";
    write_file(sc, R"({"operation":"tcpa_marginal_bid",
                       "landscape":{"family":"power","n":1},
                       "params":{"T":0.3,"r":0.0}})");
    RunResult a = run_cli("solve-bid --scenario " + sc.string());
    RunResult b = run_cli("solve-bid --scenario " + sc.string());
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    json da = json::parse(a.out), db = json::parse(b.out);
    CHECK(out_num(da, "b") == doctest::Approx(0.6).epsilon(1e-9));
    // identical up to the wall-clock field
    da.erase("runtime_ms");
    db.erase("runtime_ms");
    CHECK(da.dump() == db.dump());
}

TEST_CASE("malformed scenario exits with validation code") {
    const fs::path sc = scratch_dir() / "broken.json";
    write_file(sc, "{not json at all");
    CHECK(run_cli("solve-bid --scenario " + sc.string()).code == 2);
    CHECK(run_cli("solve-bid --landscape power:1 --op nonsense").code == 2);
}

TEST_CASE("equilibrium expected revenues on the linear landscape") {
    RunResult r = run_cli(
        "equilibrium --valuation uniform:0:1 --landscape power:1 "
        "--regime tcpa-nocommit");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(std::stod(doc["report"]["expected"]["revenue"].get<std::string>()) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-6));

    r = run_cli(
        "equilibrium --valuation uniform:0:1 --landscape power:1 "
        "--regime mcpa-nocommit");
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(std::stod(doc["report"]["expected"]["revenue"].get<std::string>()) ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-6));

    r = run_cli(
        "equilibrium --valuation uniform:0:1 --landscape power:1 "
        "--regime commitment");
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(std::stod(doc["report"]["expected"]["revenue"].get<std::string>()) ==
          doctest::Approx(5.0 / 24.0).epsilon(1e-6));
}

TEST_CASE("equilibrium csv schema") {
    const fs::path dir = scratch_dir() / "eq_out";
    fs::remove_all(dir);
    RunResult r = run_cli(
        "equilibrium --valuation uniform:0:1 --landscape power:1 "
        "--regime tcpa-nocommit --grid 33 --out " + dir.string());
    REQUIRE(r.code == 0);
    std::ifstream csv(dir / "tcpa-nocommit.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "v,bid,marginal_bid,volume,spend,utility,revenue,welfare");
    int rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 33);
    std::ifstream agg(dir / "tcpa-nocommit.json");
    REQUIRE(agg.good());
    CHECK(json::parse(agg)["report"]["per_type"].size() == 33);
}

TEST_CASE("exit codes distinguish assertion, validation and numeric failures") {
    // commitment-value lower bound fails on this family: assertion exit
    CHECK(run_cli("equilibrium --valuation uniform:0.5:1 --landscape power:1 "
                  "--regime value-of-commitment").code == 1);
    // divergent tail: numeric exit
    CHECK(run_cli("solve-bid --landscape pareto_hat --op reserve_rh").code == 3);
    // missing required subcommand: validation exit
    CHECK(run_cli("").code == 2);
}

TEST_CASE("verify suites pass from the command line") {
    RunResult r = run_cli("verify theorem1 --landscape power:1 --grid 65");
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["pass"].get<bool>());
    CHECK(std::stod(doc["min_margin"].get<std::string>()) > 0.0);

    r = run_cli("verify no-swap --queries 12 --extra 3 --trials 200 --seed 5");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["cyclic"].get<int>() == 0);

    r = run_cli("verify revenue-comparison --landscape pareto_hat --grid 33");
    CHECK(r.code == 0);  // informational: mixed signs without Assumption 2
    CHECK_FALSE(json::parse(r.out)["assumption2"].get<bool>());
}

TEST_CASE("sweep emits stable csv") {
    RunResult a = run_cli("sweep --sweep power-n --values 1,2,3");
    RunResult b = run_cli("sweep --sweep power-n --values 1,2,3");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);  // byte-identical rerun
    // first data row: n=1, pi ratio 2, asymptotic ratio bound 1/3
    std::istringstream ss(a.out);
    std::string header, row;
    std::getline(ss, header);
    CHECK(header == "n,pi_tcpa,pi_mcpa,ratio,ratio_bound");
    std::getline(ss, row);
    double n, pit, pim, ratio, bound;
    char c;
    std::istringstream(row) >> n >> c >> pit >> c >> pim >> c >> ratio >> c >>
        bound;
    CHECK(pit == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    CHECK(pim == doctest::Approx(1.0 / 12.0).epsilon(1e-8));
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(bound == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("simulate runs an instance file end to end") {
    const fs::path inst = scratch_dir() / "instance.json";
    write_file(inst, R"({
        "bidders":[{"id":0,"format":"mcpa","value":1.0,"submitted":0.8},
                   {"id":1,"format":"tcpa","value":1.0,"submitted":0.3}],
        "queries":[{"weight":1.0,"floor":0.3,"conv":[1.0,1.0]},
                   {"weight":1.0,"floor":0.1,"conv":[1.0,0.5]}],
        "reserves":{"mode":"uniform","values":[0.0,0.0]}})");
    RunResult r = run_cli("simulate --instance " + inst.string());
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc["queries"].size() == 2);
    CHECK(doc["queries"][0]["winner"].get<int>() == 0);
    CHECK(doc["final_bids"].size() == 2);
    CHECK(std::stod(doc["final_bids"][0].get<std::string>()) ==
          doctest::Approx(0.8));
    CHECK(std::stod(doc["revenue"].get<std::string>()) > 0.0);

    write_file(inst, "{\"bidders\":[]}");
    CHECK(run_cli("simulate --instance " + inst.string()).code == 2);
}
