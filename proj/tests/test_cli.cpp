#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccs/gen.hpp"
#include "ccs/io.hpp"

#include <json.hpp>
#include "support.hpp"

using namespace ccs;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CCS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / ("ccs_test_" + name);
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("instance files round-trip field-exactly") {
    for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
        GenSpec spec;
        spec.seed = seed;
        spec.kind = seed % 2 ? ProblemKind::Center : ProblemKind::Supplier;
        spec.mode = seed % 3 ? CapacityMode::Soft : CapacityMode::Hard;
        spec.uniform_upper = false;
        Instance inst = generate_instance(spec);
        ParseError err;
        auto again = parse_instance(print_instance(inst), &err);
        REQUIRE(again.has_value());
        CHECK(again->clients == inst.clients);
        CHECK(again->facilities == inst.facilities);
        CHECK(again->points == inst.points);
        CHECK(again->metric == inst.metric);
        CHECK(again->lower_bound == inst.lower_bound);
        CHECK(again->upper_bounds == inst.upper_bounds);
        CHECK(again->open_count == inst.open_count);
        CHECK(again->coverage_target == inst.coverage_target);
        CHECK(again->mode == inst.mode);
        CHECK(again->kind == inst.kind);
    }
}

TEST_CASE("euclidean metric files round the square root up exactly") {
    std::string text = R"({
      "version": 1, "kind": "supplier", "mode": "soft", "L": 1, "p": 1,
      "facilities": [{"id": 0, "U": 2, "coords": [0, 0]}],
      "clients": [{"id": 1, "coords": [1, 1]}, {"id": 2, "coords": [3, 4]}],
      "metric": {"type": "euclidean", "denominator": 10}
    })";
    ParseError err;
    auto inst = parse_instance(text, &err);
    REQUIRE(inst.has_value());
    CHECK(inst->dist(0, 1) == Rational(3, 2));  // ceil(10*sqrt(2))/10 = 15/10
    CHECK(inst->dist(0, 2) == Rational(5));
    CHECK(validate_instance(*inst).ok);
}

TEST_CASE("parse errors carry a position") {
    ParseError err;
    auto r = parse_instance("{ \"version\": 1,\n  broken", &err);
    CHECK(!r.has_value());
    CHECK(err.line == 2);
}

TEST_CASE("semantic file problems are reported with a message") {
    auto expect_bad = [](const std::string& text, const std::string& needle) {
        ParseError err;
        auto r = parse_instance(text, &err);
        CHECK(!r.has_value());
        CHECK(err.message.find(needle) != std::string::npos);
    };
    expect_bad(R"({"version": 2})", "version");
    expect_bad(R"({"version": 1, "kind": "middle", "mode": "soft", "L": 1, "p": 0,
                 "facilities": [], "clients": [], "metric": {"type": "table", "lower": []}})",
               "kind");
    expect_bad(R"({"version": 1, "kind": "supplier", "mode": "soft", "L": 1, "p": 0,
                 "facilities": [{"id": 0, "U": 1}, {"id": 0, "U": 1}],
                 "clients": [{"id": 1}],
                 "metric": {"type": "table", "lower": [["1"], ["1", "1"]]}})",
               "duplicate");
    expect_bad(R"({"version": 1, "kind": "supplier", "mode": "soft", "L": 1, "p": 0,
                 "facilities": [{"id": 0, "U": 1}], "clients": [{"id": 1}],
                 "metric": {"type": "table", "lower": [["1", "2"]]}})",
               "entries");
    expect_bad(R"({"version": 1, "kind": "supplier", "mode": "soft", "L": 1, "p": 0,
                 "facilities": [{"id": 0, "U": 1}], "clients": [{"id": 1}],
                 "metric": {"type": "euclidean"}})",
               "coords");
    expect_bad(R"({"version": 1, "kind": "supplier", "mode": "soft", "L": 1, "p": 0,
                 "facilities": [{"id": 0, "U": 1}],
                 "metric": {"type": "table", "lower": []}})",
               "clients");

    ParseError err;
    CHECK(!parse_vector(R"({"zero": "1/2"})", &err).has_value());
    CHECK(!parse_vector(R"({"0": "-1/2"})", &err).has_value());
    CHECK(!parse_vector(R"({"0": "1/0"})", &err).has_value());
    auto ok = parse_vector(R"({"0": "1/2", "3": 2})", &err);
    REQUIRE(ok.has_value());
    CHECK(ok->at(0) == Rational(1, 2));
    CHECK(ok->at(3) == Rational(2));
}

TEST_CASE("generated instances are deterministic per seed") {
    auto a = run_cli("gen --seed 42 --facilities 4 --clients 6");
    auto b = run_cli("gen --seed 42 --facilities 4 --clients 6");
    auto c = run_cli("gen --seed 43 --facilities 4 --clients 6");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("solve and oracle agree on the command line") {
    Instance inst = test::g1();
    auto path = temp_file("g1.json", print_instance(inst));
    auto oracle = run_cli("oracle " + path.string());
    CHECK(oracle.status == 0);
    CHECK(oracle.out.find("optimal radius 1") != std::string::npos);
    auto solve = run_cli("solve " + path.string() + " --variant soft-uniform");
    CHECK(solve.status == 0);
    CHECK(solve.out.find("served 4") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("exit codes distinguish failure classes") {
    Instance inst = test::g1();
    inst.coverage_target = 5;  // > |clients|: infeasible, not a parse error
    auto path = temp_file("over.json", print_instance(inst));
    auto r = run_cli("solve " + path.string() + " --variant soft-uniform");
    CHECK(r.status == 2);
    fs::remove(path);

    Instance center = test::g1();
    auto path2 = temp_file("supplier.json", print_instance(center));
    auto r2 = run_cli("solve " + path2.string() + " --variant hard-nonuniform-center");
    CHECK(r2.status == 64);
    auto r3 = run_cli("verify " + path2.string() + " /nonexistent.json");
    CHECK(r3.status == 65);
    fs::remove(path2);

    auto bad = temp_file("bad.json", "{ not json");
    auto r4 = run_cli("oracle " + bad.string());
    CHECK(r4.status == 65);
    fs::remove(bad);
}

TEST_CASE("oversized instances exit with the too-large code") {
    GenSpec spec;
    spec.num_facilities = 15;
    spec.num_clients = 4;
    spec.p = 1;
    auto path = temp_file("big.json", print_instance(generate_instance(spec)));
    auto r = run_cli("oracle " + path.string());
    CHECK(r.status == 3);
    fs::remove(path);
}

TEST_CASE("bench handles an empty suite and emits plot data") {
    auto empty = run_cli("bench --count 0 --seed 1");
    CHECK(empty.status == 0);

    fs::path plot = fs::temp_directory_path() / "ccs_test_plot.tsv";
    auto r = run_cli("bench --count 2 --seed 3 --max-facilities 5 --max-clients 7 --plot-data " +
                     plot.string());
    CHECK(r.status == 0);
    std::ifstream in(plot);
    std::string header;
    std::getline(in, header);
    CHECK(header == "variant\tseed\topt\talg\tratio");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 8);  // 2 instances x 4 variants
    fs::remove(plot);
}

TEST_CASE("the lp command can dump the constraint system") {
    Instance inst = test::g1();
    inst.mode = CapacityMode::Hard;
    auto path = temp_file("lpdump.json", print_instance(inst));
    fs::path dump = fs::temp_directory_path() / "ccs_test_dump.lp";
    auto r = run_cli("lp " + path.string() + " --r 1 --dump " + dump.string());
    CHECK(r.status == 0);
    std::ifstream in(dump);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("<=") != std::string::npos);
    fs::remove(path);
    fs::remove(dump);
}

TEST_CASE("verify accepts an oracle witness end to end") {
    GenSpec spec;
    spec.seed = 4242;
    spec.num_facilities = 3;
    spec.num_clients = 6;
    Instance inst = generate_instance(spec);
    auto path = temp_file("inst.json", print_instance(inst));
    auto oracle = run_cli("oracle " + path.string() + " --json");
    REQUIRE(oracle.status == 0);
    auto doc = oracle.out.substr(oracle.out.find('{'));
    // extract the witness object
    auto pos = doc.find("\"witness\"");
    REQUIRE(pos != std::string::npos);
    // crude but effective: the witness is the rest of the object minus the
    // trailing brace
    std::string witness = doc.substr(doc.find('{', pos));
    witness.erase(witness.rfind('}'));
    auto wpath = temp_file("witness.json", witness);
    auto verify = run_cli("verify " + path.string() + " " + wpath.string());
    CHECK(verify.status == 0);
    CHECK(verify.out.find("ok") != std::string::npos);
    fs::remove(path);
    fs::remove(wpath);
}

TEST_CASE("machine-readable outputs parse as json") {
    Instance inst = test::g1();
    auto path = temp_file("mj.json", print_instance(inst));
    for (std::string args :
         {std::string("solve ") + path.string() + " --variant soft-uniform --json",
          std::string("oracle ") + path.string() + " --json",
          std::string("lp ") + path.string() + " --r 1 --json",
          std::string("bench --count 1 --seed 4 --max-facilities 4 --max-clients 5 --json")}) {
        auto r = run_cli(args);
        CHECK(r.status == 0);
        CHECK(nlohmann::json::accept(r.out));
    }
    fs::remove(path);
}

TEST_CASE("transfer reports witnesses for the upper-uniform side") {
    Instance inst = test::line_instance({{0, 0}, {1, 2}}, {{2, 0}, {3, 2}}, 1, 2, 2);
    auto path = temp_file("tu.json", print_instance(inst));
    auto y = temp_file("tuy.json", R"({"0": 1})");
    auto yp = temp_file("tuyp.json", R"({"1": 1})");
    auto r = run_cli("transfer " + path.string() + " --y " + y.string() + " --yprime " +
                     yp.string() + " --r 2 --local U-uniform --json");
    CHECK(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["valid-transfer"] == true);
    CHECK(doc["witness-found"] == true);
    CHECK(doc["certified-local"] == true);
    fs::remove(path);
    fs::remove(y);
    fs::remove(yp);
}

TEST_CASE("solve output feeds straight back into verify") {
    Instance inst = test::g1();
    auto path = temp_file("loop.json", print_instance(inst));
    auto solved = run_cli("solve " + path.string() + " --variant soft-uniform --json");
    REQUIRE(solved.status == 0);
    auto spath = temp_file("loop_sol.json", solved.out);
    auto verify = run_cli("verify " + path.string() + " " + spath.string());
    CHECK(verify.status == 0);
    fs::remove(path);
    fs::remove(spath);
}

TEST_CASE("transfer command validates the identity transfer") {
    Instance inst = test::g1();
    auto path = temp_file("t.json", print_instance(inst));
    auto y = temp_file("y.json", R"({"0": "1", "1": "1/2"})");
    auto r = run_cli("transfer " + path.string() + " --y " + y.string() + " --yprime " +
                     y.string() + " --r 0");
    CHECK(r.status == 0);
    CHECK(r.out.find("valid transfer") != std::string::npos);
    fs::remove(path);
    fs::remove(y);
}

TEST_CASE("lp command reports feasibility at the oracle radius") {
    Instance inst = test::g1();
    inst.mode = CapacityMode::Hard;
    auto path = temp_file("lp.json", print_instance(inst));
    auto feas = run_cli("lp " + path.string() + " --r 1");
    CHECK(feas.status == 0);
    CHECK(feas.out.find("feasible") != std::string::npos);
    auto infeas = run_cli("lp " + path.string() + " --r 0");
    CHECK(infeas.status == 2);
    fs::remove(path);
}
