#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "harmjet/analysis.hpp"
#include "harmjet/jetdoc.hpp"

using namespace harmjet;
using nlohmann::json;

namespace {

// The witness jet for m = 5, C = 1: (x^2+y^2)^3 spelled out monomially.
const char* kFstarDoc = R"({"m":5,"terms":[
  {"i":6,"j":0,"c":"1/1"},{"i":4,"j":2,"c":"3/1"},
  {"i":2,"j":4,"c":"3/1"},{"i":0,"j":6,"c":"1/1"}],
  "declared_order":6})";

struct CliResult {
    int exit_code;
    std::string output;
};

// Runs the CLI binary (path from HARMJET_BIN, set by ctest) and captures
// stdout.
CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("HARMJET_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("the witness document parses to the witness jet") {
    const Jet f = parse_jet_document(json::parse(kFstarDoc));
    const Jet expected = make_fstar(5, rat(1));
    CHECK(f.m == expected.m);
    CHECK(f.order == expected.order);
    CHECK(f.tail == expected.tail);
}

TEST_CASE("documents round trip exactly") {
    for (int m = 5; m <= 7; ++m) {
        const Jet f = make_jet(m, random_tail(m, 77 + m), 2 * m - 4);
        const Jet back = parse_jet_document(jet_to_json(f));
        CHECK(back.m == f.m);
        CHECK(back.order == f.order);
        CHECK(back.tail == f.tail);
    }
    const Jet exact = make_jet(7, GradedPoly{}, kExactOrder);
    const json doc = jet_to_json(exact);
    CHECK(!doc.contains("declared_order"));
    const Jet back = parse_jet_document(doc);
    CHECK(back.order == kExactOrder);
    CHECK(back.tail.is_zero());
}

TEST_CASE("parse errors carry term context") {
    const auto expect_error = [](const char* text, const char* needle) {
        try {
            parse_jet_document(json::parse(text));
            FAIL_CHECK("expected a parse error for ", text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error(R"({"m":5,"terms":[{"i":0,"j":0,"c":"1/1"}]})", "terms[0]");
    expect_error(R"({"m":5,"terms":[{"i":3,"j":2,"c":"1/1"}]})", "not above m");
    expect_error(R"({"m":5,"terms":[{"i":6,"j":0,"c":"1/1"},{"i":6,"j":0,"c":"2/1"}]})",
                 "duplicate");
    expect_error(R"({"m":5,"terms":[{"i":6,"j":0,"c":"0.5"}]})", "malformed");
    expect_error(R"({"m":5,"terms":[{"i":6,"j":0,"c":"1/0"}]})", "malformed");
    expect_error(R"({"m":5,"terms":[{"i":6,"j":0}]})", "terms[0]");
    expect_error(R"({"m":1})", "m must be");
    expect_error(R"({"m":5,"terms":[{"i":6,"j":0,"c":"1/1"}],"declared_order":5})",
                 "declared_order");
    CHECK_THROWS_AS(load_jet_file("/nonexistent/jet.json"), ParseError);
}

TEST_CASE("verdict documents expose the report fields") {
    const Jet f = make_fstar(5, rat(1));
    const RunResult r = run(f, 1);
    const json doc = verdict_document(f, r.report);
    CHECK(doc["m"] == 5);
    CHECK(doc["order"] == 6);
    CHECK(doc["s_m"] == 6);
    CHECK(doc["verdict"] == "not_equivalent");
    CHECK(doc["first_failure"] == 1);
    CHECK(doc["codim"] == 4);
    REQUIRE(doc["residuals"].size() == 1);
    CHECK(doc["residuals"][0]["k"] == 1);
    // -36 (x^2+y^2)^2 in monomial records, rationals as "p/q" strings.
    bool found = false;
    for (const auto& term : doc["residuals"][0]["terms"])
        if (term["i"] == 4 && term["j"] == 0) {
            CHECK(term["c"] == "-36/1");
            found = true;
        }
    CHECK(found);

    const Jet small = make_jet(3, GradedPoly{}, kExactOrder);
    const RunResult rs = run(small, 0);
    const json ds = verdict_document(small, rs.report);
    CHECK(ds["verdict"] == "equivalent");
    CHECK(!ds.contains("codim"));
    CHECK(ds["order"].is_null());
}

TEST_CASE("cli: usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("theta --m 5").exit_code == 2);  // missing --k
}

TEST_CASE("cli: codim prints the closed form") {
    const CliResult r = run_cli("codim --m 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "10\n");
}

TEST_CASE("cli: obstruct verdicts drive the exit code") {
    const auto fstar_path = write_temp("harmjet_test_fstar.json", kFstarDoc);
    const CliResult bad = run_cli("obstruct --input " + fstar_path.string());
    CHECK(bad.exit_code == 3);
    CHECK(bad.output.find("not_equivalent") != std::string::npos);

    const CliResult bad_json = run_cli("--json obstruct --input " + fstar_path.string());
    CHECK(bad_json.exit_code == 3);
    const json doc = json::parse(bad_json.output);
    CHECK(doc["verdict"] == "not_equivalent");
    CHECK(doc["first_failure"] == 1);

    const auto good_path =
        write_temp("harmjet_test_good.json", R"({"m":5,"terms":[],"declared_order":9})");
    const CliResult good = run_cli("obstruct --input " + good_path.string());
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("equivalent") != std::string::npos);

    const auto short_path =
        write_temp("harmjet_test_short.json",
                   R"({"m":6,"terms":[{"i":7,"j":0,"c":"1/1"}],"declared_order":7})");
    const CliResult undetermined = run_cli("--json obstruct --input " + short_path.string());
    CHECK(undetermined.exit_code == 4);  // needs order >= 2m-4 = 8
    CHECK(json::parse(undetermined.output)["verdict"] == "undetermined_jet_too_short");
    CHECK(json::parse(undetermined.output)["required_order"] == 8);

    const auto broken_path = write_temp("harmjet_test_broken.json", R"({"m":5,"terms":[{)");
    CHECK(run_cli("obstruct --input " + broken_path.string()).exit_code == 1);
}

TEST_CASE("cli: metric emits star and metric entries") {
    const auto path =
        write_temp("harmjet_test_metric.json", R"({"m":5,"terms":[],"declared_order":9})");
    const CliResult r = run_cli("--json metric --order 3 --input " + path.string());
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["conditional"] == false);
    CHECK(doc["metric"].contains("g11"));
    CHECK(doc["star"].contains("T21"));
    CHECK(run_cli("metric --order 7 --input " + path.string()).exit_code == 4);
}

TEST_CASE("cli: theta report fields") {
    const CliResult r = run_cli("--json theta --m 5 --k 1");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["rank"] == 4);
    CHECK(doc["injective"] == true);
    CHECK(doc["surjective"] == false);
    CHECK(doc["M_k"] == 1);
    bool missed_radial = false;
    for (const auto& row : doc["irr_inclusion"])
        if (row["q"] == 2) missed_radial = row["included"] == false;
    CHECK(missed_radial);
}

TEST_CASE("cli: fstar reports the obstruction") {
    const CliResult r = run_cli("--json fstar --m 6 --C -2/1");
    CHECK(r.exit_code == 3);
    const json doc = json::parse(r.output);
    CHECK(doc["first_failure"] == 2);
    CHECK(doc["C"] == "-2/1");
}

TEST_CASE("cli: submersion and residual probes") {
    CHECK(run_cli("submersion --m 5 --seed 7").exit_code == 0);

    const auto path =
        write_temp("harmjet_test_probe.json", R"({"m":5,"terms":[],"declared_order":9})");
    const CliResult csv = run_cli("residual --order 2 --input " + path.string());
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.rfind("radius,angle,abs_residual\n", 0) == 0);
    const CliResult js = run_cli("--json residual --order 2 --input " + path.string());
    const json doc = json::parse(js.output);
    CHECK(doc.contains("fitted_slope"));
    CHECK(doc["samples"].size() == 8 * 12);
}
