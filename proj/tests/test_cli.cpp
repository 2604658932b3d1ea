// End-to-end checks of the command-line tool: each subcommand is exercised
// as a subprocess, asserting on captured output and exit status.

#include "catch_amalgamated.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunOutput {
    int status = -1;
    std::string out;
};

/// Runs the tool with the given arguments, capturing stdout (and stderr when
/// merge_stderr).  Returns the exit status and the captured text.
RunOutput run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(CPGIR_CLI_PATH) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    RunOutput result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
    int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

std::string fixture_path(const std::string& name) {
    return std::string(CPGIR_FIXTURES_DIR) + "/" + name;
}

fs::path temp_file(const std::string& stem) {
    return fs::temp_directory_path() / ("cpgir_cli_" + stem);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

long stat_line(const std::string& text, const std::string& label) {
    auto pos = text.find(label);
    REQUIRE(pos != std::string::npos);
    return std::stol(text.substr(pos + label.size()));
}

} // namespace

TEST_CASE("translate prints a json document to stdout") {
    auto r = run_cli("translate " + fixture_path("phi_diamond.ll"));
    CHECK(r.status == 0);
    REQUIRE_FALSE(r.out.empty());
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"format\"") != std::string::npos);
    CHECK(r.out.find("\"nodes\"") != std::string::npos);
}

TEST_CASE("translate -o writes the document to a file") {
    auto path = temp_file("translate.json");
    auto r = run_cli("translate " + fixture_path("phi_diamond.ll") + " -o " + path.string());
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    auto text = slurp(path);
    CHECK(text.front() == '{');
    fs::remove(path);
}

TEST_CASE("two invocations emit identical bytes") {
    auto first = run_cli("translate " + fixture_path("phi/gcd.ll"));
    auto second = run_cli("translate " + fixture_path("phi/gcd.ll"));
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("stats reports the headline counters") {
    auto r = run_cli("stats " + fixture_path("stats_module.ll"));
    CHECK(r.status == 0);
    CHECK(stat_line(r.out, "# Functions: ") == 6);
    CHECK(stat_line(r.out, "# Nodes: ") > 0);
    CHECK(stat_line(r.out, "# Edges: ") > 0);
    CHECK(stat_line(r.out, "# Problem nodes: ") >= 1); // the opaque instruction
    CHECK(r.out.find("# Nodes by kind:") != std::string::npos);
    CHECK(r.out.find("# Edges by kind:") != std::string::npos);
}

TEST_CASE("query flags the weak cipher and exits by policy") {
    auto hit = run_cli("query " + fixture_path("crypto_md5.ll"));
    CHECK(hit.status == 0);
    CHECK(hit.out.find("ERROR [weak-cipher]") != std::string::npos);
    CHECK(hit.out.find("permits MD5") != std::string::npos);
    CHECK(hit.out.find("# Findings: 1") != std::string::npos);

    auto gated = run_cli("query --fail-on-findings " + fixture_path("crypto_md5.ll"));
    CHECK(gated.status == 1);

    auto clean = run_cli("query --fail-on-findings " + fixture_path("crypto_good.ll"));
    CHECK(clean.status == 0);
    CHECK(clean.out.find("# Findings: 0") != std::string::npos);

    auto unknown = run_cli("query --rule no-such-rule " + fixture_path("crypto_md5.ll"), true);
    CHECK(unknown.status == 2);
    CHECK(unknown.out.find("unknown rule") != std::string::npos);
}

TEST_CASE("compare contrasts both pipelines") {
    auto r = run_cli("compare " + fixture_path("phi/loop_sum.ll"));
    CHECK(r.status == 0);
    CHECK(r.out.find("phi-elimination:  nodes=") != std::string::npos);
    CHECK(r.out.find("reg2mem-baseline: nodes=") != std::string::npos);
    CHECK(r.out.find("delta: nodes=+") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("").status == 2);                       // no subcommand
    CHECK(run_cli("frobnicate x.ll").status == 2);        // unknown subcommand
    CHECK(run_cli("translate").status == 2);              // missing input
    CHECK(run_cli("translate /no/such/file.ll").status == 2);
    CHECK(run_cli("translate --passes bogus-pass " + fixture_path("phi_diamond.ll")).status == 2);
    CHECK(run_cli("translate --format neo4j-csv " + fixture_path("phi_diamond.ll")).status == 2);
}

TEST_CASE("--passes selects the pipeline") {
    auto bare = run_cli("stats --passes none " + fixture_path("straightline_chain.ll"));
    auto full = run_cli("stats " + fixture_path("straightline_chain.ll"));
    REQUIRE(bare.status == 0);
    REQUIRE(full.status == 0);
    // block inlining collapses the goto chain in the default pipeline
    CHECK(stat_line(bare.out, "# Nodes: ") > stat_line(full.out, "# Nodes: "));

    auto all = run_cli("stats --passes all " + fixture_path("phi_diamond.ll"));
    CHECK(all.status == 0);
    auto listed = run_cli("stats --passes phi-elimination,eog,dfg " + fixture_path("phi_diamond.ll"));
    CHECK(listed.status == 0);
}

TEST_CASE("alternate formats reach their outputs") {
    auto xml = run_cli("translate --format graphml " + fixture_path("phi_diamond.ll"));
    CHECK(xml.status == 0);
    CHECK(xml.out.rfind("<?xml", 0) == 0);

    auto base = temp_file("csvout");
    auto csv = run_cli("translate --format neo4j-csv " + fixture_path("phi_diamond.ll") +
                       " -o " + base.string());
    CHECK(csv.status == 0);
    auto nodes_path = fs::path(base.string() + "_nodes.csv");
    auto edges_path = fs::path(base.string() + "_edges.csv");
    REQUIRE(fs::exists(nodes_path));
    REQUIRE(fs::exists(edges_path));
    CHECK(slurp(nodes_path).rfind("id:ID", 0) == 0);
    CHECK(slurp(edges_path).rfind(":START_ID", 0) == 0);
    fs::remove(nodes_path);
    fs::remove(edges_path);
}

TEST_CASE("--strict turns malformed control flow into a failure") {
    auto tolerant = run_cli("translate " + fixture_path("bad_goto.ll"));
    CHECK(tolerant.status == 0); // degraded, not fatal

    auto strict = run_cli("translate --strict " + fixture_path("bad_goto.ll"), true);
    CHECK(strict.status == 2);
    CHECK(strict.out.find("error:") != std::string::npos);
}

TEST_CASE("--baseline-reg2mem changes the emitted graph") {
    auto ours = run_cli("stats " + fixture_path("phi/loop_sum.ll"));
    auto baseline = run_cli("stats --baseline-reg2mem " + fixture_path("phi/loop_sum.ll"));
    REQUIRE(ours.status == 0);
    REQUIRE(baseline.status == 0);
    CHECK(stat_line(baseline.out, "# Nodes: ") > stat_line(ours.out, "# Nodes: "));
}

TEST_CASE("runs are independent of invocation order") {
    auto a1 = run_cli("translate " + fixture_path("nested_struct_gep.ll"));
    (void)run_cli("translate " + fixture_path("insertvalue.ll"));
    auto a2 = run_cli("translate " + fixture_path("nested_struct_gep.ll"));
    CHECK(a1.out == a2.out);
}
