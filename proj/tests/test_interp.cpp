// The reference interpreter: ground-truth execution for translated graphs,
// and the agreement oracle between fresh and fully-passed graphs.

#include "catch_amalgamated.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cpgir/analysis/interp.hpp"
#include "cpgir/ir/parser.hpp"
#include "cpgir/passes/passes.hpp"
#include "cpgir/translate/translator.hpp"

using namespace cpgir;
using analysis::InterpResult;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(CPGIR_FIXTURES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

translate::TranslationResult translated(const std::string& source) {
    auto parsed = ir::parse_module(source);
    REQUIRE_FALSE(parsed.fatal);
    return translate::translate_module(parsed.module);
}

/// Interpret on the freshly translated graph (phi records live).
InterpResult run_fresh(const std::string& source, const std::string& fn,
                       const std::vector<long long>& args) {
    auto r = translated(source);
    passes::build_eog(r.graph);
    return analysis::interpret_function(r.graph, r.phi_records, fn, args);
}

/// Interpret after the full default pipeline (no records left).
InterpResult run_passed(const std::string& source, const std::string& fn,
                        const std::vector<long long>& args) {
    auto r = translated(source);
    passes::run_pipeline(r.graph, r.phi_records);
    return analysis::interpret_function(r.graph, {}, fn, args);
}

} // namespace

TEST_CASE("straight-line arithmetic evaluates") {
    const char* source = R"(
define i32 @f(i32 %a, i32 %b) {
entry:
  %s = add i32 %a, %b
  %d = mul i32 %s, 3
  %r = sub i32 %d, %b
  ret i32 %r
}
)";
    auto r = run_fresh(source, "f", {4, 5});
    REQUIRE_FALSE(r.trapped);
    CHECK(r.value == (4 + 5) * 3 - 5);
}

TEST_CASE("branches select the right path") {
    auto source = fixture("phi/diamond_max.ll");
    CHECK(run_fresh(source, "diamond_max", {3, 9}).value == 9);
    CHECK(run_fresh(source, "diamond_max", {9, 3}).value == 9);
    CHECK(run_fresh(source, "diamond_max", {-5, -2}).value == -2);
}

TEST_CASE("loops terminate with the right accumulation") {
    auto source = fixture("phi/loop_sum.ll");
    CHECK(run_fresh(source, "loop_sum", {5}).value == 0 + 1 + 2 + 3 + 4);
    CHECK(run_fresh(source, "loop_sum", {0}).value == 0);
    auto fact = fixture("phi/loop_fact.ll");
    CHECK(run_fresh(fact, "loop_fact", {5}).value == 120);
}

TEST_CASE("switch dispatch follows cases and the default") {
    auto source = fixture("phi/switch_phi.ll");
    CHECK(run_fresh(source, "switch_phi", {0}).value == 10);
    CHECK(run_fresh(source, "switch_phi", {1}).value == 11);
    CHECK(run_fresh(source, "switch_phi", {2}).value == 200);
    CHECK(run_fresh(source, "switch_phi", {7}).value == -5);
}

TEST_CASE("select chooses by condition") {
    auto source = fixture("phi/abs_select.ll");
    CHECK(run_fresh(source, "abs_select", {-7}).value == 7);
    CHECK(run_fresh(source, "abs_select", {300}).value == 100);
    CHECK(run_fresh(source, "abs_select", {42}).value == 42);
}

TEST_CASE("signed and unsigned division differ on the same bits") {
    const char* source = R"(
define i32 @u() {
entry:
  %r = udiv i8 255, 2
  %w = zext i8 %r to i32
  ret i32 %w
}
define i32 @s() {
entry:
  %r = sdiv i8 -1, 2
  %w = sext i8 %r to i32
  ret i32 %w
}
)";
    CHECK(run_fresh(source, "u", {}).value == 127); // 255 / 2 unsigned
    CHECK(run_fresh(source, "s", {}).value == 0);   // -1 / 2 signed
}

TEST_CASE("division by zero traps") {
    const char* source = R"(
define i32 @f(i32 %a) {
entry:
  %r = sdiv i32 10, %a
  ret i32 %r
}
)";
    auto r = run_fresh(source, "f", {0});
    CHECK(r.trapped);
    CHECK_FALSE(run_fresh(source, "f", {2}).trapped);
}

TEST_CASE("unmodeled memory operations trap instead of guessing") {
    const char* source = R"(
define i32 @f(i32* %p) {
entry:
  %v = load i32, i32* %p
  ret i32 %v
}
)";
    CHECK(run_fresh(source, "f", {0}).trapped);
}

TEST_CASE("runaway loops hit the step limit") {
    const char* source = R"(
define void @f() {
entry:
  br label %spin
spin:
  br label %spin
}
)";
    auto r = translated(source);
    passes::build_eog(r.graph);
    auto res = analysis::interpret_function(r.graph, r.phi_records, "f", {}, 1000);
    CHECK(res.trapped);
}

TEST_CASE("wrong arity traps") {
    const char* source = R"(
define i32 @f(i32 %a) {
entry:
  ret i32 %a
}
)";
    CHECK(run_fresh(source, "f", {}).trapped);
    CHECK(run_fresh(source, "f", {1, 2}).trapped);
    CHECK_FALSE(run_fresh(source, "f", {1}).trapped);
}

TEST_CASE("isunordered models NaN comparisons") {
    // exercised through fcmp: ult is true when unordered, olt is false
    const char* source = R"(
define i1 @ult_nan() {
entry:
  %r = fcmp ult double 0x7FF8000000000000, 1.0
  ret i1 %r
}
define i1 @olt_nan() {
entry:
  %r = fcmp olt double 0x7FF8000000000000, 1.0
  ret i1 %r
}
define i1 @olt_plain() {
entry:
  %r = fcmp olt double 1.0, 2.0
  ret i1 %r
}
)";
    CHECK(run_fresh(source, "ult_nan", {}).value == 1);
    CHECK(run_fresh(source, "olt_nan", {}).value == 0);
    CHECK(run_fresh(source, "olt_plain", {}).value == 1);
}

TEST_CASE("phi application is lazy and per-edge") {
    auto source = fixture("phi/gcd.ll");
    CHECK(run_fresh(source, "gcd", {48, 18}).value == 6);
    CHECK(run_fresh(source, "gcd", {7, 13}).value == 1);
    CHECK(run_fresh(source, "gcd", {42, 0}).value == 42);
}

TEST_CASE("fresh and passed graphs agree across the whole corpus") {
    struct Case {
        const char* file;
        const char* fn;
        size_t arity;
    };
    const Case corpus[] = {
        {"phi/diamond_max.ll", "diamond_max", 2},
        {"phi/loop_sum.ll", "loop_sum", 1},
        {"phi/loop_fact.ll", "loop_fact", 1},
        {"phi/triangle.ll", "triangle", 1},
        {"phi/multi_phi.ll", "multi_phi", 2},
        {"phi/swap_hazard.ll", "swap_pair", 1},
        {"phi/switch_phi.ll", "switch_phi", 1},
        {"phi/nested_branch.ll", "nested_branch", 2},
        {"phi/countdown.ll", "countdown", 2},
        {"phi/abs_select.ll", "abs_select", 1},
        {"phi/chain_blocks.ll", "chain_blocks", 1},
        {"phi/gcd.ll", "gcd", 2},
    };
    const long long pool[] = {-9, -3, -1, 0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 6, 7};

    for (const auto& c : corpus) {
        auto source = fixture(c.file);
        for (int k = 0; k < 16; ++k) {
            std::vector<long long> args;
            for (size_t i = 0; i < c.arity; ++i)
                args.push_back(pool[(k + 3 * i + 1) % 16]);
            INFO(c.file << " args#" << k);
            auto fresh = run_fresh(source, c.fn, args);
            auto passed = run_passed(source, c.fn, args);
            CHECK(fresh == passed);
        }
    }
}
