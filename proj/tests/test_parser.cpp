// Parser behavior: structural fidelity, implicit numbering, resilience, and
// the hard failure cases.

#include "catch_amalgamated.hpp"

#include "cpgir/ir/parser.hpp"

using namespace cpgir;

TEST_CASE("a minimal function parses structurally") {
    auto result = ir::parse_module(R"(
define i32 @add(i32 %a, i32 %b) {
entry:
  %c = add nsw i32 %a, %b
  ret i32 %c
}
)");
    REQUIRE_FALSE(result.fatal);
    REQUIRE(result.module.functions.size() == 1);
    const auto& fn = result.module.functions[0];
    CHECK(fn.name == "add");
    REQUIRE(fn.params.size() == 2);
    CHECK(fn.params[0].name == "a");
    CHECK(fn.params[1].name == "b");
    REQUIRE(fn.blocks.size() == 1);
    CHECK(fn.blocks[0].label == "entry");
    REQUIRE(fn.blocks[0].instructions.size() == 2);

    const auto& add = fn.blocks[0].instructions[0];
    CHECK(add.opcode == ir::Opcode::Add);
    CHECK(add.result_name == "c");
    CHECK(add.has_flag("nsw"));
    REQUIRE(add.operands.size() == 2);
    CHECK(add.operands[0].text == "a");
    CHECK(add.operands[1].text == "b");

    const auto& ret = fn.blocks[0].instructions[1];
    CHECK(ret.opcode == ir::Opcode::Ret);
    REQUIRE(ret.operands.size() == 1);
    CHECK(ret.operands[0].text == "c");
}

TEST_CASE("unnamed values follow the implicit numbering scheme") {
    auto result = ir::parse_module(R"(
define i32 @f(i32, i32) {
  %3 = add i32 %0, %1
  ret i32 %3
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& fn = result.module.functions[0];
    REQUIRE(fn.params.size() == 2);
    CHECK(fn.params[0].name == "0");
    CHECK(fn.params[1].name == "1");
    REQUIRE(fn.blocks.size() == 1);
    CHECK(fn.blocks[0].label == "2"); // the entry block takes the next slot
    CHECK(fn.blocks[0].instructions[0].result_name == "3");
}

TEST_CASE("every block records its terminator and label") {
    auto result = ir::parse_module(R"(
define i32 @max(i32 %a, i32 %b) {
entry:
  %cmp = icmp sgt i32 %a, %b
  br i1 %cmp, label %then, label %else
then:
  br label %merge
else:
  br label %merge
merge:
  %r = phi i32 [ %a, %then ], [ %b, %else ]
  ret i32 %r
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& fn = result.module.functions[0];
    REQUIRE(fn.blocks.size() == 4);
    CHECK(fn.blocks[0].label == "entry");
    CHECK(fn.blocks[3].label == "merge");

    const auto& phi = fn.blocks[3].instructions[0];
    REQUIRE(phi.opcode == ir::Opcode::Phi);
    REQUIRE(phi.operands.size() == 4); // value/label pairs
    CHECK(phi.operands[0].text == "a");
    CHECK(phi.operands[1].kind == ir::IrOperand::Kind::BlockLabel);
    CHECK(phi.operands[1].text == "then");
    CHECK(phi.operands[3].text == "else");

    const auto& icmp = fn.blocks[0].instructions[0];
    CHECK(icmp.predicate == "sgt");
    const auto& br = fn.blocks[0].instructions[1];
    CHECK(br.is_terminator());
}

TEST_CASE("named struct definitions land in the type table") {
    auto result = ir::parse_module(R"(
%RT = type { i8, [10 x [20 x i32]], i8 }
%ST = type { i32, double, %RT }
)");
    REQUIRE_FALSE(result.fatal);
    auto st = result.module.find_type("ST");
    REQUIRE(st);
    REQUIRE(st->members.size() == 3);
    CHECK(ir::to_string(st->members[0]) == "i32");
    CHECK(ir::to_string(st->members[1]) == "double");
    CHECK(ir::to_string(st->members[2]) == "%RT");

    auto rt = result.module.find_type("RT");
    REQUIRE(rt);
    CHECK(ir::to_string(rt->members[1]) == "[10 x [20 x i32]]");
}

TEST_CASE("string constants decode their escapes") {
    auto result = ir::parse_module(
        "@.str = private unnamed_addr constant [9 x i8] c\"AES:\\00MD5\"\n");
    REQUIRE_FALSE(result.fatal);
    REQUIRE(result.module.globals.size() == 1);
    const auto& g = result.module.globals[0];
    CHECK(g.name == ".str");
    CHECK(g.is_constant);
    REQUIRE(g.initializer.has_value());
    CHECK(g.initializer->kind == ir::IrOperand::Kind::LiteralString);
    CHECK(g.initializer->bytes == std::string("AES:\0MD5", 8));
}

TEST_CASE("getelementptr collects its full index list") {
    auto result = ir::parse_module(R"(
%RT = type { i8, [10 x [20 x i32]], i8 }
%ST = type { i32, double, %RT }
define i32* @foo(%ST* %s) {
entry:
  %arrayidx = getelementptr inbounds %ST, %ST* %s, i64 1, i32 2, i32 1, i64 5, i64 13
  ret i32* %arrayidx
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& gep = result.module.functions[0].blocks[0].instructions[0];
    REQUIRE(gep.opcode == ir::Opcode::GetElementPtr);
    CHECK(gep.has_flag("inbounds"));
    REQUIRE(gep.type_args.size() >= 1);
    CHECK(ir::to_string(gep.type_args[0]) == "%ST");
    REQUIRE(gep.operands.size() == 6); // base + five indices
    CHECK(gep.operands[0].text == "s");
    CHECK(gep.operands[1].int_value == 1);
    CHECK(gep.operands[5].int_value == 13);
}

TEST_CASE("unknown instructions degrade to opaque, not a crash") {
    auto result = ir::parse_module(R"(
define void @f() {
entry:
  %x = frobnicate i32 1, i32 2
  ret void
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& instr = result.module.functions[0].blocks[0].instructions[0];
    CHECK(instr.opcode == ir::Opcode::Opaque);
    CHECK(instr.result_name == "x");
    CHECK(instr.raw_text.find("frobnicate") != std::string::npos);
    CHECK_FALSE(result.diagnostics.empty());
}

TEST_CASE("unbalanced function braces are the one fatal case") {
    auto result = ir::parse_module(R"(
define void @f() {
entry:
  ret void
)");
    CHECK(result.fatal);
    CHECK_FALSE(result.fatal_message.empty());
}

TEST_CASE("top-level garbage costs a diagnostic, never the module") {
    auto result = ir::parse_module(R"(
this is not ir at all
define i32 @ok() {
entry:
  ret i32 7
}
)");
    REQUIRE_FALSE(result.fatal);
    CHECK(result.module.functions.size() == 1);
    CHECK_FALSE(result.diagnostics.empty());
}

TEST_CASE("constant expressions nest up to the depth cap") {
    std::string inner = "i8* getelementptr inbounds ([4 x i8], [4 x i8]* @s, i64 0, i64 0)";
    auto shallow = ir::parse_module("@s = constant [4 x i8] c\"abc\\00\"\n"
                                    "@p = global " +
                                    inner + "\n");
    REQUIRE_FALSE(shallow.fatal);
    REQUIRE(shallow.module.globals.size() == 2);
    CHECK(shallow.module.globals[1].initializer->kind == ir::IrOperand::Kind::ConstExpr);

    // depth 9 exceeds the cap of 8: the outer levels still parse, the level
    // beyond the cap is kept opaque and a warning is raised
    std::string nested = "i8* @s";
    for (int i = 0; i < 9; ++i) nested = "i8* bitcast (" + nested + " to i8*)";
    auto deep = ir::parse_module("@s = global i8 0\n@p = global " + nested + "\n");
    REQUIRE_FALSE(deep.fatal);
    REQUIRE(deep.module.globals.size() == 2);
    const ir::IrOperand* cursor = &*deep.module.globals[1].initializer;
    int const_levels = 0;
    while (cursor->kind == ir::IrOperand::Kind::ConstExpr) {
        ++const_levels;
        REQUIRE_FALSE(cursor->expr->operands.empty());
        cursor = &cursor->expr->operands[0];
    }
    CHECK(const_levels == 8);
    CHECK(cursor->kind == ir::IrOperand::Kind::Unsupported);
    CHECK_FALSE(deep.diagnostics.empty());
}

TEST_CASE("calls distinguish direct, varargs-typed, and indirect callees") {
    auto result = ir::parse_module(R"(
declare i32 @printf(i8*, ...)
define void @f(i32 (i32)* %fp, i8* %fmt) {
entry:
  %a = call i32 (i8*, ...) @printf(i8* %fmt, i32 7)
  %b = call i32 %fp(i32 1)
  call void asm sideeffect "nop", ""()
  ret void
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto* fn = result.module.find_function("f");
    REQUIRE(fn);
    REQUIRE_FALSE(fn->blocks.empty());
    const auto& block = fn->blocks[0];

    const auto& direct = block.instructions[0];
    CHECK(direct.callee == "printf");
    CHECK_FALSE(direct.has_flag("indirect"));
    REQUIRE(direct.operands.size() == 2);
    CHECK(direct.operands[1].int_value == 7);

    const auto& indirect = block.instructions[1];
    CHECK(indirect.has_flag("indirect"));
    REQUIRE_FALSE(indirect.operands.empty());
    CHECK(indirect.operands[0].text == "fp");
}

TEST_CASE("atomics carry their ordering flags") {
    auto result = ir::parse_module(R"(
define i32 @f(i32* %p) {
entry:
  %pair = cmpxchg i32* %p, i32 5, i32 9 acq_rel monotonic
  %old = atomicrmw add i32* %p, i32 1 seq_cst
  ret i32 %old
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& block = result.module.functions[0].blocks[0];
    const auto& cx = block.instructions[0];
    REQUIRE(cx.opcode == ir::Opcode::CmpXchg);
    CHECK(cx.has_flag("success-acq_rel"));
    CHECK(cx.has_flag("failure-monotonic"));
    const auto& rmw = block.instructions[1];
    REQUIRE(rmw.opcode == ir::Opcode::AtomicRMW);
    CHECK(rmw.predicate == "add");
}

TEST_CASE("parsing twice yields the same structure") {
    std::string source = R"(
@g = global i32 42
define i32 @f(i32 %x) {
entry:
  %a = mul i32 %x, 3
  %b = load i32, i32* @g
  %c = add i32 %a, %b
  ret i32 %c
}
)";
    auto first = ir::parse_module(source);
    auto second = ir::parse_module(source);
    REQUIRE_FALSE(first.fatal);
    REQUIRE_FALSE(second.fatal);
    REQUIRE(first.module.functions.size() == second.module.functions.size());
    const auto& fa = first.module.functions[0];
    const auto& fb = second.module.functions[0];
    REQUIRE(fa.blocks[0].instructions.size() == fb.blocks[0].instructions.size());
    for (size_t i = 0; i < fa.blocks[0].instructions.size(); ++i) {
        CHECK(fa.blocks[0].instructions[i].opcode == fb.blocks[0].instructions[i].opcode);
        CHECK(fa.blocks[0].instructions[i].raw_text == fb.blocks[0].instructions[i].raw_text);
    }
}

TEST_CASE("opaque pointers parse alongside typed pointers") {
    auto result = ir::parse_module(R"(
define void @f(ptr %p, i32* %q) {
entry:
  %v = load i32, ptr %p
  store i32 %v, i32* %q
  ret void
}
)");
    REQUIRE_FALSE(result.fatal);
    const auto& load = result.module.functions[0].blocks[0].instructions[0];
    CHECK(load.opcode == ir::Opcode::Load);
    REQUIRE(load.operands.size() == 1);
    CHECK(ir::to_string(load.operands[0].type) == "ptr");
}

TEST_CASE("single instructions parse standalone") {
    auto instr = ir::Parser::parse_single_instruction("%r = icmp slt i32 %a, 5");
    CHECK(instr.opcode == ir::Opcode::ICmp);
    CHECK(instr.predicate == "slt");
    CHECK(instr.result_name == "r");
    REQUIRE(instr.operands.size() == 2);
    CHECK(instr.operands[1].int_value == 5);
}
