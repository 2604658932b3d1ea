// Graph container invariants: identity, tree discipline, interning, edge
// ordering, statistics, and tombstone handling.

#include "catch_amalgamated.hpp"

#include "cpgir/cpg/graph.hpp"

using namespace cpgir;
using cpg::CpgGraph;
using cpg::NodeKind;

TEST_CASE("node ids are dense and stable") {
    CpgGraph g;
    auto a = g.new_node(NodeKind::TranslationUnit, "tu");
    auto b = g.new_node(NodeKind::FunctionDeclaration, "f");
    auto c = g.new_node(NodeKind::Literal, "1");
    CHECK(a == 0u);
    CHECK(b == 1u);
    CHECK(c == 2u);
    CHECK(g.node(b).name == "f");
    CHECK(g.node(b).kind == NodeKind::FunctionDeclaration);
}

TEST_CASE("ast children keep insertion order and parents") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit, "tu");
    g.root = root;
    auto fn = g.new_node(NodeKind::FunctionDeclaration, "f");
    g.add_child(root, fn);
    auto s1 = g.new_node(NodeKind::ReturnStatement);
    auto s2 = g.new_node(NodeKind::CompoundStatement);
    g.add_child(fn, s2);
    g.insert_child(fn, 0, s1); // insert_child places before existing children
    REQUIRE(g.node(fn).ast_children.size() == 2);
    CHECK(g.node(fn).ast_children[0] == s1);
    CHECK(g.node(fn).ast_children[1] == s2);
    CHECK(g.node(s1).ast_parent == fn);
    CHECK_NOTHROW(g.validate_tree());
}

TEST_CASE("a node cannot acquire two parents") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto a = g.new_node(NodeKind::CompoundStatement);
    auto b = g.new_node(NodeKind::CompoundStatement);
    auto child = g.new_node(NodeKind::Literal);
    g.add_child(root, a);
    g.add_child(root, b);
    g.add_child(a, child);
    CHECK_THROWS_AS(g.add_child(b, child), cpg::GraphInvariantViolation);
}

TEST_CASE("remove_subtree tombstones the whole subtree and its edges") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto fn = g.new_node(NodeKind::FunctionDeclaration, "f");
    g.add_child(root, fn);
    auto body = g.new_node(NodeKind::CompoundStatement);
    g.add_child(fn, body);
    auto stmt = g.new_node(NodeKind::ReturnStatement);
    g.add_child(body, stmt);
    g.add_eog(body, stmt);
    g.add_dfg(stmt, body);

    g.remove_subtree(body);
    CHECK_FALSE(g.alive(body));
    CHECK_FALSE(g.alive(stmt));
    CHECK(g.alive(fn));
    // dead endpoints disappear from the edge view
    for (const auto& e : g.all_edges()) {
        CHECK(g.alive(e.from));
        CHECK(g.alive(e.to));
    }
    CHECK(g.live_node_count() == 2);
}

TEST_CASE("literal struct records are interned by field list") {
    CpgGraph g;
    g.root = g.new_node(NodeKind::TranslationUnit);
    auto r1 = g.intern_literal_struct({"i32", "i8"});
    auto r2 = g.intern_literal_struct({"i32", "i8"});
    auto r3 = g.intern_literal_struct({"i32", "i64"});
    CHECK(r1 == r2);
    CHECK(r1 != r3);
    CHECK(g.node(r1).name == "literal_i32_i8");
    REQUIRE(g.node(r1).ast_children.size() == 2);
    CHECK(g.node(g.node(r1).ast_children[0]).name == "field_0");
    CHECK(g.node(g.node(r1).ast_children[0]).type == "i32");
    CHECK(g.node(g.node(r1).ast_children[1]).name == "field_1");
}

TEST_CASE("all_edges is sorted by source but preserves ast child order") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto parent = g.new_node(NodeKind::IfStatement);
    g.add_child(root, parent);
    // children whose ids are NOT ascending in child position
    auto late = g.new_node(NodeKind::Literal, "cond");
    auto early = g.new_node(NodeKind::CompoundStatement, "then");
    g.add_child(parent, early);
    g.insert_child(parent, 0, late);

    auto edges = g.all_edges();
    std::vector<cpg::NodeId> order;
    for (const auto& e : edges)
        if (e.from == parent && e.kind == cpg::EdgeKind::Ast) order.push_back(e.to);
    REQUIRE(order.size() == 2);
    CHECK(order[0] == late);  // child position 0 first, despite the higher id
    CHECK(order[1] == early);
}

TEST_CASE("duplicate overlay edges are deduplicated in the edge view") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto a = g.new_node(NodeKind::Literal);
    auto b = g.new_node(NodeKind::Literal);
    g.add_child(root, a);
    g.add_child(root, b);
    g.add_dfg(a, b);
    g.add_dfg(a, b);
    size_t dfg = 0;
    for (const auto& e : g.all_edges())
        if (e.kind == cpg::EdgeKind::Dfg) ++dfg;
    CHECK(dfg == 1);
}

TEST_CASE("stats recompute from live content") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto fn = g.new_node(NodeKind::FunctionDeclaration, "f");
    g.add_child(root, fn);
    auto problem = g.new_node(NodeKind::ProblemNode, "", "???");
    g.add_child(fn, problem);
    g.finalize();
    CHECK(g.stats.node_count == 3);
    CHECK(g.stats.function_count == 1);
    CHECK(g.stats.problem_node_count == 1);
    CHECK(g.stats.nodes_by_kind.at("ProblemNode") == 1);
    CHECK(g.stats.edges_by_kind.at("AST") == 2);
}

TEST_CASE("node kind names round-trip") {
    for (int k = 0; k <= static_cast<int>(NodeKind::ProblemNode); ++k) {
        auto kind = static_cast<NodeKind>(k);
        auto back = cpg::node_kind_from(std::string(cpg::node_kind_name(kind)));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK_FALSE(cpg::node_kind_from("NoSuchKind").has_value());
}

TEST_CASE("pending roots legalize detached subtrees until attached") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto hanging = g.new_node(NodeKind::Literal, "42");
    // unattached and unregistered: the forest check rejects it
    CHECK_THROWS_AS(g.validate_tree(), cpg::GraphInvariantViolation);
    g.mark_pending(hanging);
    CHECK_NOTHROW(g.validate_tree());
    // attaching clears the pending mark
    g.add_child(root, hanging);
    CHECK(g.pending_roots.empty());
    CHECK_NOTHROW(g.validate_tree());
}

TEST_CASE("discard_pending removes unattached pending subtrees") {
    CpgGraph g;
    auto root = g.new_node(NodeKind::TranslationUnit);
    g.root = root;
    auto expr = g.new_node(NodeKind::BinaryOperator, "+");
    auto lhs = g.new_node(NodeKind::Literal, "1");
    g.add_child(expr, lhs);
    g.mark_pending(expr);
    g.discard_pending();
    CHECK_FALSE(g.alive(expr));
    CHECK_FALSE(g.alive(lhs));
    CHECK(g.pending_roots.empty());
    CHECK_NOTHROW(g.validate_tree());
}
