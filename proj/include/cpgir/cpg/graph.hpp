#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpgir/support.hpp"

namespace cpgir::cpg {

/// Node kinds mirror the source-language graph schema so that graphs built
/// from IR and graphs built from source code stay comparable.
enum class NodeKind {
    TranslationUnit,
    FunctionDeclaration,
    ParameterDeclaration,
    VariableDeclaration,
    RecordDeclaration,
    FieldDeclaration,
    CompoundStatement,
    IfStatement,
    SwitchStatement,
    CaseStatement,
    GotoStatement,
    LabelStatement,
    ReturnStatement,
    TryStatement,
    CatchClause,
    ThrowStatement,
    BinaryOperator,
    UnaryOperator,
    CastExpression,
    CallExpression,
    MemberExpression,
    ArraySubscriptionExpression,
    DeclaredReferenceExpression,
    Literal,
    ConditionalExpression,
    ProblemNode,
};

inline std::string_view node_kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::TranslationUnit: return "TranslationUnit";
    case NodeKind::FunctionDeclaration: return "FunctionDeclaration";
    case NodeKind::ParameterDeclaration: return "ParameterDeclaration";
    case NodeKind::VariableDeclaration: return "VariableDeclaration";
    case NodeKind::RecordDeclaration: return "RecordDeclaration";
    case NodeKind::FieldDeclaration: return "FieldDeclaration";
    case NodeKind::CompoundStatement: return "CompoundStatement";
    case NodeKind::IfStatement: return "IfStatement";
    case NodeKind::SwitchStatement: return "SwitchStatement";
    case NodeKind::CaseStatement: return "CaseStatement";
    case NodeKind::GotoStatement: return "GotoStatement";
    case NodeKind::LabelStatement: return "LabelStatement";
    case NodeKind::ReturnStatement: return "ReturnStatement";
    case NodeKind::TryStatement: return "TryStatement";
    case NodeKind::CatchClause: return "CatchClause";
    case NodeKind::ThrowStatement: return "ThrowStatement";
    case NodeKind::BinaryOperator: return "BinaryOperator";
    case NodeKind::UnaryOperator: return "UnaryOperator";
    case NodeKind::CastExpression: return "CastExpression";
    case NodeKind::CallExpression: return "CallExpression";
    case NodeKind::MemberExpression: return "MemberExpression";
    case NodeKind::ArraySubscriptionExpression: return "ArraySubscriptionExpression";
    case NodeKind::DeclaredReferenceExpression: return "DeclaredReferenceExpression";
    case NodeKind::Literal: return "Literal";
    case NodeKind::ConditionalExpression: return "ConditionalExpression";
    case NodeKind::ProblemNode: return "ProblemNode";
    }
    return "Unknown";
}

inline std::optional<NodeKind> node_kind_from(std::string_view name) {
    static const NodeKind all[] = {
        NodeKind::TranslationUnit,    NodeKind::FunctionDeclaration,
        NodeKind::ParameterDeclaration, NodeKind::VariableDeclaration,
        NodeKind::RecordDeclaration,  NodeKind::FieldDeclaration,
        NodeKind::CompoundStatement,  NodeKind::IfStatement,
        NodeKind::SwitchStatement,    NodeKind::CaseStatement,
        NodeKind::GotoStatement,      NodeKind::LabelStatement,
        NodeKind::ReturnStatement,    NodeKind::TryStatement,
        NodeKind::CatchClause,        NodeKind::ThrowStatement,
        NodeKind::BinaryOperator,     NodeKind::UnaryOperator,
        NodeKind::CastExpression,     NodeKind::CallExpression,
        NodeKind::MemberExpression,   NodeKind::ArraySubscriptionExpression,
        NodeKind::DeclaredReferenceExpression, NodeKind::Literal,
        NodeKind::ConditionalExpression, NodeKind::ProblemNode,
    };
    for (NodeKind k : all)
        if (node_kind_name(k) == name) return k;
    return std::nullopt;
}

enum class EdgeKind {
    Ast,      ///< syntax-tree containment (ordered)
    Eog,      ///< evaluation order (statement-level control flow)
    Dfg,      ///< data flow between values
    RefersTo, ///< reference expression -> declaration
    Type,     ///< value -> record declaration of its type
    Field,    ///< member expression -> field declaration
};

inline std::string_view edge_kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::Ast: return "AST";
    case EdgeKind::Eog: return "EOG";
    case EdgeKind::Dfg: return "DFG";
    case EdgeKind::RefersTo: return "REFERS_TO";
    case EdgeKind::Type: return "TYPE";
    case EdgeKind::Field: return "FIELD";
    }
    return "UNKNOWN";
}

using NodeId = uint32_t;
inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);

struct CpgNode {
    NodeId id = kInvalidNode;
    NodeKind kind;
    std::string name;         ///< declared name / operator code / callee
    std::string code;         ///< source snippet the node stands for
    std::string type;         ///< type spelling where one applies
    int line = 0;
    std::map<std::string, std::string> properties; ///< sorted for stable export
    bool alive = true;

    // syntax-tree adjacency is authoritative and kept ordered
    NodeId ast_parent = kInvalidNode;
    std::vector<NodeId> ast_children;

    bool has_property(std::string_view key) const {
        return properties.find(std::string(key)) != properties.end();
    }
    std::string property_or(std::string_view key, std::string fallback = {}) const {
        auto it = properties.find(std::string(key));
        return it == properties.end() ? fallback : it->second;
    }
};

struct CpgEdge {
    NodeId from = kInvalidNode;
    NodeId to = kInvalidNode;
    EdgeKind kind;
    bool operator==(const CpgEdge&) const = default;
};

struct TranslationStats {
    uint64_t node_count = 0;
    uint64_t edge_count = 0;
    uint64_t function_count = 0;
    uint64_t problem_node_count = 0;
    std::map<std::string, uint64_t> nodes_by_kind;
    std::map<std::string, uint64_t> edges_by_kind;
    std::map<std::string, double> phase_times_ms;
};

struct MissingRequiredProperty : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphInvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph arena with dense ids. Removal tombstones a node; `finalize` checks
/// the structural invariants and refreshes the stats block.
class CpgGraph {
public:
    std::vector<CpgNode> nodes;
    std::vector<CpgEdge> eog_edges;
    std::vector<CpgEdge> dfg_edges;
    std::vector<CpgEdge> refers_to_edges;
    std::vector<CpgEdge> type_edges;
    std::vector<CpgEdge> field_edges;
    TranslationStats stats;
    NodeId root = kInvalidNode;
    /// Detached subtree roots that are legitimately waiting to be attached
    /// (pre-built φ operand expressions). Validation treats them as extra
    /// roots; attaching or removing them clears the entry.
    std::vector<NodeId> pending_roots;

    // ---- construction --------------------------------------------------

    NodeId new_node(NodeKind kind, std::string name = {}, std::string code = {},
                    std::string type = {}) {
        check_required(kind, name);
        CpgNode n;
        n.id = static_cast<NodeId>(nodes.size());
        n.kind = kind;
        n.name = std::move(name);
        n.code = std::move(code);
        n.type = std::move(type);
        nodes.push_back(std::move(n));
        return nodes.back().id;
    }

    CpgNode& node(NodeId id) { return nodes.at(id); }
    const CpgNode& node(NodeId id) const { return nodes.at(id); }
    bool alive(NodeId id) const { return id < nodes.size() && nodes[id].alive; }

    void set_property(NodeId id, std::string key, std::string value) {
        node(id).properties[std::move(key)] = std::move(value);
    }

    // ---- syntax tree ---------------------------------------------------

    void add_child(NodeId parent, NodeId child) {
        if (node(child).ast_parent != kInvalidNode)
            throw GraphInvariantViolation("node " + std::to_string(child) +
                                          " already has a syntax-tree parent");
        node(parent).ast_children.push_back(child);
        node(child).ast_parent = parent;
        clear_pending(child);
    }

    void insert_child(NodeId parent, size_t index, NodeId child) {
        if (node(child).ast_parent != kInvalidNode)
            throw GraphInvariantViolation("node " + std::to_string(child) +
                                          " already has a syntax-tree parent");
        auto& kids = node(parent).ast_children;
        index = std::min(index, kids.size());
        kids.insert(kids.begin() + static_cast<ptrdiff_t>(index), child);
        node(child).ast_parent = parent;
        clear_pending(child);
    }

    void mark_pending(NodeId id) { pending_roots.push_back(id); }

    void clear_pending(NodeId id) {
        pending_roots.erase(std::remove(pending_roots.begin(), pending_roots.end(), id),
                            pending_roots.end());
    }

    /// Removes every still-detached pending subtree (used when φ elimination
    /// is skipped and the pre-built value expressions must not leak into the
    /// exported graph).
    void discard_pending() {
        std::vector<NodeId> roots = pending_roots;
        for (NodeId r : roots)
            if (alive(r)) remove_subtree(r);
        pending_roots.clear();
    }

    void detach_child(NodeId child) {
        NodeId parent = node(child).ast_parent;
        if (parent == kInvalidNode) return;
        auto& kids = node(parent).ast_children;
        kids.erase(std::remove(kids.begin(), kids.end(), child), kids.end());
        node(child).ast_parent = kInvalidNode;
    }

    void replace_child(NodeId parent, NodeId old_child, NodeId new_child) {
        auto& kids = node(parent).ast_children;
        auto it = std::find(kids.begin(), kids.end(), old_child);
        if (it == kids.end())
            throw GraphInvariantViolation("replace_child: node " + std::to_string(old_child) +
                                          " is not a child of " + std::to_string(parent));
        if (node(new_child).ast_parent != kInvalidNode)
            throw GraphInvariantViolation("replace_child: replacement already attached");
        *it = new_child;
        node(old_child).ast_parent = kInvalidNode;
        node(new_child).ast_parent = parent;
    }

    /// Tombstones a node and its entire syntax subtree, dropping overlay
    /// edges that touch removed nodes.
    void remove_subtree(NodeId id) {
        detach_child(id);
        std::vector<NodeId> stack = {id};
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            if (!nodes[n].alive) continue;
            nodes[n].alive = false;
            clear_pending(n);
            for (NodeId c : nodes[n].ast_children) stack.push_back(c);
            nodes[n].ast_children.clear();
        }
        prune_overlay_edges();
    }

    // ---- overlay edges -------------------------------------------------

    void add_eog(NodeId from, NodeId to) { eog_edges.push_back({from, to, EdgeKind::Eog}); }
    void add_dfg(NodeId from, NodeId to) { dfg_edges.push_back({from, to, EdgeKind::Dfg}); }
    void add_refers_to(NodeId from, NodeId to) {
        refers_to_edges.push_back({from, to, EdgeKind::RefersTo});
    }
    void add_type_edge(NodeId from, NodeId to) {
        type_edges.push_back({from, to, EdgeKind::Type});
    }
    void add_field_edge(NodeId from, NodeId to) {
        field_edges.push_back({from, to, EdgeKind::Field});
    }

    std::vector<NodeId> eog_successors(NodeId id) const {
        std::vector<NodeId> out;
        for (const auto& e : eog_edges)
            if (e.from == id) out.push_back(e.to);
        return out;
    }

    std::vector<NodeId> eog_predecessors(NodeId id) const {
        std::vector<NodeId> out;
        for (const auto& e : eog_edges)
            if (e.to == id) out.push_back(e.from);
        return out;
    }

    std::vector<NodeId> dfg_predecessors(NodeId id) const {
        std::vector<NodeId> out;
        for (const auto& e : dfg_edges)
            if (e.to == id) out.push_back(e.from);
        return out;
    }

    std::vector<NodeId> dfg_successors(NodeId id) const {
        std::vector<NodeId> out;
        for (const auto& e : dfg_edges)
            if (e.from == id) out.push_back(e.to);
        return out;
    }

    std::optional<NodeId> refers_to(NodeId id) const {
        for (const auto& e : refers_to_edges)
            if (e.from == id) return e.to;
        return std::nullopt;
    }

    // ---- queries -------------------------------------------------------

    uint64_t live_node_count() const {
        return static_cast<uint64_t>(
            std::count_if(nodes.begin(), nodes.end(), [](const CpgNode& n) { return n.alive; }));
    }

    std::vector<NodeId> nodes_of_kind(NodeKind kind) const {
        std::vector<NodeId> out;
        for (const auto& n : nodes)
            if (n.alive && n.kind == kind) out.push_back(n.id);
        return out;
    }

    /// Preorder walk of the syntax subtree rooted at `id` (live nodes only).
    /// The visitor may take either the node id or the node itself.
    template <typename F> void walk(NodeId id, F&& visit) const {
        if (!alive(id)) return;
        if constexpr (std::is_invocable_v<F&, const CpgNode&>)
            visit(node(id));
        else
            visit(id);
        for (NodeId c : node(id).ast_children) walk(c, visit);
    }

    /// Interns the record declaration describing a literal (anonymous) struct
    /// type. Two struct types with the same field list share one node.
    NodeId intern_literal_struct(const std::vector<std::string>& field_types) {
        std::string name = "literal";
        for (const auto& f : field_types) name += "_" + f;
        auto it = literal_records.find(name);
        if (it != literal_records.end()) return it->second;

        NodeId rec = new_node(NodeKind::RecordDeclaration, name, name, name);
        set_property(rec, "literalStruct", "true");
        if (root != kInvalidNode) add_child(root, rec);
        for (size_t i = 0; i < field_types.size(); ++i) {
            NodeId field = new_node(NodeKind::FieldDeclaration, "field_" + std::to_string(i),
                                    "field_" + std::to_string(i), field_types[i]);
            add_child(rec, field);
        }
        literal_records.emplace(std::move(name), rec);
        return rec;
    }

    std::optional<NodeId> find_literal_struct(const std::string& interned_name) const {
        auto it = literal_records.find(interned_name);
        if (it == literal_records.end()) return std::nullopt;
        return it->second;
    }

    /// Field declaration at `index` of a record, when present.
    std::optional<NodeId> record_field(NodeId record, size_t index) const {
        size_t seen = 0;
        for (NodeId c : node(record).ast_children) {
            if (!alive(c) || node(c).kind != NodeKind::FieldDeclaration) continue;
            if (seen == index) return c;
            ++seen;
        }
        return std::nullopt;
    }

    // ---- validation / stats -------------------------------------------

    /// Checks structural invariants, prunes overlay edges into tombstoned
    /// nodes, and recomputes the stats block from live nodes.
    void finalize() {
        prune_overlay_edges();
        validate_tree();
        recompute_stats();
    }

    /// Deterministic unified edge list (AST edges materialized from the
    /// adjacency, then the overlays) sorted by (from, kind, order, to).
    std::vector<CpgEdge> all_edges() const {
        std::vector<CpgEdge> out;
        for (const auto& n : nodes) {
            if (!n.alive) continue;
            for (NodeId c : n.ast_children)
                if (alive(c)) out.push_back({n.id, c, EdgeKind::Ast});
        }
        auto append = [&](const std::vector<CpgEdge>& edges) {
            for (const auto& e : edges)
                if (alive(e.from) && alive(e.to)) out.push_back(e);
        };
        append(eog_edges);
        append(dfg_edges);
        append(refers_to_edges);
        append(type_edges);
        append(field_edges);
        std::stable_sort(out.begin(), out.end(), [](const CpgEdge& a, const CpgEdge& b) {
            if (a.from != b.from) return a.from < b.from;
            if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
            // AST ties keep child order (stable sort); overlays order by target
            if (a.kind == EdgeKind::Ast) return false;
            return a.to < b.to;
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](const CpgEdge& a, const CpgEdge& b) {
                                  return a.kind != EdgeKind::Ast && a.from == b.from &&
                                         a.to == b.to && a.kind == b.kind;
                              }),
                  out.end());
        return out;
    }

private:
    std::map<std::string, NodeId> literal_records;

    static void check_required(NodeKind kind, const std::string& name) {
        switch (kind) {
        case NodeKind::FunctionDeclaration:
        case NodeKind::ParameterDeclaration:
        case NodeKind::VariableDeclaration:
        case NodeKind::RecordDeclaration:
        case NodeKind::FieldDeclaration:
            if (name.empty())
                throw MissingRequiredProperty(std::string(node_kind_name(kind)) +
                                              " requires a name");
            break;
        case NodeKind::BinaryOperator:
        case NodeKind::UnaryOperator:
            if (name.empty())
                throw MissingRequiredProperty(std::string(node_kind_name(kind)) +
                                              " requires an operator code");
            break;
        default: break;
        }
    }

    void prune_overlay_edges() {
        auto prune = [this](std::vector<CpgEdge>& edges) {
            edges.erase(std::remove_if(edges.begin(), edges.end(),
                                       [this](const CpgEdge& e) {
                                           return !alive(e.from) || !alive(e.to);
                                       }),
                        edges.end());
        };
        prune(eog_edges);
        prune(dfg_edges);
        prune(refers_to_edges);
        prune(type_edges);
        prune(field_edges);
    }

public:
    /// Checks every tree invariant: parent/child links are symmetric, no
    /// tombstoned endpoints, each live node attached, rooted, or pending.
    /// Throws GraphInvariantViolation on the first breach.
    void validate_tree() const {
        for (const auto& n : nodes) {
            if (!n.alive) continue;
            if (n.ast_parent != kInvalidNode) {
                if (!alive(n.ast_parent))
                    throw GraphInvariantViolation("node " + std::to_string(n.id) +
                                                  " has a tombstoned parent");
                const auto& kids = node(n.ast_parent).ast_children;
                if (std::find(kids.begin(), kids.end(), n.id) == kids.end())
                    throw GraphInvariantViolation("node " + std::to_string(n.id) +
                                                  " missing from its parent's child list");
            }
            for (NodeId c : n.ast_children) {
                if (!alive(c))
                    throw GraphInvariantViolation("node " + std::to_string(n.id) +
                                                  " has a tombstoned child");
                if (node(c).ast_parent != n.id)
                    throw GraphInvariantViolation("child " + std::to_string(c) +
                                                  " does not point back to parent " +
                                                  std::to_string(n.id));
            }
        }
        // every live node reaches the root: the syntax structure is a forest
        // rooted at the translation unit (detached literals are an error)
        if (root == kInvalidNode) return;
        for (const auto& n : nodes) {
            if (!n.alive) continue;
            NodeId cur = n.id;
            size_t hops = 0;
            while (node(cur).ast_parent != kInvalidNode && hops++ <= nodes.size())
                cur = node(cur).ast_parent;
            if (hops > nodes.size())
                throw GraphInvariantViolation("syntax-tree cycle through node " +
                                              std::to_string(n.id));
            bool pending = std::find(pending_roots.begin(), pending_roots.end(), cur) !=
                           pending_roots.end();
            if (cur != root && !pending)
                throw GraphInvariantViolation("node " + std::to_string(n.id) +
                                              " is not attached to the translation unit");
        }
    }

    void recompute_stats() {
        stats.nodes_by_kind.clear();
        stats.edges_by_kind.clear();
        stats.node_count = 0;
        stats.problem_node_count = 0;
        stats.function_count = 0;
        for (const auto& n : nodes) {
            if (!n.alive) continue;
            ++stats.node_count;
            ++stats.nodes_by_kind[std::string(node_kind_name(n.kind))];
            if (n.kind == NodeKind::ProblemNode) ++stats.problem_node_count;
            if (n.kind == NodeKind::FunctionDeclaration) ++stats.function_count;
        }
        auto edges = all_edges();
        stats.edge_count = edges.size();
        for (const auto& e : edges) ++stats.edges_by_kind[std::string(edge_kind_name(e.kind))];
    }
};

} // namespace cpgir::cpg
