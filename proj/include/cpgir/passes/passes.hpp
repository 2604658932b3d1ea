#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpgir/cpg/graph.hpp"
#include "cpgir/translate/translator.hpp"

namespace cpgir::passes {

/// Strict-mode φ elimination found an incoming edge whose predecessor label
/// does not exist in the owning function.
struct UnknownPredecessor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict-mode EOG construction found a goto whose target label is missing.
struct GotoWithoutLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void for_each_function(cpg::CpgGraph& g, const std::function<void(cpg::NodeId)>& fn) {
    if (g.root == cpg::kInvalidNode) return;
    for (cpg::NodeId c : g.node(g.root).ast_children)
        if (g.alive(c) && g.node(c).kind == cpg::NodeKind::FunctionDeclaration) fn(c);
}

inline cpg::NodeId function_body(const cpg::CpgGraph& g, cpg::NodeId fn) {
    for (cpg::NodeId c : g.node(fn).ast_children)
        if (g.alive(c) && g.node(c).kind == cpg::NodeKind::CompoundStatement) return c;
    return cpg::kInvalidNode;
}

/// label name -> (LabelStatement, following block CompoundStatement)
struct BlockLayout {
    std::map<std::string, cpg::NodeId> labels;
    std::map<std::string, cpg::NodeId> bodies;
};

inline BlockLayout block_layout(const cpg::CpgGraph& g, cpg::NodeId fn) {
    BlockLayout layout;
    cpg::NodeId body = function_body(g, fn);
    if (body == cpg::kInvalidNode) return layout;
    const auto& kids = g.node(body).ast_children;
    for (size_t i = 0; i < kids.size(); ++i) {
        if (!g.alive(kids[i]) || g.node(kids[i]).kind != cpg::NodeKind::LabelStatement)
            continue;
        const std::string& label = g.node(kids[i]).name;
        layout.labels[label] = kids[i];
        if (i + 1 < kids.size() && g.alive(kids[i + 1]) &&
            g.node(kids[i + 1]).kind == cpg::NodeKind::CompoundStatement)
            layout.bodies[label] = kids[i + 1];
    }
    return layout;
}

/// Deep-copies a subtree, preserving kind, name, code, type, line, and
/// properties; the copy is returned detached.
inline cpg::NodeId clone_subtree(cpg::CpgGraph& g, cpg::NodeId src) {
    // new_node may reallocate the node pool, so never hold a reference to
    // the source across it
    cpg::NodeId copy = g.new_node(g.node(src).kind, g.node(src).name, g.node(src).code,
                                  g.node(src).type);
    g.node(copy).line = g.node(src).line;
    g.node(copy).properties = g.node(src).properties;
    std::vector<cpg::NodeId> kids = g.node(src).ast_children;
    for (cpg::NodeId c : kids)
        if (g.alive(c)) g.add_child(copy, clone_subtree(g, c));
    return copy;
}

inline const std::string& goto_target(const cpg::CpgNode& n) {
    auto it = n.properties.find("targetLabel");
    return it != n.properties.end() ? it->second : n.name;
}

/// Statements that never fall through to the lexically next statement.
inline bool is_block_terminator(const cpg::CpgGraph& g, cpg::NodeId id) {
    switch (g.node(id).kind) {
    case cpg::NodeKind::GotoStatement:
    case cpg::NodeKind::ReturnStatement:
    case cpg::NodeKind::ThrowStatement:
    case cpg::NodeKind::IfStatement:
    case cpg::NodeKind::SwitchStatement:
    case cpg::NodeKind::TryStatement:
    case cpg::NodeKind::CatchClause: return true;
    case cpg::NodeKind::CallExpression:
        return g.node(id).has_property("terminator");
    default: return false;
    }
}

} // namespace detail

// ---- reference resolution ----------------------------------------------

/// Rebuilds all REFERS_TO edges: locals shadow globals, synthetic
/// placeholder references (scope "eh") are left for the catch-block cleanup.
/// Unresolved references are tolerated with a diagnostic.
inline void resolve_references(cpg::CpgGraph& g, DiagnosticList* diags = nullptr) {
    g.refers_to_edges.clear();
    if (g.root == cpg::kInvalidNode) return;

    std::map<std::string, cpg::NodeId> globals;
    for (cpg::NodeId c : g.node(g.root).ast_children) {
        if (!g.alive(c)) continue;
        const auto& n = g.node(c);
        if (n.kind == cpg::NodeKind::VariableDeclaration ||
            n.kind == cpg::NodeKind::FunctionDeclaration)
            globals.emplace(n.name, c);
    }

    auto resolve_subtree = [&](cpg::NodeId subtree,
                               const std::map<std::string, cpg::NodeId>& locals) {
        g.walk(subtree, [&](cpg::NodeId id) {
            const auto& n = g.node(id);
            if (n.kind != cpg::NodeKind::DeclaredReferenceExpression) return;
            if (n.property_or("scope", "") == "eh") return;
            auto lit = locals.find(n.name);
            if (lit != locals.end()) {
                g.add_refers_to(id, lit->second);
                return;
            }
            auto git = globals.find(n.name);
            if (git != globals.end()) {
                g.add_refers_to(id, git->second);
                return;
            }
            if (diags)
                diags->push_back(make_diag(Diagnostic::Severity::Warning, n.line,
                                           "unresolved reference '" + n.name + "'"));
        });
    };

    std::map<std::string, cpg::NodeId> no_locals;
    for (cpg::NodeId c : g.node(g.root).ast_children) {
        if (!g.alive(c)) continue;
        if (g.node(c).kind != cpg::NodeKind::FunctionDeclaration) {
            resolve_subtree(c, no_locals);
            continue;
        }
        std::map<std::string, cpg::NodeId> locals;
        g.walk(c, [&](cpg::NodeId id) {
            const auto& n = g.node(id);
            if (n.kind == cpg::NodeKind::ParameterDeclaration ||
                n.kind == cpg::NodeKind::VariableDeclaration)
                locals[n.name] = id;
        });
        resolve_subtree(c, locals);
    }
}

// ---- φ elimination ------------------------------------------------------

/// Materializes deferred φ records: a hoisted uninitialized declaration per
/// target at the top of the function body, and one assignment per incoming
/// edge placed on that edge — immediately before each jump in the
/// predecessor that targets the φ's block, so the copy runs exactly when
/// control actually transfers there and never on the predecessor's other
/// exits. A jump sitting alone in a branch arm is wrapped in a compound to
/// make room. In strict mode a missing predecessor throws
/// UnknownPredecessor; with a diagnostics sink the incoming edge is skipped
/// instead.
inline void eliminate_phis(cpg::CpgGraph& g,
                           const std::vector<translate::PhiRecord>& records,
                           DiagnosticList* diags = nullptr, bool strict = false) {
    std::map<cpg::NodeId, size_t> hoisted_per_function;
    std::map<cpg::NodeId, detail::BlockLayout> layouts;

    // parallel-copy hazard scan: a later φ in the same block reading an
    // earlier φ's target observes the updated value under sequential
    // application
    for (size_t j = 0; j < records.size(); ++j) {
        for (size_t i = 0; i < j; ++i) {
            if (records[i].owning_function != records[j].owning_function ||
                records[i].owning_block != records[j].owning_block)
                continue;
            for (const auto& in : records[j].incoming) {
                if (in.value.kind == ir::IrOperand::Kind::LocalRef &&
                    in.value.text == records[i].target_name && diags)
                    diags->push_back(make_diag(
                        Diagnostic::Severity::Warning, records[j].line,
                        "parallel-copy hazard in block '" + records[j].owning_block +
                            "': '" + records[j].target_name + "' reads '" +
                            records[i].target_name +
                            "' after it was reassigned; sequential order applies"));
            }
        }
    }

    for (const auto& record : records) {
        cpg::NodeId fn = record.owning_function;
        if (!g.alive(fn)) continue;
        cpg::NodeId body = detail::function_body(g, fn);
        if (body == cpg::kInvalidNode) continue;
        if (!layouts.count(fn)) layouts[fn] = detail::block_layout(g, fn);
        const auto& layout = layouts[fn];

        if (strict)
            for (const auto& in : record.incoming)
                if (!layout.bodies.count(in.pred_label))
                    throw UnknownPredecessor("phi '" + record.target_name +
                                             "': unknown predecessor '" + in.pred_label +
                                             "'");

        // hoisted declaration, kept in φ-occurrence order at the body top
        cpg::NodeId decl = g.new_node(cpg::NodeKind::VariableDeclaration,
                                      record.target_name, record.target_name,
                                      record.target_type);
        g.node(decl).line = record.line;
        g.set_property(decl, "phiTarget", "true");
        g.insert_child(body, hoisted_per_function[fn]++, decl);

        for (const auto& in : record.incoming) {
            auto bit = layout.bodies.find(in.pred_label);
            if (bit == layout.bodies.end()) {
                if (diags)
                    diags->push_back(make_diag(
                        Diagnostic::Severity::Warning, record.line,
                        "phi '" + record.target_name + "': unknown predecessor '" +
                            in.pred_label + "', incoming value dropped"));
                if (g.alive(in.value_expr)) g.remove_subtree(in.value_expr);
                continue;
            }
            cpg::NodeId pred_body = bit->second;

            auto make_assign = [&](cpg::NodeId value) {
                cpg::NodeId lhs = g.new_node(cpg::NodeKind::DeclaredReferenceExpression,
                                             record.target_name, record.target_name,
                                             record.target_type);
                g.set_property(lhs, "scope", "local");
                cpg::NodeId assign = g.new_node(cpg::NodeKind::BinaryOperator, "=",
                                                record.target_name + " = " +
                                                    g.node(value).code);
                g.set_property(assign, "operatorCode", "=");
                g.set_property(assign, "phiCopy", "true");
                g.node(assign).line = record.line;
                g.add_child(assign, lhs);
                g.add_child(assign, value);
                return assign;
            };

            // the copy belongs on the control-flow edge: find every jump in
            // this predecessor that enters the φ's block
            std::vector<cpg::NodeId> jumps;
            g.walk(pred_body, [&](const cpg::CpgNode& n) {
                if (n.kind == cpg::NodeKind::GotoStatement &&
                    detail::goto_target(n) == record.owning_block)
                    jumps.push_back(n.id);
            });

            if (jumps.empty()) {
                // no explicit jump (malformed or implicit flow): park the
                // copy before the block terminator as a tolerant fallback
                cpg::NodeId assign = make_assign(in.value_expr);
                const auto& kids = g.node(pred_body).ast_children;
                size_t pos = kids.size();
                for (size_t i = 0; i < kids.size(); ++i)
                    if (g.alive(kids[i]) && detail::is_block_terminator(g, kids[i])) {
                        pos = i;
                        break;
                    }
                g.insert_child(pred_body, pos, assign);
                continue;
            }

            for (size_t j = 0; j < jumps.size(); ++j) {
                // the pre-built value subtree feeds the first jump; any
                // further jump to the same label gets its own copy
                cpg::NodeId value =
                    j == 0 ? in.value_expr : detail::clone_subtree(g, in.value_expr);
                cpg::NodeId assign = make_assign(value);
                cpg::NodeId jump = jumps[j];
                cpg::NodeId parent = g.node(jump).ast_parent;
                cpg::NodeKind pk = g.node(parent).kind;
                if (pk == cpg::NodeKind::CompoundStatement ||
                    pk == cpg::NodeKind::CaseStatement) {
                    const auto& pkids = g.node(parent).ast_children;
                    size_t pos = pkids.size();
                    for (size_t i = 0; i < pkids.size(); ++i)
                        if (pkids[i] == jump) {
                            pos = i;
                            break;
                        }
                    g.insert_child(parent, pos, assign);
                } else {
                    // the jump fills a single-statement slot (an if arm):
                    // grow a compound around it so the copy precedes it
                    cpg::NodeId wrap = g.new_node(cpg::NodeKind::CompoundStatement);
                    g.replace_child(parent, jump, wrap);
                    g.add_child(wrap, assign);
                    g.add_child(wrap, jump);
                }
            }
        }
    }
}

// ---- execution-order graph ----------------------------------------------

namespace detail {

struct EogBuilder {
    cpg::CpgGraph& g;
    const std::map<std::string, cpg::NodeId>& labels;
    DiagnosticList* diags;
    bool strict;

    void edge(cpg::NodeId from, cpg::NodeId to) { g.add_eog(from, to); }

    /// Links `stmt` into the graph and returns its fall-through exits.
    std::vector<cpg::NodeId> link_stmt(cpg::NodeId stmt) {
        using NK = cpg::NodeKind;
        const auto& n = g.node(stmt);
        switch (n.kind) {
        case NK::GotoStatement: {
            auto it = labels.find(n.property_or("targetLabel", n.name));
            if (it == labels.end()) {
                std::string msg = "goto without matching label '" +
                                  n.property_or("targetLabel", n.name) + "'";
                if (strict) throw GotoWithoutLabel(msg);
                if (diags)
                    diags->push_back(
                        make_diag(Diagnostic::Severity::Warning, n.line, msg));
            } else {
                edge(stmt, it->second);
            }
            return {};
        }
        case NK::ReturnStatement:
        case NK::ThrowStatement: return {};
        case NK::CallExpression:
            if (n.has_property("terminator")) return {};
            return {stmt};
        case NK::CompoundStatement: {
            std::vector<cpg::NodeId> live;
            for (cpg::NodeId c : n.ast_children)
                if (g.alive(c)) live.push_back(c);
            if (live.empty()) return {stmt};
            edge(stmt, live.front());
            return link_sequence(live);
        }
        case NK::IfStatement: {
            // children: condition, then, optional else
            std::vector<cpg::NodeId> kids;
            for (cpg::NodeId c : n.ast_children)
                if (g.alive(c)) kids.push_back(c);
            if (kids.size() < 2) return {stmt};
            std::vector<cpg::NodeId> exits;
            edge(stmt, kids[1]);
            auto then_exits = link_stmt(kids[1]);
            exits.insert(exits.end(), then_exits.begin(), then_exits.end());
            if (kids.size() >= 3) {
                edge(stmt, kids[2]);
                auto else_exits = link_stmt(kids[2]);
                exits.insert(exits.end(), else_exits.begin(), else_exits.end());
            } else {
                exits.push_back(stmt); // no else: condition may fall through
            }
            return exits;
        }
        case NK::SwitchStatement: {
            std::vector<cpg::NodeId> exits;
            cpg::NodeId body = cpg::kInvalidNode;
            for (cpg::NodeId c : n.ast_children)
                if (g.alive(c) && g.node(c).kind == NK::CompoundStatement) body = c;
            if (body == cpg::kInvalidNode) return {stmt};
            bool has_default = false;
            for (cpg::NodeId cs : g.node(body).ast_children) {
                if (!g.alive(cs) || g.node(cs).kind != NK::CaseStatement) continue;
                if (g.node(cs).has_property("default")) has_default = true;
                edge(stmt, cs);
                std::vector<cpg::NodeId> stmts;
                for (cpg::NodeId c : g.node(cs).ast_children)
                    if (g.alive(c) && g.node(c).kind != NK::Literal) stmts.push_back(c);
                if (stmts.empty()) {
                    exits.push_back(cs);
                    continue;
                }
                edge(cs, stmts.front());
                auto case_exits = link_sequence(stmts);
                exits.insert(exits.end(), case_exits.begin(), case_exits.end());
            }
            if (!has_default) exits.push_back(stmt);
            return exits;
        }
        case NK::TryStatement: {
            std::vector<cpg::NodeId> exits;
            cpg::NodeId try_body = cpg::kInvalidNode;
            std::vector<cpg::NodeId> clauses;
            for (cpg::NodeId c : n.ast_children) {
                if (!g.alive(c)) continue;
                if (g.node(c).kind == NK::CompoundStatement &&
                    try_body == cpg::kInvalidNode)
                    try_body = c;
                else if (g.node(c).kind == NK::CatchClause)
                    clauses.push_back(c);
            }
            cpg::NodeId unwind_source = stmt;
            if (try_body != cpg::kInvalidNode) {
                edge(stmt, try_body);
                auto body_exits = link_stmt(try_body);
                exits.insert(exits.end(), body_exits.begin(), body_exits.end());
                // the first statement (the call) is where unwinding can begin
                for (cpg::NodeId c : g.node(try_body).ast_children)
                    if (g.alive(c)) {
                        unwind_source = c;
                        break;
                    }
            }
            for (cpg::NodeId clause : clauses) {
                edge(unwind_source, clause);
                auto clause_exits = link_catch_clause(clause);
                exits.insert(exits.end(), clause_exits.begin(), clause_exits.end());
            }
            return exits;
        }
        case NK::CatchClause: return link_catch_clause(stmt);
        default: return {stmt}; // declarations, assignments, problem nodes
        }
    }

    std::vector<cpg::NodeId> link_catch_clause(cpg::NodeId clause) {
        for (cpg::NodeId c : g.node(clause).ast_children)
            if (g.alive(c) && g.node(c).kind == cpg::NodeKind::CompoundStatement) {
                edge(clause, c);
                return link_stmt(c);
            }
        return {clause};
    }

    /// Chains a statement list; returns the exits of the final statement.
    std::vector<cpg::NodeId> link_sequence(const std::vector<cpg::NodeId>& stmts) {
        std::vector<cpg::NodeId> pending;
        bool first = true;
        for (cpg::NodeId stmt : stmts) {
            if (!first)
                for (cpg::NodeId p : pending) edge(p, stmt);
            pending = link_stmt(stmt);
            first = false;
        }
        return pending;
    }
};

} // namespace detail

/// Rebuilds the statement-level execution-order overlay. Control enters at
/// the function declaration, runs through the hoisted declarations, and
/// follows gotos between blocks; terminators end their path.
inline void build_eog(cpg::CpgGraph& g, DiagnosticList* diags = nullptr,
                      bool strict = false) {
    g.eog_edges.clear();
    detail::for_each_function(g, [&](cpg::NodeId fn) {
        cpg::NodeId body = detail::function_body(g, fn);
        if (body == cpg::kInvalidNode) return;
        auto layout = detail::block_layout(g, fn);
        detail::EogBuilder builder{g, layout.labels, diags, strict};
        std::vector<cpg::NodeId> live;
        for (cpg::NodeId c : g.node(body).ast_children)
            if (g.alive(c)) live.push_back(c);
        if (live.empty()) return;
        builder.edge(fn, live.front());
        builder.link_sequence(live);
    });
}

// ---- data-flow graph ----------------------------------------------------

namespace detail {

/// Follows a write-target chain (member/subscript wrappers) down to the
/// underlying declaration, if the base is a resolved reference.
inline cpg::NodeId write_base_decl(const cpg::CpgGraph& g, cpg::NodeId lhs) {
    cpg::NodeId cur = lhs;
    while (g.alive(cur)) {
        const auto& n = g.node(cur);
        if (n.kind == cpg::NodeKind::DeclaredReferenceExpression) {
            auto target = g.refers_to(cur);
            return target ? *target : cpg::kInvalidNode;
        }
        if (n.kind == cpg::NodeKind::MemberExpression ||
            n.kind == cpg::NodeKind::ArraySubscriptionExpression) {
            // the base is the structural child that is not the index
            if (n.ast_children.empty()) return cpg::kInvalidNode;
            cur = n.ast_children.front();
            continue;
        }
        return cpg::kInvalidNode;
    }
    return cpg::kInvalidNode;
}

inline bool is_assignment(const cpg::CpgGraph& g, cpg::NodeId id) {
    return g.node(id).kind == cpg::NodeKind::BinaryOperator &&
           g.node(id).property_or("operatorCode", "") == "=";
}

} // namespace detail

/// Rebuilds REFERS_TO and the data-flow overlay:
///   initializer -> declaration, assignment RHS -> LHS target (and the LHS
///   chain -> its underlying declaration), declaration -> each read
///   reference, and call arguments -> the call.
inline void build_dfg(cpg::CpgGraph& g, DiagnosticList* diags = nullptr) {
    resolve_references(g, diags);
    g.dfg_edges.clear();
    if (g.root == cpg::kInvalidNode) return;

    g.walk(g.root, [&](cpg::NodeId id) {
        const auto& n = g.node(id);
        switch (n.kind) {
        case cpg::NodeKind::VariableDeclaration:
            if (n.has_property("hasInitializer") && !n.ast_children.empty() &&
                g.alive(n.ast_children.front()))
                g.add_dfg(n.ast_children.front(), id);
            break;
        case cpg::NodeKind::BinaryOperator: {
            if (n.property_or("operatorCode", "") != "=") break;
            if (n.ast_children.size() < 2) break;
            cpg::NodeId lhs = n.ast_children[0];
            cpg::NodeId rhs = n.ast_children[1];
            if (!g.alive(lhs) || !g.alive(rhs)) break;
            g.add_dfg(rhs, lhs);
            cpg::NodeId base = detail::write_base_decl(g, lhs);
            if (base != cpg::kInvalidNode) g.add_dfg(lhs, base);
            break;
        }
        case cpg::NodeKind::DeclaredReferenceExpression: {
            auto target = g.refers_to(id);
            if (!target) break;
            // a plain reference that is itself an assignment's left side is a
            // pure write; everything else reads the declaration
            cpg::NodeId parent = n.ast_parent;
            bool is_write = parent != cpg::kInvalidNode && g.alive(parent) &&
                            detail::is_assignment(g, parent) &&
                            !g.node(parent).ast_children.empty() &&
                            g.node(parent).ast_children.front() == id;
            if (!is_write) g.add_dfg(*target, id);
            break;
        }
        case cpg::NodeKind::CallExpression:
            for (cpg::NodeId c : n.ast_children)
                if (g.alive(c)) g.add_dfg(c, id);
            break;
        default: break;
        }
    });
}

// ---- goto/label inlining ------------------------------------------------

/// Splices blocks that are the target of exactly one goto into that goto's
/// position: single-statement blocks contribute the statement itself, larger
/// blocks their CompoundStatement. Runs to a fixpoint (bounded by the node
/// count); multi-predecessor blocks and self-loops are never touched.
/// Returns the number of removed control-flow scaffold nodes.
inline size_t inline_single_pred_blocks(cpg::CpgGraph& g, DiagnosticList* diags = nullptr) {
    size_t removed = 0;
    size_t cap = g.nodes.size() + 1;
    for (size_t round = 0; round < cap; ++round) {
        build_eog(g, diags);
        bool changed = false;

        std::vector<std::pair<cpg::NodeId, detail::BlockLayout>> functions;
        detail::for_each_function(g, [&](cpg::NodeId fn) {
            functions.emplace_back(fn, detail::block_layout(g, fn));
        });

        for (auto& [fn, layout] : functions) {
            for (auto& [label, label_stmt] : layout.labels) {
                auto bit = layout.bodies.find(label);
                if (bit == layout.bodies.end()) continue;
                cpg::NodeId target_body = bit->second;
                auto preds = g.eog_predecessors(label_stmt);
                if (preds.size() != 1) continue;
                cpg::NodeId gt = preds[0];
                if (!g.alive(gt) || g.node(gt).kind != cpg::NodeKind::GotoStatement)
                    continue;
                // a goto inside the block it targets forms a self-loop
                bool self_loop = false;
                for (cpg::NodeId cur = gt; cur != cpg::kInvalidNode;
                     cur = g.node(cur).ast_parent)
                    if (cur == target_body) {
                        self_loop = true;
                        break;
                    }
                if (self_loop) continue;

                cpg::NodeId parent = g.node(gt).ast_parent;
                if (parent == cpg::kInvalidNode) continue;

                std::vector<cpg::NodeId> stmts;
                for (cpg::NodeId c : g.node(target_body).ast_children)
                    if (g.alive(c)) stmts.push_back(c);

                if (stmts.size() == 1) {
                    cpg::NodeId stmt = stmts[0];
                    g.detach_child(stmt);
                    g.replace_child(parent, gt, stmt);
                    g.remove_subtree(gt);
                    g.remove_subtree(label_stmt);
                    g.remove_subtree(target_body);
                    removed += 3; // goto + label + emptied block
                } else {
                    g.detach_child(target_body);
                    g.replace_child(parent, gt, target_body);
                    g.remove_subtree(gt);
                    g.remove_subtree(label_stmt);
                    removed += 2; // goto + label
                }
                changed = true;
                break; // layout is stale; rescan
            }
            if (changed) break;
        }
        if (!changed) break;
    }
    build_eog(g, diags);
    return removed;
}

// ---- catch-block cleanup ------------------------------------------------

/// Removes the synthetic declarations produced while translating the
/// exception-handling scaffolding (landingpad/catchpad/cleanuppad results)
/// and propagates each clause's caught-exception parameter into the
/// references that used those synthetic values — in particular the final
/// rethrow of a catchswitch dispatch chain. Idempotent; a graph without
/// exception constructs is left untouched.
inline void cleanup_catch_blocks(cpg::CpgGraph& g, DiagnosticList* diags = nullptr) {
    bool touched = false;
    detail::for_each_function(g, [&](cpg::NodeId fn) {
        // synthetic EH declarations by name
        std::map<std::string, cpg::NodeId> synthetic;
        std::vector<cpg::NodeId> catch_params; // document order
        std::map<std::string, cpg::NodeId> label_to_param; // handler label -> param

        g.walk(fn, [&](cpg::NodeId id) {
            const auto& n = g.node(id);
            if (n.kind == cpg::NodeKind::VariableDeclaration &&
                n.has_property("ehSynthetic"))
                synthetic[n.name] = id;
            if (n.kind == cpg::NodeKind::CatchClause) {
                cpg::NodeId param = cpg::kInvalidNode;
                for (cpg::NodeId c : n.ast_children)
                    if (g.alive(c) &&
                        g.node(c).kind == cpg::NodeKind::VariableDeclaration &&
                        g.node(c).has_property("exceptionParam"))
                        param = c;
                if (param == cpg::kInvalidNode) return;
                catch_params.push_back(param);
                g.walk(id, [&](cpg::NodeId inner) {
                    if (g.node(inner).kind == cpg::NodeKind::GotoStatement)
                        label_to_param.emplace(
                            g.node(inner).property_or("targetLabel", ""), param);
                });
            }
        });
        if (synthetic.empty() && catch_params.empty()) return;

        // label of the block lexically containing a node
        cpg::NodeId body = detail::function_body(g, fn);
        auto containing_label = [&](cpg::NodeId id) -> std::string {
            cpg::NodeId cur = id;
            while (cur != cpg::kInvalidNode && g.node(cur).ast_parent != body)
                cur = g.node(cur).ast_parent;
            if (cur == cpg::kInvalidNode) return {};
            const auto& kids = g.node(body).ast_children;
            for (size_t i = 0; i < kids.size(); ++i)
                if (kids[i] == cur)
                    for (size_t j = i; j-- > 0;)
                        if (g.alive(kids[j]) &&
                            g.node(kids[j]).kind == cpg::NodeKind::LabelStatement)
                            return g.node(kids[j]).name;
            return {};
        };

        auto rewire_to = [&](cpg::NodeId ref, cpg::NodeId param) {
            auto& n = g.node(ref);
            n.name = g.node(param).name;
            n.code = n.name;
            n.properties.erase("ehPlaceholder");
            n.properties["scope"] = "local";
            touched = true;
        };

        g.walk(fn, [&](cpg::NodeId id) {
            auto& n = g.node(id);
            if (n.kind != cpg::NodeKind::DeclaredReferenceExpression) return;
            if (n.has_property("ehPlaceholder")) {
                // rethrow token: bind to the enclosing clause's parameter
                for (cpg::NodeId cur = n.ast_parent; cur != cpg::kInvalidNode;
                     cur = g.node(cur).ast_parent) {
                    if (g.node(cur).kind != cpg::NodeKind::CatchClause) continue;
                    for (cpg::NodeId c : g.node(cur).ast_children)
                        if (g.alive(c) && g.node(c).has_property("exceptionParam")) {
                            rewire_to(id, c);
                            return;
                        }
                }
                return;
            }
            auto sit = synthetic.find(n.name);
            if (sit == synthetic.end()) return;
            // reference to a synthetic EH value: prefer the clause whose
            // handler goto targets this block, fall back to a unique clause
            auto lit = label_to_param.find(containing_label(id));
            if (lit != label_to_param.end()) {
                rewire_to(id, lit->second);
            } else if (catch_params.size() == 1) {
                rewire_to(id, catch_params.front());
            } else if (diags) {
                diags->push_back(make_diag(
                    Diagnostic::Severity::Warning, n.line,
                    "cannot attribute exception value '" + n.name + "' to a catch clause"));
            }
        });

        for (auto& [name, decl] : synthetic) {
            if (g.alive(decl)) g.remove_subtree(decl);
            touched = true;
        }
    });
    if (touched) resolve_references(g, diags);
}

// ---- stub removal -------------------------------------------------------

namespace detail {

/// A stub's body is a single block holding exactly one call (optionally
/// declared into a result that the trailing return forwards) whose callee is
/// declared but not defined. Returns the forwarded callee's name, or empty.
inline std::string stub_forwarding_target(const cpg::CpgGraph& g, cpg::NodeId fn,
                                          const std::map<std::string, cpg::NodeId>& fns) {
    if (g.node(fn).property_or("isDefinition", "true") == "false") return {};
    cpg::NodeId body = function_body(g, fn);
    if (body == cpg::kInvalidNode) return {};
    std::vector<cpg::NodeId> kids;
    for (cpg::NodeId c : g.node(body).ast_children)
        if (g.alive(c)) kids.push_back(c);
    // exactly one block: label + block compound
    if (kids.size() != 2 || g.node(kids[0]).kind != cpg::NodeKind::LabelStatement ||
        g.node(kids[1]).kind != cpg::NodeKind::CompoundStatement)
        return {};
    std::vector<cpg::NodeId> stmts;
    for (cpg::NodeId c : g.node(kids[1]).ast_children)
        if (g.alive(c)) stmts.push_back(c);
    if (stmts.empty() || stmts.size() > 2) return {};

    const cpg::CpgNode& first = g.node(stmts[0]);
    cpg::NodeId call = cpg::kInvalidNode;
    std::string result_name;
    if (first.kind == cpg::NodeKind::CallExpression) {
        call = stmts[0];
    } else if (first.kind == cpg::NodeKind::VariableDeclaration &&
               !first.ast_children.empty() &&
               g.node(first.ast_children.front()).kind == cpg::NodeKind::CallExpression) {
        call = first.ast_children.front();
        result_name = first.name;
    } else {
        return {};
    }
    if (g.node(call).has_property("indirect")) return {};

    if (stmts.size() == 2) {
        const cpg::CpgNode& second = g.node(stmts[1]);
        if (second.kind != cpg::NodeKind::ReturnStatement) return {};
        if (!second.ast_children.empty()) {
            cpg::NodeId rv = second.ast_children.front();
            if (g.node(rv).kind != cpg::NodeKind::DeclaredReferenceExpression ||
                g.node(rv).name != result_name)
                return {};
        }
    }

    const std::string& callee = g.node(call).name;
    auto it = fns.find(callee);
    if (it == fns.end()) return {};
    if (g.node(it->second).property_or("isDefinition", "true") != "false") return {};
    if (callee == g.node(fn).name) return {};
    return callee;
}

} // namespace detail

/// Removes trivial forwarding wrappers around declared-but-undefined
/// functions and rewires their call sites to the wrapped callee. Chains of
/// wrappers collapse through the fixpoint iteration. Returns the number of
/// removed function definitions.
inline size_t remove_stubs(cpg::CpgGraph& g, DiagnosticList* diags = nullptr) {
    size_t removed = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::string, cpg::NodeId> fns;
        detail::for_each_function(
            g, [&](cpg::NodeId fn) { fns.emplace(g.node(fn).name, fn); });

        for (auto& [name, fn] : fns) {
            std::string target = detail::stub_forwarding_target(g, fn, fns);
            if (target.empty()) continue;

            g.walk(g.root, [&](cpg::NodeId id) {
                auto& n = g.node(id);
                bool call_site = n.kind == cpg::NodeKind::CallExpression && n.name == name;
                bool fn_ref = n.kind == cpg::NodeKind::DeclaredReferenceExpression &&
                              n.name == name &&
                              n.property_or("scope", "") == "global";
                if (call_site || fn_ref) {
                    n.name = target;
                    if (call_site) n.code = target + "(...)";
                    else n.code = target;
                }
            });
            if (diags)
                diags->push_back(make_diag(Diagnostic::Severity::Note, g.node(fn).line,
                                           "removed stub '" + name +
                                               "', call sites forwarded to '" + target +
                                               "'"));
            g.remove_subtree(fn);
            ++removed;
            changed = true;
            break; // function table is stale
        }
    }
    resolve_references(g, diags);
    return removed;
}

// ---- pipeline -----------------------------------------------------------

struct PipelineOptions {
    bool phi_elimination = true;
    bool eog = true;
    bool dfg = true;
    bool inline_blocks = true;
    bool catch_cleanup = true;
    bool remove_stubs = false;
    bool strict = false;
};

/// Runs the pass pipeline in its fixed order, recording per-phase wall time
/// in the stats block, and finalizes the graph.
inline void run_pipeline(cpg::CpgGraph& g,
                         const std::vector<translate::PhiRecord>& records,
                         const PipelineOptions& options = {},
                         DiagnosticList* diags = nullptr) {
    auto timed = [&](const char* name, auto&& phase) {
        auto start = std::chrono::steady_clock::now();
        phase();
        auto stop = std::chrono::steady_clock::now();
        g.stats.phase_times_ms[name] =
            std::chrono::duration<double, std::milli>(stop - start).count();
    };

    if (options.phi_elimination)
        timed("phi-elimination",
              [&] { eliminate_phis(g, records, diags, options.strict); });
    else
        g.discard_pending(); // pre-built φ values must not leak into exports

    if (options.eog) timed("eog", [&] { build_eog(g, diags, options.strict); });
    if (options.dfg) timed("dfg", [&] { build_dfg(g, diags); });
    if (options.inline_blocks)
        timed("inline-blocks", [&] { inline_single_pred_blocks(g, diags); });
    if (options.catch_cleanup) {
        timed("catch-cleanup", [&] {
            cleanup_catch_blocks(g, diags);
            if (options.dfg) build_dfg(g, diags); // names may have changed
        });
    }
    if (options.remove_stubs) {
        timed("remove-stubs", [&] {
            remove_stubs(g, diags);
            if (options.eog) build_eog(g, diags, false);
            if (options.dfg) build_dfg(g, diags);
        });
    }
    g.finalize();
}

} // namespace cpgir::passes
