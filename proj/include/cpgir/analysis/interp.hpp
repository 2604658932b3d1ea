#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpgir/cpg/graph.hpp"
#include "cpgir/translate/translator.hpp"

namespace cpgir::analysis {

/// Big-step reference interpreter over a translated function. It executes
/// statements in syntax order, follows gotos between labeled blocks, and —
/// when given the original φ records — applies them lazily on block entry in
/// record order, which is exactly the semantics the elimination pass bakes
/// into the predecessors. Interpreting the same function before elimination
/// (with records) and after (without) must therefore agree.
///
/// The value domain is integers plus doubles; anything outside the modeled
/// subset (memory indirection, unknown calls) traps rather than guessing.
struct InterpResult {
    bool trapped = false;
    std::string trap_reason;
    bool has_value = false;
    long long value = 0;

    static InterpResult trap(std::string reason) {
        InterpResult r;
        r.trapped = true;
        r.trap_reason = std::move(reason);
        return r;
    }
    static InterpResult of(long long v) {
        InterpResult r;
        r.has_value = true;
        r.value = v;
        return r;
    }
    static InterpResult void_return() { return {}; }

    bool operator==(const InterpResult& o) const {
        if (trapped != o.trapped) return false;
        if (trapped) return true; // reasons may differ in wording
        return has_value == o.has_value && (!has_value || value == o.value);
    }
};

namespace detail {

struct Value {
    bool is_float = false;
    long long i = 0;
    double f = 0.0;

    static Value of_int(long long v) { return {false, v, 0.0}; }
    static Value of_float(double v) { return {true, 0, v}; }
    long long as_int() const { return is_float ? static_cast<long long>(f) : i; }
    double as_float() const { return is_float ? f : static_cast<double>(i); }
    bool truthy() const { return is_float ? f != 0.0 : i != 0; }
};

struct Trap {
    std::string reason;
};

class Interpreter {
public:
    Interpreter(const cpg::CpgGraph& graph, const std::vector<translate::PhiRecord>& phis,
                size_t step_limit)
        : g(graph), records(phis), steps_left(step_limit) {}

    InterpResult run(cpg::NodeId fn, const std::vector<long long>& args) {
        try {
            bind_parameters(fn, args);
            function = fn;
            return exec_body(fn);
        } catch (const Trap& t) {
            return InterpResult::trap(t.reason);
        }
    }

private:
    const cpg::CpgGraph& g;
    const std::vector<translate::PhiRecord>& records;
    size_t steps_left;
    cpg::NodeId function = cpg::kInvalidNode;
    std::map<std::string, Value> env;
    std::string current_block;

    [[noreturn]] void trap(const std::string& reason) { throw Trap{reason}; }

    void tick() {
        if (steps_left == 0) trap("step limit exceeded");
        --steps_left;
    }

    void bind_parameters(cpg::NodeId fn, const std::vector<long long>& args) {
        size_t index = 0;
        for (cpg::NodeId c : g.node(fn).ast_children) {
            if (!g.alive(c) || g.node(c).kind != cpg::NodeKind::ParameterDeclaration)
                continue;
            if (index < args.size()) env[g.node(c).name] = Value::of_int(args[index]);
            ++index;
        }
        if (index != args.size()) trap("argument count mismatch");
    }

    struct Flow {
        enum class Kind { Next, Jump, Return } kind = Kind::Next;
        std::string label;
        std::optional<Value> value;
    };

    InterpResult exec_body(cpg::NodeId fn) {
        cpg::NodeId body = cpg::kInvalidNode;
        for (cpg::NodeId c : g.node(fn).ast_children)
            if (g.alive(c) && g.node(c).kind == cpg::NodeKind::CompoundStatement) body = c;
        if (body == cpg::kInvalidNode) trap("function has no body");

        std::vector<cpg::NodeId> items;
        std::map<std::string, size_t> label_index;
        for (cpg::NodeId c : g.node(body).ast_children) {
            if (!g.alive(c)) continue;
            if (g.node(c).kind == cpg::NodeKind::LabelStatement)
                label_index[g.node(c).name] = items.size();
            items.push_back(c);
        }

        size_t pc = 0;
        while (pc < items.size()) {
            cpg::NodeId item = items[pc];
            if (g.node(item).kind == cpg::NodeKind::LabelStatement) {
                current_block = g.node(item).name;
                ++pc;
                continue;
            }
            Flow flow = exec_stmt(item);
            switch (flow.kind) {
            case Flow::Kind::Next: ++pc; break;
            case Flow::Kind::Return:
                return flow.value ? InterpResult::of(flow.value->as_int())
                                  : InterpResult::void_return();
            case Flow::Kind::Jump: {
                auto it = label_index.find(flow.label);
                if (it == label_index.end()) trap("jump to unknown label " + flow.label);
                apply_phis(flow.label, current_block);
                current_block = flow.label;
                pc = it->second + 1;
                break;
            }
            }
        }
        return InterpResult::void_return(); // fell off the end: implicit void
    }

    /// Lazy φ application on block entry: records owned by the entered block
    /// fire sequentially, each reading the environment the previous one left.
    void apply_phis(const std::string& entered, const std::string& from) {
        for (const auto& record : records) {
            if (record.owning_function != function || record.owning_block != entered)
                continue;
            bool applied = false;
            for (const auto& in : record.incoming) {
                if (in.pred_label != from) continue;
                env[record.target_name] = eval_operand(in.value);
                applied = true;
                break;
            }
            if (!applied)
                trap("phi '" + record.target_name + "' has no incoming value for '" +
                     from + "'");
        }
    }

    Value eval_operand(const ir::IrOperand& op) {
        using K = ir::IrOperand::Kind;
        switch (op.kind) {
        case K::LocalRef: {
            auto it = env.find(op.text);
            if (it == env.end()) trap("read of unbound value '" + op.text + "'");
            return it->second;
        }
        case K::LiteralInt: return Value::of_int(op.int_value);
        case K::LiteralFloat: return Value::of_float(op.float_value);
        case K::LiteralNull: return Value::of_int(0);
        default: trap("unsupported operand in phi value");
        }
    }

    Flow exec_stmt(cpg::NodeId id) {
        tick();
        using NK = cpg::NodeKind;
        const cpg::CpgNode& n = g.node(id);
        switch (n.kind) {
        case NK::VariableDeclaration: {
            if (n.has_property("hasInitializer")) {
                cpg::NodeId init = first_live_child(id);
                if (init != cpg::kInvalidNode) env[n.name] = eval_expr(init);
            }
            return {};
        }
        case NK::BinaryOperator: {
            if (n.property_or("operatorCode", "") != "=")
                trap("expression statement of kind binary-operator");
            std::vector<cpg::NodeId> kids = live_children(id);
            if (kids.size() < 2) trap("malformed assignment");
            Value v = eval_expr(kids[1]);
            assign(kids[0], v);
            return {};
        }
        case NK::GotoStatement: {
            Flow f;
            f.kind = Flow::Kind::Jump;
            f.label = n.property_or("targetLabel", n.name);
            return f;
        }
        case NK::ReturnStatement: {
            Flow f;
            f.kind = Flow::Kind::Return;
            cpg::NodeId rv = first_live_child(id);
            if (rv != cpg::kInvalidNode) f.value = eval_expr(rv);
            return f;
        }
        case NK::IfStatement: {
            std::vector<cpg::NodeId> kids = live_children(id);
            if (kids.size() < 2) trap("malformed if");
            Value cond = eval_expr(kids[0]);
            if (cond.truthy()) return exec_stmt(kids[1]);
            if (kids.size() >= 3) return exec_stmt(kids[2]);
            return {};
        }
        case NK::SwitchStatement: {
            std::vector<cpg::NodeId> kids = live_children(id);
            if (kids.size() < 2) trap("malformed switch");
            Value selector = eval_expr(kids[0]);
            cpg::NodeId body = kids[1];
            cpg::NodeId default_case = cpg::kInvalidNode;
            for (cpg::NodeId cs : live_children(body)) {
                if (g.node(cs).kind != NK::CaseStatement) continue;
                if (g.node(cs).has_property("default")) {
                    default_case = cs;
                    continue;
                }
                std::vector<cpg::NodeId> case_kids = live_children(cs);
                if (case_kids.empty()) continue;
                Value label_value = eval_expr(case_kids[0]);
                if (label_value.as_int() == selector.as_int())
                    return exec_case(cs, /*skip_value=*/true);
            }
            if (default_case != cpg::kInvalidNode)
                return exec_case(default_case, /*skip_value=*/false);
            return {};
        }
        case NK::CompoundStatement: {
            for (cpg::NodeId c : live_children(id)) {
                Flow f = exec_stmt(c);
                if (f.kind != Flow::Kind::Next) return f;
            }
            return {};
        }
        case NK::CallExpression: {
            eval_expr(id); // a known builtin evaluates; anything else traps
            return {};
        }
        case NK::ProblemNode: trap("reached a problem node");
        case NK::ThrowStatement: trap("uncaught exception");
        case NK::TryStatement:
        case NK::CatchClause: trap("exception handling is outside the modeled subset");
        case NK::LabelStatement: {
            // labels nested below the top level are pass-through markers
            return {};
        }
        default: trap("unsupported statement kind");
        }
    }

    Flow exec_case(cpg::NodeId cs, bool skip_value) {
        std::vector<cpg::NodeId> kids = live_children(cs);
        size_t start = skip_value && !kids.empty() ? 1 : 0;
        for (size_t i = start; i < kids.size(); ++i) {
            Flow f = exec_stmt(kids[i]);
            if (f.kind != Flow::Kind::Next) return f;
        }
        return {};
    }

    void assign(cpg::NodeId lhs, const Value& v) {
        const cpg::CpgNode& n = g.node(lhs);
        if (n.kind == cpg::NodeKind::DeclaredReferenceExpression) {
            env[n.name] = v;
            return;
        }
        trap("assignment through unmodeled lvalue");
    }

    std::vector<cpg::NodeId> live_children(cpg::NodeId id) {
        std::vector<cpg::NodeId> out;
        for (cpg::NodeId c : g.node(id).ast_children)
            if (g.alive(c)) out.push_back(c);
        return out;
    }

    cpg::NodeId first_live_child(cpg::NodeId id) {
        for (cpg::NodeId c : g.node(id).ast_children)
            if (g.alive(c)) return c;
        return cpg::kInvalidNode;
    }

public:
    Value eval_expr(cpg::NodeId id) {
        using NK = cpg::NodeKind;
        const cpg::CpgNode& n = g.node(id);
        switch (n.kind) {
        case NK::Literal: {
            if (n.has_property("floatValue")) {
                try {
                    return Value::of_float(std::stod(n.property_or("floatValue", "0")));
                } catch (...) {
                    trap("unreadable float literal");
                }
            }
            std::string v = n.property_or("value", "");
            if (v == "null") return Value::of_int(0);
            try {
                return Value::of_int(std::stoll(v));
            } catch (...) {
                trap("unreadable literal '" + v + "'");
            }
        }
        case NK::DeclaredReferenceExpression: {
            auto it = env.find(n.name);
            if (it == env.end()) trap("read of unbound value '" + n.name + "'");
            return it->second;
        }
        case NK::BinaryOperator: return eval_binary(id);
        case NK::UnaryOperator: return eval_unary(id);
        case NK::CastExpression: return eval_cast(id);
        case NK::ConditionalExpression: {
            std::vector<cpg::NodeId> kids = live_children(id);
            if (kids.size() < 3) trap("malformed conditional");
            return eval_expr(kids[0]).truthy() ? eval_expr(kids[1]) : eval_expr(kids[2]);
        }
        case NK::CallExpression: {
            if (n.name == "isunordered") {
                std::vector<cpg::NodeId> kids = live_children(id);
                if (kids.size() < 2) trap("isunordered needs two arguments");
                double a = eval_expr(kids[0]).as_float();
                double b = eval_expr(kids[1]).as_float();
                return Value::of_int(std::isnan(a) || std::isnan(b) ? 1 : 0);
            }
            trap("call to unmodeled function '" + n.name + "'");
        }
        default: trap("unsupported expression kind");
        }
    }

private:
    Value eval_binary(cpg::NodeId id) {
        const cpg::CpgNode& n = g.node(id);
        std::string op = n.property_or("operatorCode", "");
        std::vector<cpg::NodeId> kids = live_children(id);
        if (kids.size() < 2) trap("malformed binary operator");
        Value a = eval_expr(kids[0]);
        Value b = eval_expr(kids[1]);

        if (a.is_float || b.is_float) {
            double x = a.as_float(), y = b.as_float();
            if (op == "+") return Value::of_float(x + y);
            if (op == "-") return Value::of_float(x - y);
            if (op == "*") return Value::of_float(x * y);
            if (op == "/") return Value::of_float(x / y);
            if (op == "==") return Value::of_int(x == y ? 1 : 0);
            if (op == "!=") return Value::of_int(x != y ? 1 : 0);
            if (op == "<") return Value::of_int(x < y ? 1 : 0);
            if (op == "<=") return Value::of_int(x <= y ? 1 : 0);
            if (op == ">") return Value::of_int(x > y ? 1 : 0);
            if (op == ">=") return Value::of_int(x >= y ? 1 : 0);
            if (op == "&&") return Value::of_int(a.truthy() && b.truthy() ? 1 : 0);
            if (op == "||") return Value::of_int(a.truthy() || b.truthy() ? 1 : 0);
            trap("unsupported float operator '" + op + "'");
        }
        long long x = a.i, y = b.i;
        if (op == "+") return Value::of_int(x + y);
        if (op == "-") return Value::of_int(x - y);
        if (op == "*") return Value::of_int(x * y);
        if (op == "/") {
            if (y == 0) trap("division by zero");
            return Value::of_int(x / y);
        }
        if (op == "%") {
            if (y == 0) trap("remainder by zero");
            return Value::of_int(x % y);
        }
        if (op == "<<") return Value::of_int(y >= 0 && y < 64 ? (x << y) : 0);
        if (op == ">>") return Value::of_int(y >= 0 && y < 64 ? (x >> y) : 0);
        if (op == "&") return Value::of_int(x & y);
        if (op == "|") return Value::of_int(x | y);
        if (op == "^") return Value::of_int(x ^ y);
        if (op == "==") return Value::of_int(x == y ? 1 : 0);
        if (op == "!=") return Value::of_int(x != y ? 1 : 0);
        if (op == "<") return Value::of_int(x < y ? 1 : 0);
        if (op == "<=") return Value::of_int(x <= y ? 1 : 0);
        if (op == ">") return Value::of_int(x > y ? 1 : 0);
        if (op == ">=") return Value::of_int(x >= y ? 1 : 0);
        if (op == "&&") return Value::of_int(x != 0 && y != 0 ? 1 : 0);
        if (op == "||") return Value::of_int(x != 0 || y != 0 ? 1 : 0);
        trap("unsupported operator '" + op + "'");
    }

    Value eval_unary(cpg::NodeId id) {
        const cpg::CpgNode& n = g.node(id);
        std::string op = n.property_or("operatorCode", "");
        cpg::NodeId child = first_live_child(id);
        if (child == cpg::kInvalidNode) trap("malformed unary operator");
        Value v = eval_expr(child);
        if (op == "-") return v.is_float ? Value::of_float(-v.f) : Value::of_int(-v.i);
        if (op == "!") return Value::of_int(v.truthy() ? 0 : 1);
        if (op == "~") return Value::of_int(~v.as_int());
        trap("unsupported unary operator '" + op + "' (memory is not modeled)");
    }

    Value eval_cast(cpg::NodeId id) {
        const cpg::CpgNode& n = g.node(id);
        cpg::NodeId child = first_live_child(id);
        if (child == cpg::kInvalidNode) trap("malformed cast");
        Value v = eval_expr(child);
        const std::string& ty = n.type;
        if (ty.size() >= 2 && (ty[0] == 'i' || ty[0] == 'u')) {
            int width = 0;
            bool numeric = true;
            for (size_t i = 1; i < ty.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(ty[i]))) {
                    numeric = false;
                    break;
                }
                width = width * 10 + (ty[i] - '0');
            }
            if (numeric && width > 0 && width <= 64) {
                long long x = v.as_int();
                if (width < 64) {
                    unsigned long long mask = (1ULL << width) - 1;
                    unsigned long long bits = static_cast<unsigned long long>(x) & mask;
                    if (ty[0] == 'u') return Value::of_int(static_cast<long long>(bits));
                    unsigned long long sign = 1ULL << (width - 1);
                    if (bits & sign) return Value::of_int(static_cast<long long>(bits | ~mask));
                    return Value::of_int(static_cast<long long>(bits));
                }
                return Value::of_int(x);
            }
        }
        if (ty == "double" || ty == "float") return Value::of_float(v.as_float());
        return v; // bitcast-style: pass through
    }
};

} // namespace detail

/// Runs `name` with integer arguments. `records` must be the φ records that
/// accompany a freshly translated graph, or empty when the graph has already
/// been through φ elimination (the copies are then ordinary statements).
inline InterpResult interpret_function(const cpg::CpgGraph& g,
                                       const std::vector<translate::PhiRecord>& records,
                                       const std::string& name,
                                       const std::vector<long long>& args,
                                       size_t step_limit = 1u << 20) {
    cpg::NodeId fn = cpg::kInvalidNode;
    if (g.root != cpg::kInvalidNode)
        for (cpg::NodeId c : g.node(g.root).ast_children)
            if (g.alive(c) && g.node(c).kind == cpg::NodeKind::FunctionDeclaration &&
                g.node(c).name == name)
                fn = c;
    if (fn == cpg::kInvalidNode) return InterpResult::trap("no function named " + name);
    detail::Interpreter interp(g, records, step_limit);
    return interp.run(fn, args);
}

} // namespace cpgir::analysis
