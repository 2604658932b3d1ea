#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpgir/cpg/graph.hpp"

namespace cpgir::analysis {

/// Result of constant propagation over the data-flow overlay. A set carries
/// 2..16 possible integer values; beyond that the result degrades to unknown.
struct EvalResult {
    enum class Kind { Unknown, Int, Float, String, IntSet };
    Kind kind = Kind::Unknown;
    long long int_value = 0;
    double float_value = 0.0;
    std::string string_value;
    std::set<long long> int_set;

    static constexpr size_t kMaxSetSize = 16;

    static EvalResult unknown() { return {}; }
    static EvalResult of_int(long long v) {
        EvalResult r;
        r.kind = Kind::Int;
        r.int_value = v;
        return r;
    }
    static EvalResult of_float(double v) {
        EvalResult r;
        r.kind = Kind::Float;
        r.float_value = v;
        return r;
    }
    static EvalResult of_string(std::string v) {
        EvalResult r;
        r.kind = Kind::String;
        r.string_value = std::move(v);
        return r;
    }
    static EvalResult of_set(std::set<long long> values) {
        if (values.empty()) return unknown();
        if (values.size() == 1) return of_int(*values.begin());
        if (values.size() > kMaxSetSize) return unknown();
        EvalResult r;
        r.kind = Kind::IntSet;
        r.int_set = std::move(values);
        return r;
    }

    bool is_known() const { return kind != Kind::Unknown; }

    /// All integer values this result can take (singleton for Int).
    std::set<long long> as_int_set() const {
        if (kind == Kind::Int) return {int_value};
        if (kind == Kind::IntSet) return int_set;
        return {};
    }
};

/// Analysis verdict attached to a graph node.
struct Finding {
    std::string rule;
    cpg::NodeId node = cpg::kInvalidNode;
    std::string severity; ///< ERROR or WARN
    std::string message;
};

/// All calls to a function of the given name, in node-id order.
inline std::vector<cpg::NodeId> find_calls(const cpg::CpgGraph& g, const std::string& name) {
    std::vector<cpg::NodeId> out;
    if (g.root == cpg::kInvalidNode) return out;
    g.walk(g.root, [&](cpg::NodeId id) {
        if (g.node(id).kind == cpg::NodeKind::CallExpression && g.node(id).name == name)
            out.push_back(id);
    });
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

class Evaluator {
public:
    explicit Evaluator(const cpg::CpgGraph& graph) : g(graph) {}

    EvalResult eval(cpg::NodeId id) {
        if (!g.alive(id)) return EvalResult::unknown();
        auto it = cache.find(id);
        if (it != cache.end()) return it->second;
        if (!in_progress.insert(id).second) return EvalResult::unknown(); // cycle
        EvalResult r = compute(id);
        in_progress.erase(id);
        cache.emplace(id, r);
        return r;
    }

private:
    const cpg::CpgGraph& g;
    std::map<cpg::NodeId, EvalResult> cache;
    std::set<cpg::NodeId> in_progress;

    EvalResult compute(cpg::NodeId id) {
        using NK = cpg::NodeKind;
        const cpg::CpgNode& n = g.node(id);
        switch (n.kind) {
        case NK::Literal: return literal(n);
        case NK::DeclaredReferenceExpression:
        case NK::VariableDeclaration:
        case NK::ParameterDeclaration: return union_of_dfg_predecessors(id);
        case NK::BinaryOperator: return binary(n);
        case NK::UnaryOperator: return unary(n);
        case NK::CastExpression: return cast(n);
        case NK::ConditionalExpression: return conditional(n);
        default: return EvalResult::unknown();
        }
    }

    EvalResult literal(const cpg::CpgNode& n) {
        if (n.has_property("stringValue"))
            return EvalResult::of_string(n.property_or("stringValue", ""));
        if (n.has_property("floatValue")) {
            try {
                return EvalResult::of_float(std::stod(n.property_or("floatValue", "")));
            } catch (...) {
                return EvalResult::unknown();
            }
        }
        std::string v = n.property_or("value", "");
        if (v == "null") return EvalResult::of_int(0);
        if (v.empty()) return EvalResult::unknown();
        try {
            size_t used = 0;
            long long parsed = std::stoll(v, &used);
            if (used == v.size()) return EvalResult::of_int(parsed);
        } catch (...) {
        }
        return EvalResult::unknown();
    }

    /// Declarations and references collect what flows into them; several
    /// distinct integers become a value set (path-insensitive union).
    EvalResult union_of_dfg_predecessors(cpg::NodeId id) {
        auto preds = g.dfg_predecessors(id);
        if (preds.empty()) return EvalResult::unknown();
        std::vector<EvalResult> parts;
        for (cpg::NodeId p : preds) parts.push_back(eval(p));
        return merge(parts);
    }

    static EvalResult merge(const std::vector<EvalResult>& parts) {
        if (parts.empty()) return EvalResult::unknown();
        if (parts.size() == 1) return parts.front();
        bool all_ints = true;
        for (const auto& p : parts) {
            if (!p.is_known()) return EvalResult::unknown();
            if (p.kind != EvalResult::Kind::Int && p.kind != EvalResult::Kind::IntSet)
                all_ints = false;
        }
        if (!all_ints) {
            // identical non-int results collapse, anything else is unknown
            for (size_t i = 1; i < parts.size(); ++i) {
                if (parts[i].kind != parts[0].kind) return EvalResult::unknown();
                if (parts[i].kind == EvalResult::Kind::String &&
                    parts[i].string_value != parts[0].string_value)
                    return EvalResult::unknown();
                if (parts[i].kind == EvalResult::Kind::Float &&
                    parts[i].float_value != parts[0].float_value)
                    return EvalResult::unknown();
            }
            return parts[0];
        }
        std::set<long long> values;
        for (const auto& p : parts) {
            auto s = p.as_int_set();
            values.insert(s.begin(), s.end());
            if (values.size() > EvalResult::kMaxSetSize) return EvalResult::unknown();
        }
        return EvalResult::of_set(std::move(values));
    }

    /// Applies an integer fold across every combination of the operand sets,
    /// capped at the set-size limit.
    template <typename F>
    EvalResult fold_sets(const EvalResult& a, const EvalResult& b, F&& f) {
        std::set<long long> out;
        for (long long x : a.as_int_set())
            for (long long y : b.as_int_set()) {
                auto v = f(x, y);
                if (!v) return EvalResult::unknown();
                out.insert(*v);
                if (out.size() > EvalResult::kMaxSetSize) return EvalResult::unknown();
            }
        return EvalResult::of_set(std::move(out));
    }

    EvalResult binary(const cpg::CpgNode& n) {
        std::string op = n.property_or("operatorCode", "");
        std::vector<cpg::NodeId> kids;
        for (cpg::NodeId c : n.ast_children)
            if (g.alive(c)) kids.push_back(c);
        if (op == "=") return kids.size() >= 2 ? eval(kids[1]) : EvalResult::unknown();
        if (kids.size() < 2) return EvalResult::unknown();
        EvalResult a = eval(kids[0]);
        EvalResult b = eval(kids[1]);
        if (!a.is_known() || !b.is_known()) return EvalResult::unknown();

        bool ints = (a.kind == EvalResult::Kind::Int || a.kind == EvalResult::Kind::IntSet) &&
                    (b.kind == EvalResult::Kind::Int || b.kind == EvalResult::Kind::IntSet);
        if (ints) return fold_int_binary(op, a, b);
        if (a.kind == EvalResult::Kind::Float || b.kind == EvalResult::Kind::Float)
            return fold_float_binary(op, a, b);
        return EvalResult::unknown();
    }

    EvalResult fold_int_binary(const std::string& op, const EvalResult& a,
                               const EvalResult& b) {
        using Opt = std::optional<long long>;
        auto f = [&](long long x, long long y) -> Opt {
            if (op == "+") return x + y;
            if (op == "-") return x - y;
            if (op == "*") return x * y;
            if (op == "/") return y == 0 ? Opt{} : Opt{x / y};
            if (op == "%") return y == 0 ? Opt{} : Opt{x % y};
            if (op == "<<") return (y < 0 || y > 63) ? Opt{} : Opt{x << y};
            if (op == ">>") return (y < 0 || y > 63) ? Opt{} : Opt{x >> y};
            if (op == "&") return x & y;
            if (op == "|") return x | y;
            if (op == "^") return x ^ y;
            if (op == "==") return x == y ? 1 : 0;
            if (op == "!=") return x != y ? 1 : 0;
            if (op == "<") return x < y ? 1 : 0;
            if (op == "<=") return x <= y ? 1 : 0;
            if (op == ">") return x > y ? 1 : 0;
            if (op == ">=") return x >= y ? 1 : 0;
            if (op == "&&") return (x != 0 && y != 0) ? 1 : 0;
            if (op == "||") return (x != 0 || y != 0) ? 1 : 0;
            return Opt{};
        };
        return fold_sets(a, b, f);
    }

    EvalResult fold_float_binary(const std::string& op, const EvalResult& a,
                                 const EvalResult& b) {
        if (a.kind != EvalResult::Kind::Float && a.kind != EvalResult::Kind::Int)
            return EvalResult::unknown();
        if (b.kind != EvalResult::Kind::Float && b.kind != EvalResult::Kind::Int)
            return EvalResult::unknown();
        double x = a.kind == EvalResult::Kind::Float ? a.float_value
                                                     : static_cast<double>(a.int_value);
        double y = b.kind == EvalResult::Kind::Float ? b.float_value
                                                     : static_cast<double>(b.int_value);
        if (op == "+") return EvalResult::of_float(x + y);
        if (op == "-") return EvalResult::of_float(x - y);
        if (op == "*") return EvalResult::of_float(x * y);
        if (op == "/") return EvalResult::of_float(x / y);
        if (op == "==") return EvalResult::of_int(x == y ? 1 : 0);
        if (op == "!=") return EvalResult::of_int(x != y ? 1 : 0);
        if (op == "<") return EvalResult::of_int(x < y ? 1 : 0);
        if (op == "<=") return EvalResult::of_int(x <= y ? 1 : 0);
        if (op == ">") return EvalResult::of_int(x > y ? 1 : 0);
        if (op == ">=") return EvalResult::of_int(x >= y ? 1 : 0);
        return EvalResult::unknown();
    }

    EvalResult unary(const cpg::CpgNode& n) {
        std::string op = n.property_or("operatorCode", "");
        cpg::NodeId child = cpg::kInvalidNode;
        for (cpg::NodeId c : n.ast_children)
            if (g.alive(c)) {
                child = c;
                break;
            }
        if (child == cpg::kInvalidNode) return EvalResult::unknown();
        if (op == "&") return address_of(child);
        EvalResult v = eval(child);
        if (!v.is_known()) return EvalResult::unknown();
        if (v.kind == EvalResult::Kind::Float) {
            if (op == "-") return EvalResult::of_float(-v.float_value);
            return EvalResult::unknown();
        }
        auto fold_one = [&](long long x) -> std::optional<long long> {
            if (op == "-") return -x;
            if (op == "!") return x == 0 ? 1 : 0;
            if (op == "~") return ~x;
            return std::nullopt;
        };
        std::set<long long> out;
        for (long long x : v.as_int_set()) {
            auto folded = fold_one(x);
            if (!folded) return EvalResult::unknown();
            out.insert(*folded);
        }
        return EvalResult::of_set(std::move(out));
    }

    /// `&expr` is opaque as a number, but when the chain (through zero-index
    /// subscripts) reaches a declaration initialized with a string constant,
    /// the pointed-to string is the useful value.
    EvalResult address_of(cpg::NodeId child) {
        cpg::NodeId cur = child;
        while (g.alive(cur)) {
            const cpg::CpgNode& n = g.node(cur);
            if (n.kind == cpg::NodeKind::ArraySubscriptionExpression &&
                n.ast_children.size() >= 2) {
                EvalResult idx = eval(n.ast_children[1]);
                if (idx.kind == EvalResult::Kind::Int && idx.int_value == 0) {
                    cur = n.ast_children[0];
                    continue;
                }
                return EvalResult::unknown();
            }
            if (n.kind == cpg::NodeKind::DeclaredReferenceExpression ||
                n.kind == cpg::NodeKind::VariableDeclaration) {
                EvalResult v = eval(cur);
                if (v.kind == EvalResult::Kind::String) return v;
                return EvalResult::unknown();
            }
            return EvalResult::unknown();
        }
        return EvalResult::unknown();
    }

    EvalResult cast(const cpg::CpgNode& n) {
        cpg::NodeId child = cpg::kInvalidNode;
        for (cpg::NodeId c : n.ast_children)
            if (g.alive(c)) {
                child = c;
                break;
            }
        if (child == cpg::kInvalidNode) return EvalResult::unknown();
        EvalResult v = eval(child);
        if (v.kind != EvalResult::Kind::Int && v.kind != EvalResult::Kind::IntSet) return v;

        // reinterpret through iN (signed) / uN (unsigned) spellings
        const std::string& ty = n.type;
        if (ty.size() < 2 || (ty[0] != 'i' && ty[0] != 'u')) return v;
        int width = 0;
        for (size_t i = 1; i < ty.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(ty[i]))) return v;
            width = width * 10 + (ty[i] - '0');
        }
        if (width <= 0 || width > 64) return v;
        bool is_unsigned = ty[0] == 'u';
        std::set<long long> out;
        for (long long x : v.as_int_set()) out.insert(reinterpret_width(x, width, is_unsigned));
        return EvalResult::of_set(std::move(out));
    }

    static long long reinterpret_width(long long x, int width, bool is_unsigned) {
        if (width >= 64) return x;
        unsigned long long mask = (1ULL << width) - 1;
        unsigned long long bits = static_cast<unsigned long long>(x) & mask;
        if (is_unsigned) return static_cast<long long>(bits);
        unsigned long long sign = 1ULL << (width - 1);
        if (bits & sign) return static_cast<long long>(bits | ~mask);
        return static_cast<long long>(bits);
    }

    EvalResult conditional(const cpg::CpgNode& n) {
        std::vector<cpg::NodeId> kids;
        for (cpg::NodeId c : n.ast_children)
            if (g.alive(c)) kids.push_back(c);
        if (kids.size() < 3) return EvalResult::unknown();
        EvalResult cond = eval(kids[0]);
        if (cond.kind == EvalResult::Kind::Int)
            return eval(cond.int_value != 0 ? kids[1] : kids[2]);
        return merge({eval(kids[1]), eval(kids[2])});
    }
};

} // namespace detail

/// Constant propagation along the data-flow overlay, backwards from `node`.
/// Memoized per call; cycles and over-wide value sets degrade to unknown.
inline EvalResult evaluate(const cpg::CpgGraph& g, cpg::NodeId node) {
    return detail::Evaluator(g).eval(node);
}

/// Flags SSL_CTX_set_cipher_list calls whose cipher-string argument contains
/// "MD5" (case-insensitive). An argument that cannot be resolved to a string
/// yields a WARN finding so the call site still surfaces for review.
inline std::vector<Finding> detect_cipher_misuse(const cpg::CpgGraph& g) {
    std::vector<Finding> findings;
    detail::Evaluator eval(g);
    for (cpg::NodeId call : find_calls(g, "SSL_CTX_set_cipher_list")) {
        const cpg::CpgNode& n = g.node(call);
        std::vector<cpg::NodeId> args;
        for (cpg::NodeId c : n.ast_children)
            if (g.alive(c)) args.push_back(c);
        if (args.size() < 2) {
            findings.push_back({"weak-cipher", call, "WARN",
                                "unresolved-argument: call has no cipher-list argument"});
            continue;
        }
        EvalResult v = eval.eval(args[1]);
        if (v.kind != EvalResult::Kind::String) {
            findings.push_back({"weak-cipher", call, "WARN",
                                "unresolved-argument: cipher list is not a known string"});
            continue;
        }
        std::string lowered = to_lower(v.string_value);
        if (lowered.find("md5") != std::string::npos)
            findings.push_back({"weak-cipher", call, "ERROR",
                                "weak cipher suite enabled: \"" + v.string_value +
                                    "\" permits MD5"});
    }
    return findings;
}

/// Named rule dispatch for the query front-end. Unknown rules return
/// std::nullopt so the caller can reject the rule id.
inline std::optional<std::vector<Finding>> run_rule(const cpg::CpgGraph& g,
                                                    const std::string& rule_id) {
    if (rule_id == "weak-cipher") return detect_cipher_misuse(g);
    return std::nullopt;
}

} // namespace cpgir::analysis
