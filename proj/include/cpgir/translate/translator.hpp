#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpgir/cpg/graph.hpp"
#include "cpgir/ir/ast.hpp"
#include "cpgir/ir/parser.hpp"
#include "cpgir/support.hpp"

namespace cpgir::translate {

/// Deferred φ instruction. Translation emits no node at the φ's position;
/// the elimination pass later materializes the hoisted declaration and the
/// per-predecessor assignments from these records.
struct PhiRecord {
    std::string target_name;
    std::string target_type;
    cpg::NodeId owning_function = cpg::kInvalidNode;
    std::string owning_block; ///< label of the block that held the φ
    int line = 0;
    struct Incoming {
        ir::IrOperand value;           ///< original operand (interpreter oracle)
        std::string pred_label;
        cpg::NodeId value_expr = cpg::kInvalidNode; ///< pre-built detached expression
    };
    std::vector<Incoming> incoming;
};

struct TranslationResult {
    cpg::CpgGraph graph;
    std::vector<PhiRecord> phi_records;
    DiagnosticList diagnostics;
};

/// Per-function translation state.
struct MappingContext {
    cpg::NodeId function = cpg::kInvalidNode;
    cpg::NodeId body = cpg::kInvalidNode;
    std::map<std::string, cpg::NodeId> block_bodies; ///< label -> CompoundStatement
    std::map<std::string, cpg::NodeId> block_labels; ///< label -> LabelStatement
    std::map<std::string, cpg::NodeId> local_decls;  ///< value name -> declaration
    std::set<std::string> memory_slots;              ///< alloca results: refs mean &slot
    std::string current_block;
    const ir::IrFunction* ir_function = nullptr;
    int eh_seq = 0; ///< uniquifier for synthesized exception parameter names
};

class Translator {
public:
    explicit Translator(const ir::IrModule& m) : module(m) {}

    TranslationResult translate() {
        TranslationResult result;
        g = &result.graph;
        records = &result.phi_records;
        diags = &result.diagnostics;

        root = g->new_node(cpg::NodeKind::TranslationUnit, module.source_name,
                           module.source_name);
        g->root = root;

        for (const auto& [name, type] : module.type_defs) map_type_def(name, type);
        for (const auto& glob : module.globals) map_global(glob);
        for (const auto& fn : module.functions) map_function(fn);
        return result;
    }

    static TranslationResult translate_module(const ir::IrModule& m) {
        return Translator(m).translate();
    }

private:
    const ir::IrModule& module;
    cpg::CpgGraph* g = nullptr;
    std::vector<PhiRecord>* records = nullptr;
    DiagnosticList* diags = nullptr;
    cpg::NodeId root = cpg::kInvalidNode;
    std::map<std::string, cpg::NodeId> record_decls;   ///< named struct -> record node
    std::map<std::string, cpg::NodeId> global_decls;   ///< global variable -> declaration
    std::map<std::string, cpg::NodeId> function_decls; ///< function name -> declaration
    MappingContext* ctx = nullptr;

    void diag(Diagnostic::Severity sev, int line, std::string msg) {
        diags->push_back(make_diag(sev, line, std::move(msg)));
    }

    // ---- type spelling -------------------------------------------------

    /// Follows a named struct to its definition (bounded against cycles).
    ir::TypeRef resolve_type(ir::TypeRef t, int depth = 0) const {
        if (!t || depth > 8) return t;
        if (t->kind == ir::Type::Kind::Struct && t->is_named_struct() && t->members.empty()) {
            ir::TypeRef def = module.find_type(t->name);
            if (def) return resolve_type(def, depth + 1);
        }
        return t;
    }

    /// Type spelling used on CPG nodes: LLVM spellings for scalars, record
    /// names for structs (anonymous structs use their interned name).
    std::string cpg_type_name(const ir::TypeRef& t) const {
        if (!t) return "";
        using K = ir::Type::Kind;
        switch (t->kind) {
        case K::Struct:
            if (t->is_named_struct()) return t->name;
            return literal_struct_name(t);
        case K::Pointer:
            if (t->is_opaque_pointer()) return "ptr";
            return cpg_type_name(t->element) + "*";
        case K::Array:
            return "[" + std::to_string(t->length) + " x " + cpg_type_name(t->element) + "]";
        case K::Vector:
            return "<" + std::to_string(t->length) + " x " + cpg_type_name(t->element) + ">";
        default: return ir::to_string(t);
        }
    }

    /// Interned name of an anonymous struct: literal_<f0>_<f1>_... with field
    /// spellings recursively reduced (nested anonymous structs contribute
    /// their own interned name).
    std::string literal_struct_name(const ir::TypeRef& t) const {
        std::string name = "literal";
        for (const auto& f : t->members) {
            std::string fname = cpg_type_name(f);
            fname.erase(std::remove(fname.begin(), fname.end(), ' '), fname.end());
            name += "_" + fname;
        }
        return name;
    }

    /// Record node for a struct type, interning anonymous structs on demand.
    cpg::NodeId record_for(const ir::TypeRef& t) {
        ir::TypeRef s = resolve_type(t);
        if (!s || s->kind != ir::Type::Kind::Struct) return cpg::kInvalidNode;
        if (s->is_named_struct()) {
            auto it = record_decls.find(s->name);
            return it == record_decls.end() ? cpg::kInvalidNode : it->second;
        }
        std::vector<std::string> fields;
        for (const auto& f : s->members) fields.push_back(cpg_type_name(f));
        return g->intern_literal_struct(fields);
    }

    void attach_type_edge(cpg::NodeId node, const ir::TypeRef& t) {
        cpg::NodeId rec = record_for(t);
        if (rec != cpg::kInvalidNode) g->add_type_edge(node, rec);
    }

    // ---- module-level entities ----------------------------------------

    void map_type_def(const std::string& name, const ir::TypeRef& type) {
        if (!type || type->kind != ir::Type::Kind::Struct) return;
        cpg::NodeId rec = g->new_node(cpg::NodeKind::RecordDeclaration, name, "%" + name, name);
        g->add_child(root, rec);
        for (size_t i = 0; i < type->members.size(); ++i) {
            std::string fname = "field_" + std::to_string(i);
            cpg::NodeId field = g->new_node(cpg::NodeKind::FieldDeclaration, fname, fname,
                                            cpg_type_name(type->members[i]));
            g->add_child(rec, field);
        }
        record_decls.emplace(name, rec);
    }

    void map_global(const ir::IrGlobal& glob) {
        cpg::NodeId decl = g->new_node(cpg::NodeKind::VariableDeclaration, glob.name,
                                       "@" + glob.name, cpg_type_name(glob.type));
        g->set_property(decl, "scope", "global");
        if (glob.is_constant) g->set_property(decl, "constant", "true");
        g->add_child(root, decl);
        attach_type_edge(decl, glob.type);
        if (glob.initializer) {
            cpg::NodeId init = map_operand(*glob.initializer);
            g->add_child(decl, init);
            g->set_property(decl, "hasInitializer", "true");
        }
        global_decls.emplace(glob.name, decl);
    }

    // ---- expression construction ---------------------------------------

    cpg::NodeId make_ref(const std::string& name, const std::string& scope,
                         std::string type = {}) {
        cpg::NodeId ref = g->new_node(cpg::NodeKind::DeclaredReferenceExpression, name, name,
                                      std::move(type));
        g->set_property(ref, "scope", scope);
        return ref;
    }

    cpg::NodeId make_int_literal(long long value, std::string type) {
        std::string text = std::to_string(value);
        cpg::NodeId lit = g->new_node(cpg::NodeKind::Literal, text, text, std::move(type));
        g->set_property(lit, "value", text);
        return lit;
    }

    cpg::NodeId make_unary(const std::string& op, cpg::NodeId inner, std::string type = {}) {
        cpg::NodeId node = g->new_node(cpg::NodeKind::UnaryOperator, op,
                                       op + g->node(inner).code, std::move(type));
        g->set_property(node, "operatorCode", op);
        g->add_child(node, inner);
        return node;
    }

    cpg::NodeId make_binary(const std::string& op, cpg::NodeId lhs, cpg::NodeId rhs,
                            std::string type = {}) {
        cpg::NodeId node =
            g->new_node(cpg::NodeKind::BinaryOperator, op,
                        g->node(lhs).code + " " + op + " " + g->node(rhs).code, std::move(type));
        g->set_property(node, "operatorCode", op);
        g->add_child(node, lhs);
        g->add_child(node, rhs);
        return node;
    }

    cpg::NodeId make_cast(std::string target_type, cpg::NodeId inner, std::string kind = {}) {
        cpg::NodeId node = g->new_node(cpg::NodeKind::CastExpression, target_type,
                                       "(" + target_type + ") " + g->node(inner).code,
                                       target_type);
        if (!kind.empty()) g->set_property(node, "castKind", std::move(kind));
        g->add_child(node, inner);
        return node;
    }

    cpg::NodeId make_call(const std::string& callee, const std::vector<cpg::NodeId>& args,
                          std::string type = {}) {
        std::string code = callee + "(";
        for (size_t i = 0; i < args.size(); ++i)
            code += (i ? ", " : "") + g->node(args[i]).code;
        code += ")";
        cpg::NodeId node =
            g->new_node(cpg::NodeKind::CallExpression, callee, std::move(code), std::move(type));
        for (cpg::NodeId a : args) g->add_child(node, a);
        return node;
    }

    cpg::NodeId make_problem(const std::string& what, const std::string& code, int line) {
        cpg::NodeId node =
            g->new_node(cpg::NodeKind::ProblemNode, "", code.empty() ? what : code);
        g->set_property(node, "problem", what);
        g->node(node).line = line;
        diag(Diagnostic::Severity::Warning, line, what);
        return node;
    }

    /// Maps an operand to a detached expression subtree.
    cpg::NodeId map_operand(const ir::IrOperand& op) {
        using K = ir::IrOperand::Kind;
        switch (op.kind) {
        case K::LocalRef: {
            std::string ty = cpg_type_name(op.type);
            if (ctx && ctx->memory_slots.count(op.text)) {
                ir::TypeRef pointee =
                    op.type && op.type->element ? op.type->element : nullptr;
                cpg::NodeId ref = make_ref(op.text, "local", cpg_type_name(pointee));
                return make_unary("&", ref, ty);
            }
            return make_ref(op.text, "local", ty);
        }
        case K::GlobalRef: {
            std::string ty = cpg_type_name(op.type);
            if (global_decls.count(op.text)) {
                // a global symbol denotes the address of its storage
                cpg::NodeId ref = make_ref(op.text, "global");
                return make_unary("&", ref, ty);
            }
            return make_ref(op.text, "global", ty);
        }
        case K::LiteralInt: {
            cpg::NodeId lit = g->new_node(cpg::NodeKind::Literal, op.text, op.text,
                                          cpg_type_name(op.type));
            g->set_property(lit, "value", std::to_string(op.int_value));
            return lit;
        }
        case K::LiteralFloat: {
            cpg::NodeId lit = g->new_node(cpg::NodeKind::Literal, op.text, op.text,
                                          cpg_type_name(op.type));
            g->set_property(lit, "value", op.text);
            g->set_property(lit, "floatValue", std::to_string(op.float_value));
            return lit;
        }
        case K::LiteralString: {
            std::string bytes = op.bytes;
            if (!bytes.empty() && bytes.back() == '\0') bytes.pop_back();
            cpg::NodeId lit = g->new_node(cpg::NodeKind::Literal, "", "c\"" + op.text + "\"",
                                          cpg_type_name(op.type));
            bool printable = std::all_of(bytes.begin(), bytes.end(), [](unsigned char c) {
                return c >= 0x20 && c < 0x7f;
            });
            if (printable) {
                g->set_property(lit, "stringValue", bytes);
            } else {
                std::string hex;
                static const char digits[] = "0123456789abcdef";
                for (unsigned char c : bytes) {
                    hex += digits[c >> 4];
                    hex += digits[c & 0xf];
                }
                g->set_property(lit, "stringHex", hex);
            }
            return lit;
        }
        case K::LiteralNull: {
            cpg::NodeId lit = g->new_node(cpg::NodeKind::Literal, op.text, op.text,
                                          cpg_type_name(op.type));
            g->set_property(lit, "value", op.text);
            return lit;
        }
        case K::AggregateConstant: {
            cpg::NodeId lit =
                g->new_node(cpg::NodeKind::Literal, "", op.text, cpg_type_name(op.type));
            g->set_property(lit, "aggregate", "true");
            return lit;
        }
        case K::ConstExpr:
            if (op.expr) return map_const_expr(*op.expr, op.type);
            return make_problem("constant expression without payload", op.text, 0);
        case K::BlockLabel:
            return make_problem("block label in value position", op.text, 0);
        case K::Unsupported:
            return make_problem("unsupported operand form", op.text, 0);
        }
        return make_problem("unmapped operand", op.text, 0);
    }

    /// Constant expressions reuse the instruction mappers that produce pure
    /// expressions (casts, address computation, arithmetic, compares).
    cpg::NodeId map_const_expr(const ir::IrInstruction& e, const ir::TypeRef& result_type) {
        switch (e.opcode) {
        case ir::Opcode::GetElementPtr: return map_gep_expr(e);
        case ir::Opcode::Trunc:
        case ir::Opcode::ZExt:
        case ir::Opcode::SExt:
        case ir::Opcode::FPTrunc:
        case ir::Opcode::FPExt:
        case ir::Opcode::FPToUI:
        case ir::Opcode::FPToSI:
        case ir::Opcode::UIToFP:
        case ir::Opcode::SIToFP:
        case ir::Opcode::PtrToInt:
        case ir::Opcode::IntToPtr:
        case ir::Opcode::BitCast:
        case ir::Opcode::AddrSpaceCast: {
            if (e.operands.empty() || e.type_args.empty())
                return make_problem("malformed cast expression", e.raw_text, e.line);
            return make_cast(cpg_type_name(e.type_args[0]), map_operand(e.operands[0]),
                             std::string(ir::opcode_name(e.opcode)));
        }
        case ir::Opcode::ICmp:
        case ir::Opcode::FCmp:
        case ir::Opcode::Select:
        case ir::Opcode::Add:
        case ir::Opcode::FAdd:
        case ir::Opcode::Sub:
        case ir::Opcode::FSub:
        case ir::Opcode::Mul:
        case ir::Opcode::FMul:
        case ir::Opcode::UDiv:
        case ir::Opcode::SDiv:
        case ir::Opcode::FDiv:
        case ir::Opcode::URem:
        case ir::Opcode::SRem:
        case ir::Opcode::FRem:
        case ir::Opcode::Shl:
        case ir::Opcode::LShr:
        case ir::Opcode::AShr:
        case ir::Opcode::And:
        case ir::Opcode::Or:
        case ir::Opcode::Xor:
        case ir::Opcode::FNeg: return map_value_expr(e);
        case ir::Opcode::ExtractValue:
            if (e.operands.empty())
                return make_problem("malformed extractvalue expression", e.raw_text, e.line);
            return build_value_chain(map_operand(e.operands[0]),
                                     e.operands[0].type, e.indices, e.raw_text, e.line);
        default:
            (void)result_type;
            return make_problem("unsupported constant expression '" +
                                    std::string(ir::opcode_name(e.opcode)) + "'",
                                e.raw_text, e.line);
        }
    }

    // ---- functions -----------------------------------------------------

    void map_function(const ir::IrFunction& fn) {
        cpg::NodeId decl =
            g->new_node(cpg::NodeKind::FunctionDeclaration, fn.name, "@" + fn.name,
                        cpg_type_name(fn.return_type));
        g->add_child(root, decl);
        if (fn.is_declaration) g->set_property(decl, "isDefinition", "false");
        if (fn.varargs) g->set_property(decl, "varargs", "true");
        function_decls.emplace(fn.name, decl);

        MappingContext context;
        context.function = decl;
        context.ir_function = &fn;
        ctx = &context;

        for (const auto& p : fn.params) {
            cpg::NodeId param = g->new_node(cpg::NodeKind::ParameterDeclaration, p.name,
                                            "%" + p.name, cpg_type_name(p.type));
            g->add_child(decl, param);
            attach_type_edge(param, p.type);
            context.local_decls.emplace(p.name, param);
        }

        if (fn.is_declaration || fn.blocks.empty()) {
            ctx = nullptr;
            return;
        }

        context.body = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(decl, context.body);

        // lay out label/compound pairs first so forward branches and φ
        // predecessors resolve during instruction mapping
        for (const auto& block : fn.blocks) {
            cpg::NodeId label = g->new_node(cpg::NodeKind::LabelStatement, block.label,
                                            block.label + ":");
            cpg::NodeId body = g->new_node(cpg::NodeKind::CompoundStatement, "", block.label);
            g->add_child(context.body, label);
            g->add_child(context.body, body);
            context.block_labels.emplace(block.label, label);
            context.block_bodies.emplace(block.label, body);
        }

        for (const auto& block : fn.blocks) {
            context.current_block = block.label;
            for (const auto& instr : block.instructions) map_instruction(instr);
        }
        ctx = nullptr;
    }

    void emit(cpg::NodeId stmt) {
        g->add_child(ctx->block_bodies.at(ctx->current_block), stmt);
    }

    /// Declares the instruction result and registers it in local scope.
    cpg::NodeId emit_result_decl(const ir::IrInstruction& instr, cpg::NodeId init,
                                 const ir::TypeRef& type) {
        std::string name = instr.result_name.empty() ? "tmp" : instr.result_name;
        cpg::NodeId decl = g->new_node(cpg::NodeKind::VariableDeclaration, name,
                                       instr.raw_text.empty() ? name : instr.raw_text,
                                       cpg_type_name(type));
        g->node(decl).line = instr.line;
        if (init != cpg::kInvalidNode) {
            g->add_child(decl, init);
            g->set_property(decl, "hasInitializer", "true");
        }
        attach_type_edge(decl, type);
        if (!instr.result_name.empty()) ctx->local_decls[instr.result_name] = decl;
        emit(decl);
        return decl;
    }

    cpg::NodeId make_assignment(cpg::NodeId lhs, cpg::NodeId rhs, const std::string& code) {
        cpg::NodeId assign = g->new_node(cpg::NodeKind::BinaryOperator, "=",
                                         code.empty() ? g->node(lhs).code + " = " +
                                                            g->node(rhs).code
                                                      : code);
        g->set_property(assign, "operatorCode", "=");
        g->add_child(assign, lhs);
        g->add_child(assign, rhs);
        return assign;
    }

    cpg::NodeId make_goto(const std::string& label, const std::string& code = {}) {
        cpg::NodeId node = g->new_node(cpg::NodeKind::GotoStatement, label,
                                       code.empty() ? "goto " + label : code);
        g->set_property(node, "targetLabel", label);
        return node;
    }

    // ---- instruction dispatch ------------------------------------------

    void map_instruction(const ir::IrInstruction& instr) {
        try {
            dispatch(instr);
        } catch (const std::exception& e) {
            cpg::NodeId problem = make_problem(std::string("mapping failed: ") + e.what(),
                                               instr.raw_text, instr.line);
            emit(problem);
        }
    }

    void dispatch(const ir::IrInstruction& instr) {
        using O = ir::Opcode;
        switch (instr.opcode) {
        // terminators
        case O::Ret: return map_ret(instr);
        case O::Br: return map_br(instr);
        case O::Switch: return map_switch(instr);
        case O::IndirectBr: return map_synthetic_terminator(instr, "llvm.indirectbr");
        case O::Unreachable: return map_synthetic_terminator(instr, "llvm.unreachable");
        case O::Invoke: return map_invoke(instr);
        case O::CallBr: return map_callbr(instr);
        case O::Resume: return map_resume(instr);
        case O::CatchSwitch: return map_catchswitch(instr);
        case O::CatchRet: return map_catchret(instr);
        case O::CleanupRet: return map_cleanupret(instr);
        // value-producing expressions
        case O::FNeg:
        case O::Add:
        case O::FAdd:
        case O::Sub:
        case O::FSub:
        case O::Mul:
        case O::FMul:
        case O::UDiv:
        case O::SDiv:
        case O::FDiv:
        case O::URem:
        case O::SRem:
        case O::FRem:
        case O::Shl:
        case O::LShr:
        case O::AShr:
        case O::And:
        case O::Or:
        case O::Xor:
        case O::ICmp:
        case O::FCmp: {
            cpg::NodeId expr = map_value_expr(instr);
            emit_result_decl(instr, expr, instr.result_type);
            return;
        }
        case O::Select: {
            if (instr.operands.size() != 3) throw std::runtime_error("select needs 3 operands");
            cpg::NodeId cond = map_operand(instr.operands[0]);
            cpg::NodeId then_v = map_operand(instr.operands[1]);
            cpg::NodeId else_v = map_operand(instr.operands[2]);
            cpg::NodeId node = g->new_node(
                cpg::NodeKind::ConditionalExpression, "",
                g->node(cond).code + " ? " + g->node(then_v).code + " : " +
                    g->node(else_v).code,
                cpg_type_name(instr.operands[1].type));
            g->add_child(node, cond);
            g->add_child(node, then_v);
            g->add_child(node, else_v);
            emit_result_decl(instr, node, instr.operands[1].type);
            return;
        }
        case O::Freeze: {
            if (instr.operands.empty()) throw std::runtime_error("freeze needs an operand");
            emit_result_decl(instr, map_operand(instr.operands[0]), instr.operands[0].type);
            return;
        }
        // casts
        case O::Trunc:
        case O::ZExt:
        case O::SExt:
        case O::FPTrunc:
        case O::FPExt:
        case O::FPToUI:
        case O::FPToSI:
        case O::UIToFP:
        case O::SIToFP:
        case O::PtrToInt:
        case O::IntToPtr:
        case O::BitCast:
        case O::AddrSpaceCast: return map_cast(instr);
        // memory
        case O::Alloca: return map_alloca(instr);
        case O::Load: return map_load(instr);
        case O::Store: return map_store(instr);
        case O::Fence: return map_synthetic_call(instr, "llvm.fence");
        case O::CmpXchg: return map_cmpxchg(instr);
        case O::AtomicRMW: return map_atomicrmw(instr);
        case O::GetElementPtr: {
            cpg::NodeId expr = map_gep_expr(instr);
            emit_result_decl(instr, expr, instr.result_type ? instr.result_type
                                                            : ir::opaque_pointer());
            return;
        }
        // aggregates / vectors
        case O::ExtractValue: return map_extractvalue(instr);
        case O::InsertValue: return map_insertvalue(instr);
        case O::ExtractElement: return map_extractelement(instr);
        case O::InsertElement: return map_insertelement(instr);
        case O::ShuffleVector: return map_synthetic_call(instr, "llvm.shufflevector");
        // calls and the rest
        case O::Call: return map_call(instr);
        case O::VaArg: return map_synthetic_call(instr, "llvm.va_arg");
        case O::Phi: return record_phi(instr);
        case O::LandingPad: return map_landingpad(instr);
        case O::CatchPad: return map_eh_pad(instr, "llvm.catchpad");
        case O::CleanupPad: return map_eh_pad(instr, "llvm.cleanuppad");
        case O::Opaque: {
            cpg::NodeId problem =
                make_problem("unsupported instruction", instr.raw_text, instr.line);
            if (!instr.result_name.empty()) {
                // wrap so that later references still find a declaration
                cpg::NodeId decl = g->new_node(cpg::NodeKind::VariableDeclaration,
                                               instr.result_name, instr.raw_text);
                g->node(decl).line = instr.line;
                g->add_child(decl, problem);
                g->set_property(decl, "hasInitializer", "true");
                ctx->local_decls[instr.result_name] = decl;
                emit(decl);
            } else {
                emit(problem);
            }
            return;
        }
        }
    }

    // ---- arithmetic / compares -----------------------------------------

    static bool uses_unsigned_casts(ir::Opcode op) {
        using O = ir::Opcode;
        return op == O::UDiv || op == O::URem || op == O::LShr;
    }
    static bool uses_signed_casts(ir::Opcode op) {
        using O = ir::Opcode;
        return op == O::SDiv || op == O::SRem || op == O::AShr;
    }

    std::string signedness_type(const ir::TypeRef& t, bool is_unsigned) const {
        std::string base = cpg_type_name(t);
        if (is_unsigned && !base.empty() && base[0] == 'i') return "u" + base.substr(1);
        return base;
    }

    cpg::NodeId map_operand_with_signedness(const ir::IrOperand& op, bool cast_needed,
                                            bool is_unsigned) {
        cpg::NodeId inner = map_operand(op);
        if (!cast_needed) return inner;
        cpg::NodeId cast = make_cast(signedness_type(op.type, is_unsigned), inner,
                                     is_unsigned ? "unsigned" : "signed");
        g->set_property(cast, "signedness", is_unsigned ? "unsigned" : "signed");
        return cast;
    }

    /// Pure-expression mapping for arithmetic, bitwise, and compare opcodes
    /// (used both for instructions and constant expressions).
    cpg::NodeId map_value_expr(const ir::IrInstruction& instr) {
        using O = ir::Opcode;
        if (instr.opcode == O::FNeg) {
            if (instr.operands.empty()) throw std::runtime_error("fneg needs an operand");
            return make_unary("-", map_operand(instr.operands[0]),
                              cpg_type_name(instr.operands[0].type));
        }
        if (instr.operands.size() < 2)
            throw std::runtime_error(std::string(ir::opcode_name(instr.opcode)) +
                                     " needs two operands");
        if (instr.opcode == O::ICmp) return map_icmp(instr);
        if (instr.opcode == O::FCmp) return map_fcmp(instr);

        std::string op;
        switch (instr.opcode) {
        case O::Add:
        case O::FAdd: op = "+"; break;
        case O::Sub:
        case O::FSub: op = "-"; break;
        case O::Mul:
        case O::FMul: op = "*"; break;
        case O::UDiv:
        case O::SDiv:
        case O::FDiv: op = "/"; break;
        case O::URem:
        case O::SRem:
        case O::FRem: op = "%"; break;
        case O::Shl: op = "<<"; break;
        case O::LShr:
        case O::AShr: op = ">>"; break;
        case O::And: op = "&"; break;
        case O::Or: op = "|"; break;
        case O::Xor: op = "^"; break;
        default: throw std::runtime_error("not a binary opcode");
        }

        bool want_unsigned = uses_unsigned_casts(instr.opcode);
        bool want_signed = uses_signed_casts(instr.opcode);
        bool cast_needed = want_unsigned || want_signed;
        cpg::NodeId lhs =
            map_operand_with_signedness(instr.operands[0], cast_needed, want_unsigned);
        cpg::NodeId rhs =
            map_operand_with_signedness(instr.operands[1], cast_needed, want_unsigned);
        return make_binary(op, lhs, rhs, cpg_type_name(instr.result_type));
    }

    cpg::NodeId map_icmp(const ir::IrInstruction& instr) {
        const std::string& pred = instr.predicate;
        std::string op;
        if (pred == "eq") op = "==";
        else if (pred == "ne") op = "!=";
        else if (pred == "ugt" || pred == "sgt") op = ">";
        else if (pred == "uge" || pred == "sge") op = ">=";
        else if (pred == "ult" || pred == "slt") op = "<";
        else if (pred == "ule" || pred == "sle") op = "<=";
        else throw std::runtime_error("unknown icmp predicate '" + pred + "'");

        bool is_unsigned = pred[0] == 'u';
        bool cast_needed = pred != "eq" && pred != "ne";
        cpg::NodeId lhs =
            map_operand_with_signedness(instr.operands[0], cast_needed, is_unsigned);
        cpg::NodeId rhs =
            map_operand_with_signedness(instr.operands[1], cast_needed, is_unsigned);
        return make_binary(op, lhs, rhs, "i1");
    }

    /// fcmp expands to isunordered() combinations: ordered predicates require
    /// both operands ordered (conjunction), unordered predicates are true on
    /// any NaN operand (disjunction).
    cpg::NodeId map_fcmp(const ir::IrInstruction& instr) {
        const std::string& pred = instr.predicate;
        if (pred == "true") return make_int_literal(1, "i1");
        if (pred == "false") return make_int_literal(0, "i1");

        auto unordered_call = [&]() {
            return make_call("isunordered",
                             {map_operand(instr.operands[0]), map_operand(instr.operands[1])},
                             "i1");
        };
        if (pred == "uno") return unordered_call();
        if (pred == "ord") return make_unary("!", unordered_call(), "i1");

        std::string base = pred.substr(1); // eq/gt/ge/lt/le/ne
        std::string op;
        if (base == "eq") op = "==";
        else if (base == "ne") op = "!=";
        else if (base == "gt") op = ">";
        else if (base == "ge") op = ">=";
        else if (base == "lt") op = "<";
        else if (base == "le") op = "<=";
        else throw std::runtime_error("unknown fcmp predicate '" + pred + "'");

        cpg::NodeId cmp = make_binary(op, map_operand(instr.operands[0]),
                                      map_operand(instr.operands[1]), "i1");
        if (pred[0] == 'u') return make_binary("||", unordered_call(), cmp, "i1");
        return make_binary("&&", make_unary("!", unordered_call(), "i1"), cmp, "i1");
    }

    void map_cast(const ir::IrInstruction& instr) {
        if (instr.operands.empty() || instr.type_args.empty())
            throw std::runtime_error("cast needs an operand and a target type");
        cpg::NodeId cast = make_cast(cpg_type_name(instr.type_args[0]),
                                     map_operand(instr.operands[0]),
                                     std::string(ir::opcode_name(instr.opcode)));
        using O = ir::Opcode;
        if (instr.opcode == O::ZExt || instr.opcode == O::FPToUI || instr.opcode == O::UIToFP)
            g->set_property(cast, "signedness", "unsigned");
        if (instr.opcode == O::SExt || instr.opcode == O::FPToSI || instr.opcode == O::SIToFP)
            g->set_property(cast, "signedness", "signed");
        emit_result_decl(instr, cast, instr.type_args[0]);
    }

    // ---- memory --------------------------------------------------------

    void map_alloca(const ir::IrInstruction& instr) {
        if (instr.type_args.empty()) throw std::runtime_error("alloca without a type");
        ir::TypeRef allocated = instr.type_args[0];
        cpg::NodeId decl = emit_result_decl(instr, cpg::kInvalidNode, allocated);
        if (!instr.operands.empty())
            g->set_property(decl, "arraySize", instr.operands[0].text);
        if (!instr.result_name.empty()) ctx->memory_slots.insert(instr.result_name);
    }

    /// True when the operand names an alloca result or module global whose
    /// declared storage we model directly; `*&x` then simplifies to `x`.
    bool is_direct_slot(const ir::IrOperand& op) const {
        if (op.kind == ir::IrOperand::Kind::LocalRef)
            return ctx && ctx->memory_slots.count(op.text) > 0;
        if (op.kind == ir::IrOperand::Kind::GlobalRef) return global_decls.count(op.text) > 0;
        return false;
    }

    cpg::NodeId map_lvalue(const ir::IrOperand& ptr) {
        if (is_direct_slot(ptr)) {
            std::string scope =
                ptr.kind == ir::IrOperand::Kind::GlobalRef ? "global" : "local";
            return make_ref(ptr.text, scope);
        }
        return make_unary("*", map_operand(ptr));
    }

    void map_load(const ir::IrInstruction& instr) {
        if (instr.operands.empty()) throw std::runtime_error("load without a pointer");
        ir::TypeRef loaded = instr.type_args.empty() ? nullptr : instr.type_args[0];
        cpg::NodeId value = map_lvalue(instr.operands[0]);
        cpg::NodeId decl = emit_result_decl(instr, value, loaded);
        if (instr.has_flag("volatile")) g->set_property(decl, "volatile", "true");
        if (instr.has_flag("atomic")) g->set_property(decl, "atomic", "true");
    }

    void map_store(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 2) throw std::runtime_error("store needs value and pointer");
        cpg::NodeId lhs = map_lvalue(instr.operands[1]);
        cpg::NodeId rhs = map_operand(instr.operands[0]);
        cpg::NodeId assign = make_assignment(lhs, rhs, instr.raw_text);
        if (instr.has_flag("volatile")) g->set_property(assign, "volatile", "true");
        if (instr.has_flag("atomic")) g->set_property(assign, "atomic", "true");
        emit(assign);
    }

    // ---- address computation / aggregates ------------------------------

    /// Walks getelementptr indices over the source type, building the
    /// Member/ArraySubscription chain; the result is the address-of wrapper.
    /// No loads or stores are emitted: GEP is pure address arithmetic.
    cpg::NodeId map_gep_expr(const ir::IrInstruction& instr) {
        if (instr.operands.empty() || instr.type_args.empty())
            throw std::runtime_error("getelementptr needs a source type and base");
        const ir::IrOperand& base = instr.operands[0];
        if (instr.operands.size() == 1) return map_operand(base); // no indices: the pointer
        ir::TypeRef cursor = instr.type_args[0];

        cpg::NodeId expr;
        size_t index_start = 1;
        if (is_direct_slot(base) && instr.operands.size() > 1 &&
            instr.operands[1].kind == ir::IrOperand::Kind::LiteralInt &&
            instr.operands[1].int_value == 0) {
            // &slot with a zero first index: slot itself is the object
            std::string scope =
                base.kind == ir::IrOperand::Kind::GlobalRef ? "global" : "local";
            expr = make_ref(base.text, scope, cpg_type_name(cursor));
            index_start = 2;
        } else {
            expr = map_operand(base);
            if (instr.operands.size() > 1) {
                cpg::NodeId idx = map_operand(instr.operands[1]);
                expr = make_subscript(expr, idx, cpg_type_name(cursor));
                index_start = 2;
            }
        }

        for (size_t i = index_start; i < instr.operands.size(); ++i) {
            const ir::IrOperand& idx = instr.operands[i];
            ir::TypeRef resolved = resolve_type(cursor);
            if (resolved && resolved->kind == ir::Type::Kind::Struct) {
                if (idx.kind != ir::IrOperand::Kind::LiteralInt || idx.int_value < 0 ||
                    static_cast<size_t>(idx.int_value) >= resolved->members.size()) {
                    cpg::NodeId problem = make_problem("struct index out of range",
                                                       instr.raw_text, instr.line);
                    g->add_child(problem, expr);
                    return make_unary("&", problem);
                }
                size_t field_index = static_cast<size_t>(idx.int_value);
                expr = make_member(expr, resolved, field_index);
                cursor = resolved->members[field_index];
            } else if (resolved && (resolved->kind == ir::Type::Kind::Array ||
                                    resolved->kind == ir::Type::Kind::Vector)) {
                cursor = resolved->element;
                expr = make_subscript(expr, map_operand(idx), cpg_type_name(cursor));
            } else {
                // opaque element type: keep the subscript, mark it imprecise
                cpg::NodeId sub = make_subscript(expr, map_operand(idx), "");
                g->set_property(sub, "approximate", "true");
                expr = sub;
                cursor = ir::opaque_type("opaque");
            }
        }
        return make_unary("&", expr, cpg_type_name(ir::pointer_to(cursor)));
    }

    cpg::NodeId make_subscript(cpg::NodeId base, cpg::NodeId index, std::string type) {
        cpg::NodeId node = g->new_node(
            cpg::NodeKind::ArraySubscriptionExpression, "",
            g->node(base).code + "[" + g->node(index).code + "]", std::move(type));
        g->add_child(node, base);
        g->add_child(node, index);
        return node;
    }

    cpg::NodeId make_member(cpg::NodeId base, const ir::TypeRef& struct_type,
                            size_t field_index) {
        std::string fname = "field_" + std::to_string(field_index);
        cpg::NodeId node = g->new_node(cpg::NodeKind::MemberExpression, fname,
                                       g->node(base).code + "." + fname,
                                       cpg_type_name(struct_type->members[field_index]));
        g->set_property(node, "fieldIndex", std::to_string(field_index));
        g->add_child(node, base);
        cpg::NodeId rec = record_for(struct_type);
        if (rec != cpg::kInvalidNode) {
            if (auto field = g->record_field(rec, field_index)) g->add_field_edge(node, *field);
        }
        return node;
    }

    /// Member/subscript chain over a value (extractvalue/insertvalue paths).
    cpg::NodeId build_value_chain(cpg::NodeId base, ir::TypeRef type,
                                  const std::vector<long long>& indices,
                                  const std::string& code, int line) {
        cpg::NodeId expr = base;
        ir::TypeRef cursor = type;
        for (long long raw : indices) {
            ir::TypeRef resolved = resolve_type(cursor);
            if (resolved && resolved->kind == ir::Type::Kind::Struct) {
                if (raw < 0 || static_cast<size_t>(raw) >= resolved->members.size()) {
                    cpg::NodeId problem = make_problem("aggregate index out of range", code,
                                                       line);
                    g->add_child(problem, expr);
                    return problem;
                }
                expr = make_member(expr, resolved, static_cast<size_t>(raw));
                cursor = resolved->members[static_cast<size_t>(raw)];
            } else if (resolved && (resolved->kind == ir::Type::Kind::Array ||
                                    resolved->kind == ir::Type::Kind::Vector)) {
                cursor = resolved->element;
                expr = make_subscript(expr, make_int_literal(raw, "i64"),
                                      cpg_type_name(cursor));
            } else {
                cpg::NodeId problem =
                    make_problem("aggregate index into non-aggregate", code, line);
                g->add_child(problem, expr);
                return problem;
            }
        }
        return expr;
    }

    void map_extractvalue(const ir::IrInstruction& instr) {
        if (instr.operands.empty()) throw std::runtime_error("extractvalue needs an operand");
        cpg::NodeId chain = build_value_chain(map_operand(instr.operands[0]),
                                              instr.operands[0].type, instr.indices,
                                              instr.raw_text, instr.line);
        emit_result_decl(instr, chain, instr.result_type);
    }

    /// insertvalue has copy semantics: declare the result as a whole-value
    /// copy of the source aggregate, then assign the modified element.
    void map_insertvalue(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 2)
            throw std::runtime_error("insertvalue needs aggregate and element");
        const ir::IrOperand& aggregate = instr.operands[0];
        cpg::NodeId decl = emit_result_decl(instr, map_operand(aggregate), aggregate.type);

        cpg::NodeId lhs = build_value_chain(
            make_ref(g->node(decl).name, "local", g->node(decl).type), aggregate.type,
            instr.indices, instr.raw_text, instr.line);
        cpg::NodeId rhs = map_operand(instr.operands[1]);
        emit(make_assignment(lhs, rhs, g->node(lhs).code + " = " + g->node(rhs).code));
    }

    void map_extractelement(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 2) throw std::runtime_error("extractelement needs 2 operands");
        cpg::NodeId vec = materialize_vector(instr, instr.operands[0]);
        cpg::NodeId idx = map_operand(instr.operands[1]);
        ir::TypeRef elem =
            instr.operands[0].type ? instr.operands[0].type->element : nullptr;
        emit_result_decl(instr, make_subscript(vec, idx, cpg_type_name(elem)), elem);
    }

    void map_insertelement(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 3) throw std::runtime_error("insertelement needs 3 operands");
        const ir::IrOperand& vec = instr.operands[0];
        cpg::NodeId decl = emit_result_decl(instr, map_operand(vec), vec.type);
        cpg::NodeId lhs =
            make_subscript(make_ref(g->node(decl).name, "local", g->node(decl).type),
                           map_operand(instr.operands[2]),
                           cpg_type_name(vec.type ? vec.type->element : nullptr));
        cpg::NodeId rhs = map_operand(instr.operands[1]);
        emit(make_assignment(lhs, rhs, g->node(lhs).code + " = " + g->node(rhs).code));
    }

    /// Constant vector operands are materialized into a temporary declaration
    /// so the subscript has a referenceable base.
    cpg::NodeId materialize_vector(const ir::IrInstruction& instr, const ir::IrOperand& op) {
        if (op.kind != ir::IrOperand::Kind::AggregateConstant) return map_operand(op);
        std::string tmp =
            (instr.result_name.empty() ? "vec" : instr.result_name) + ".vec";
        cpg::NodeId decl = g->new_node(cpg::NodeKind::VariableDeclaration, tmp, op.text,
                                       cpg_type_name(op.type));
        g->add_child(decl, map_operand(op));
        g->set_property(decl, "hasInitializer", "true");
        ctx->local_decls[tmp] = decl;
        emit(decl);
        return make_ref(tmp, "local", cpg_type_name(op.type));
    }

    // ---- atomics -------------------------------------------------------

    /// cmpxchg lowers to an annotated block: load the old value, compare-and-
    /// store under an if, then build the {old, success} literal-struct result.
    void map_cmpxchg(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 3)
            throw std::runtime_error("cmpxchg needs pointer, compare, and new value");
        const ir::IrOperand& ptr = instr.operands[0];
        const ir::IrOperand& cmp = instr.operands[1];
        const ir::IrOperand& new_value = instr.operands[2];
        ir::TypeRef payload = cmp.type;

        cpg::NodeId block =
            g->new_node(cpg::NodeKind::CompoundStatement, "", instr.raw_text);
        g->set_property(block, "atomic", "true");
        for (const auto& f : instr.flags)
            if (f.rfind("success-", 0) == 0 || f.rfind("failure-", 0) == 0)
                g->set_property(block, "ordering-" + f.substr(0, f.find('-')),
                                f.substr(f.find('-') + 1));
        emit(block);
        std::string result = instr.result_name.empty() ? "cmpxchg" : instr.result_name;
        std::string old_name = result + ".old";

        // old value
        cpg::NodeId old_decl = g->new_node(cpg::NodeKind::VariableDeclaration, old_name,
                                           old_name + " = *ptr", cpg_type_name(payload));
        g->add_child(old_decl, map_lvalue(ptr));
        g->set_property(old_decl, "hasInitializer", "true");
        ctx->local_decls[old_name] = old_decl;
        g->add_child(block, old_decl);

        // conditional store
        cpg::NodeId cond = make_binary("==", make_ref(old_name, "local"), map_operand(cmp), "i1");
        cpg::NodeId then_assign = make_assignment(map_lvalue(ptr), map_operand(new_value), "");
        cpg::NodeId if_stmt = g->new_node(cpg::NodeKind::IfStatement, "",
                                          "if (" + g->node(cond).code + ")");
        g->add_child(if_stmt, cond);
        g->add_child(if_stmt, then_assign);
        g->add_child(block, if_stmt);

        // result construction: {payload, i1} literal struct
        std::vector<std::string> fields = {cpg_type_name(payload), "i1"};
        cpg::NodeId rec = g->intern_literal_struct(fields);
        std::string rec_name = g->node(rec).name;

        cpg::NodeId inner = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(block, inner);

        cpg::NodeId result_decl =
            g->new_node(cpg::NodeKind::VariableDeclaration, result, instr.raw_text, rec_name);
        g->add_type_edge(result_decl, rec);
        if (!instr.result_name.empty()) ctx->local_decls[instr.result_name] = result_decl;
        g->add_child(inner, result_decl);

        auto field_assign = [&](size_t index, cpg::NodeId value) {
            std::string fname = "field_" + std::to_string(index);
            cpg::NodeId member = g->new_node(cpg::NodeKind::MemberExpression, fname,
                                             result + "." + fname,
                                             index == 0 ? cpg_type_name(payload) : "i1");
            g->set_property(member, "fieldIndex", std::to_string(index));
            g->add_child(member, make_ref(result, "local", rec_name));
            if (auto field = g->record_field(rec, index)) g->add_field_edge(member, *field);
            g->add_child(inner, make_assignment(member, value, ""));
        };
        field_assign(0, make_ref(old_name, "local"));
        field_assign(1, make_binary("==", make_ref(old_name, "local"), map_operand(cmp), "i1"));
    }

    void map_atomicrmw(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 2)
            throw std::runtime_error("atomicrmw needs pointer and operand");
        const std::string& op = instr.predicate;
        const ir::IrOperand& ptr = instr.operands[0];
        const ir::IrOperand& value = instr.operands[1];
        ir::TypeRef payload = value.type;

        static const std::map<std::string, std::string> binary_ops = {
            {"add", "+"}, {"sub", "-"}, {"and", "&"}, {"or", "|"},
            {"xor", "^"}, {"fadd", "+"}, {"fsub", "-"},
        };
        static const std::set<std::string> minmax_ops = {"max", "min", "umax",
                                                         "umin", "fmax", "fmin"};

        bool known = op == "xchg" || op == "nand" || binary_ops.count(op) ||
                     minmax_ops.count(op);
        if (!known) {
            // no high-level equivalent: keep the semantics behind a synthetic call
            cpg::NodeId call =
                make_call("llvm.atomicrmw." + op, {map_operand(ptr), map_operand(value)},
                          cpg_type_name(payload));
            emit_result_decl(instr, call, payload);
            return;
        }

        cpg::NodeId block = g->new_node(cpg::NodeKind::CompoundStatement, "", instr.raw_text);
        g->set_property(block, "atomic", "true");
        for (const auto& f : instr.flags)
            if (f != "volatile" && f != "syncscope") g->set_property(block, "ordering", f);
        emit(block);

        // the instruction result is the old value
        std::string result = instr.result_name.empty() ? "rmw.old" : instr.result_name;
        cpg::NodeId old_decl = g->new_node(cpg::NodeKind::VariableDeclaration, result,
                                           instr.raw_text, cpg_type_name(payload));
        g->add_child(old_decl, map_lvalue(ptr));
        g->set_property(old_decl, "hasInitializer", "true");
        if (!instr.result_name.empty()) ctx->local_decls[instr.result_name] = old_decl;
        g->add_child(block, old_decl);

        if (op == "xchg") {
            g->add_child(block, make_assignment(map_lvalue(ptr), map_operand(value), ""));
            return;
        }
        if (auto it = binary_ops.find(op); it != binary_ops.end()) {
            cpg::NodeId rhs = make_binary(it->second, make_ref(result, "local"),
                                          map_operand(value), cpg_type_name(payload));
            g->add_child(block, make_assignment(map_lvalue(ptr), rhs, ""));
            return;
        }
        if (op == "nand") {
            cpg::NodeId conj = make_binary("&", make_ref(result, "local"), map_operand(value),
                                           cpg_type_name(payload));
            g->add_child(block,
                         make_assignment(map_lvalue(ptr), make_unary("~", conj), ""));
            return;
        }
        // min/max family: conditional replacement
        bool is_unsigned = op == "umax" || op == "umin";
        bool is_max = op == "max" || op == "umax" || op == "fmax";
        cpg::NodeId lhs_cmp = map_operand(value);
        cpg::NodeId rhs_cmp = make_ref(result, "local");
        if (is_unsigned) {
            lhs_cmp = make_cast(signedness_type(payload, true), lhs_cmp, "unsigned");
            rhs_cmp = make_cast(signedness_type(payload, true), rhs_cmp, "unsigned");
        }
        cpg::NodeId cond = make_binary(is_max ? ">" : "<", lhs_cmp, rhs_cmp, "i1");
        cpg::NodeId if_stmt =
            g->new_node(cpg::NodeKind::IfStatement, "", "if (" + g->node(cond).code + ")");
        g->add_child(if_stmt, cond);
        g->add_child(if_stmt, make_assignment(map_lvalue(ptr), map_operand(value), ""));
        g->add_child(block, if_stmt);
    }

    // ---- calls ---------------------------------------------------------

    void map_call(const ir::IrInstruction& instr) {
        bool indirect = instr.has_flag("indirect");
        std::vector<cpg::NodeId> args;
        size_t first_arg = indirect ? 1 : 0;
        for (size_t i = first_arg; i < instr.operands.size(); ++i)
            args.push_back(map_operand(instr.operands[i]));

        cpg::NodeId call =
            make_call(indirect ? "" : instr.callee, args, cpg_type_name(instr.result_type));
        if (indirect && !instr.operands.empty()) {
            // callee expression is the last child, mirroring argument order
            g->add_child(call, map_operand(instr.operands[0]));
            g->set_property(call, "indirect", "true");
        }
        g->node(call).code = instr.raw_text;
        finish_value_or_statement(instr, call,
                                  instr.result_type ? instr.result_type : ir::void_type());
    }

    void map_synthetic_call(const ir::IrInstruction& instr, const std::string& name) {
        std::vector<cpg::NodeId> args;
        for (const auto& op : instr.operands) {
            if (op.kind == ir::IrOperand::Kind::BlockLabel) continue;
            args.push_back(map_operand(op));
        }
        cpg::NodeId call = make_call(name, args, cpg_type_name(instr.result_type));
        g->node(call).code = instr.raw_text.empty() ? g->node(call).code : instr.raw_text;
        for (const auto& f : instr.flags) g->set_property(call, "flag-" + f, "true");
        finish_value_or_statement(instr, call, instr.result_type);
    }

    void map_synthetic_terminator(const ir::IrInstruction& instr, const std::string& name) {
        std::vector<cpg::NodeId> args;
        for (const auto& op : instr.operands) {
            if (op.kind == ir::IrOperand::Kind::BlockLabel) continue;
            args.push_back(map_operand(op));
        }
        cpg::NodeId call = make_call(name, args);
        g->node(call).code = instr.raw_text.empty() ? name : instr.raw_text;
        g->set_property(call, "terminator", "true");
        emit(call);
    }

    void finish_value_or_statement(const ir::IrInstruction& instr, cpg::NodeId expr,
                                   ir::TypeRef type) {
        if (!instr.result_name.empty()) {
            emit_result_decl(instr, expr, type);
        } else {
            g->node(expr).line = instr.line;
            emit(expr);
        }
    }

    // ---- control flow --------------------------------------------------

    void map_ret(const ir::IrInstruction& instr) {
        cpg::NodeId ret =
            g->new_node(cpg::NodeKind::ReturnStatement, "", instr.raw_text.empty()
                                                                ? "ret"
                                                                : instr.raw_text);
        g->node(ret).line = instr.line;
        if (!instr.operands.empty()) g->add_child(ret, map_operand(instr.operands[0]));
        emit(ret);
    }

    void map_br(const ir::IrInstruction& instr) {
        // unconditional: single label operand
        std::vector<const ir::IrOperand*> labels;
        const ir::IrOperand* cond = nullptr;
        for (const auto& op : instr.operands) {
            if (op.kind == ir::IrOperand::Kind::BlockLabel) labels.push_back(&op);
            else cond = &op;
        }
        if (!cond) {
            if (labels.size() != 1) throw std::runtime_error("malformed br");
            emit(make_goto(labels[0]->text, instr.raw_text));
            return;
        }
        if (labels.size() != 2) throw std::runtime_error("malformed conditional br");
        cpg::NodeId cond_expr = map_operand(*cond);
        cpg::NodeId if_stmt =
            g->new_node(cpg::NodeKind::IfStatement, "", instr.raw_text);
        g->node(if_stmt).line = instr.line;
        g->add_child(if_stmt, cond_expr);
        g->add_child(if_stmt, make_goto(labels[0]->text));
        g->add_child(if_stmt, make_goto(labels[1]->text));
        emit(if_stmt);
    }

    void map_switch(const ir::IrInstruction& instr) {
        if (instr.operands.size() < 2 || instr.operands.size() % 2 != 0)
            throw std::runtime_error("malformed switch");
        cpg::NodeId sw = g->new_node(cpg::NodeKind::SwitchStatement, "", instr.raw_text);
        g->node(sw).line = instr.line;
        g->add_child(sw, map_operand(instr.operands[0])); // selector
        cpg::NodeId body = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(sw, body);

        // default first in the instruction, last in the rendered switch
        for (size_t i = 2; i + 1 < instr.operands.size(); i += 2) {
            cpg::NodeId cs = g->new_node(cpg::NodeKind::CaseStatement, "",
                                         "case " + instr.operands[i].text);
            g->add_child(cs, map_operand(instr.operands[i]));
            g->add_child(cs, make_goto(instr.operands[i + 1].text));
            g->add_child(body, cs);
        }
        cpg::NodeId def = g->new_node(cpg::NodeKind::CaseStatement, "", "default");
        g->set_property(def, "default", "true");
        g->add_child(def, make_goto(instr.operands[1].text));
        g->add_child(body, def);
        emit(sw);
    }

    void map_callbr(const ir::IrInstruction& instr) {
        // treated as a call followed by a transfer we cannot refine
        map_synthetic_terminator(instr, "llvm.callbr");
    }

    // ---- exception handling --------------------------------------------

    /// invoke wraps the call in a try-block: the normal edge continues via a
    /// goto, and a catch-all clause forwards into the unwind block.
    void map_invoke(const ir::IrInstruction& instr) {
        // last two label operands are normal/unwind destinations
        std::vector<size_t> label_idx;
        for (size_t i = 0; i < instr.operands.size(); ++i)
            if (instr.operands[i].kind == ir::IrOperand::Kind::BlockLabel)
                label_idx.push_back(i);
        if (label_idx.size() < 2) throw std::runtime_error("invoke without destinations");
        const std::string normal = instr.operands[label_idx[label_idx.size() - 2]].text;
        const std::string unwind = instr.operands[label_idx.back()].text;

        cpg::NodeId try_stmt = g->new_node(cpg::NodeKind::TryStatement, "", instr.raw_text);
        g->node(try_stmt).line = instr.line;
        emit(try_stmt);
        cpg::NodeId try_body = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(try_stmt, try_body);

        // the call itself (arguments exclude the destination labels)
        std::vector<cpg::NodeId> args;
        bool indirect = instr.has_flag("indirect");
        size_t first_arg = indirect ? 1 : 0;
        for (size_t i = first_arg; i < instr.operands.size(); ++i) {
            if (instr.operands[i].kind == ir::IrOperand::Kind::BlockLabel) continue;
            args.push_back(map_operand(instr.operands[i]));
        }
        cpg::NodeId call =
            make_call(indirect ? "" : instr.callee, args, cpg_type_name(instr.result_type));
        if (indirect && !instr.operands.empty()) {
            g->add_child(call, map_operand(instr.operands[0]));
            g->set_property(call, "indirect", "true");
        }
        g->node(call).code = instr.raw_text;

        if (!instr.result_name.empty()) {
            cpg::NodeId decl =
                g->new_node(cpg::NodeKind::VariableDeclaration, instr.result_name,
                            instr.raw_text, cpg_type_name(instr.result_type));
            g->add_child(decl, call);
            g->set_property(decl, "hasInitializer", "true");
            ctx->local_decls[instr.result_name] = decl;
            g->add_child(try_body, decl);
        } else {
            g->add_child(try_body, call);
        }
        g->add_child(try_body, make_goto(normal));

        // catch-all clause forwarding into the unwind block
        std::string exc = "exc." + unwind + "." + std::to_string(ctx->eh_seq++);
        cpg::NodeId clause = g->new_node(cpg::NodeKind::CatchClause, exc, "catch (" + exc + ")");
        g->add_child(try_stmt, clause);
        cpg::NodeId param =
            g->new_node(cpg::NodeKind::VariableDeclaration, exc, exc, "ptr");
        g->set_property(param, "exceptionParam", "true");
        ctx->local_decls[exc] = param;
        g->add_child(clause, param);
        cpg::NodeId handler = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(clause, handler);
        g->add_child(handler, make_goto(unwind));
    }

    void map_resume(const ir::IrInstruction& instr) {
        cpg::NodeId throw_stmt =
            g->new_node(cpg::NodeKind::ThrowStatement, "", instr.raw_text);
        g->node(throw_stmt).line = instr.line;
        if (!instr.operands.empty()) g->add_child(throw_stmt, map_operand(instr.operands[0]));
        emit(throw_stmt);
    }

    void map_landingpad(const ir::IrInstruction& instr) {
        cpg::NodeId call = make_call("llvm.landingpad", {}, cpg_type_name(instr.result_type));
        for (const auto& f : instr.flags) g->set_property(call, "clause-" + f, "true");
        g->node(call).code = instr.raw_text;
        cpg::NodeId decl = emit_result_decl(
            instr, call, instr.result_type ? instr.result_type : ir::opaque_type("token"));
        g->set_property(decl, "ehSynthetic", "true");
    }

    void map_eh_pad(const ir::IrInstruction& instr, const std::string& name) {
        std::vector<cpg::NodeId> args;
        for (const auto& op : instr.operands) {
            if (op.type && op.type->kind == ir::Type::Kind::Token) continue;
            args.push_back(map_operand(op));
        }
        cpg::NodeId call = make_call(name, args, "token");
        g->node(call).code = instr.raw_text;
        cpg::NodeId decl = emit_result_decl(instr, call, ir::token_type());
        g->set_property(decl, "ehSynthetic", "true");
    }

    void map_catchret(const ir::IrInstruction& instr) {
        for (const auto& op : instr.operands)
            if (op.kind == ir::IrOperand::Kind::BlockLabel) {
                emit(make_goto(op.text, instr.raw_text));
                return;
            }
        throw std::runtime_error("catchret without continuation label");
    }

    void map_cleanupret(const ir::IrInstruction& instr) {
        for (const auto& op : instr.operands)
            if (op.kind == ir::IrOperand::Kind::BlockLabel) {
                cpg::NodeId gt = make_goto(op.text, instr.raw_text);
                g->set_property(gt, "cleanup", "true");
                emit(gt);
                return;
            }
        map_synthetic_terminator(instr, "llvm.cleanupret");
    }

    /// catchswitch becomes one catch-all CatchClause whose body dispatches to
    /// the handler blocks through an if/else-if chain over the catchpad
    /// signatures; the final else rethrows. The rethrow initially references
    /// the catchswitch token; the cleanup pass rewires it to the clause's
    /// exception parameter.
    void map_catchswitch(const ir::IrInstruction& instr) {
        std::vector<std::string> handlers;
        for (const auto& op : instr.operands)
            if (op.kind == ir::IrOperand::Kind::BlockLabel) handlers.push_back(op.text);
        // the trailing label (if unwinding to another scope) is not a handler
        if (instr.has_flag("unwind-to-label") && !handlers.empty()) handlers.pop_back();

        std::string exc = "exc.cs." + std::to_string(ctx->eh_seq++);
        cpg::NodeId clause =
            g->new_node(cpg::NodeKind::CatchClause, exc, instr.raw_text);
        g->node(clause).line = instr.line;
        emit(clause);
        cpg::NodeId param = g->new_node(cpg::NodeKind::VariableDeclaration, exc, exc, "ptr");
        g->set_property(param, "exceptionParam", "true");
        ctx->local_decls[exc] = param;
        g->add_child(clause, param);
        cpg::NodeId body = g->new_node(cpg::NodeKind::CompoundStatement, "", "{...}");
        g->add_child(clause, body);

        // final else: rethrow via the catchswitch token placeholder
        cpg::NodeId rethrow = g->new_node(cpg::NodeKind::ThrowStatement, "", "throw");
        std::string token = instr.result_name.empty() ? exc : instr.result_name;
        cpg::NodeId token_ref = make_ref(token, "eh");
        g->set_property(token_ref, "ehPlaceholder", "true");
        g->add_child(rethrow, token_ref);

        // build the chain inside-out: last handler's else is the rethrow
        cpg::NodeId else_stmt = rethrow;
        for (size_t i = handlers.size(); i-- > 0;) {
            cpg::NodeId match = catchpad_signature_call(handlers[i], exc);
            cpg::NodeId if_stmt = g->new_node(cpg::NodeKind::IfStatement, "",
                                              "if (" + g->node(match).code + ")");
            g->add_child(if_stmt, match);
            g->add_child(if_stmt, make_goto(handlers[i]));
            g->add_child(if_stmt, else_stmt);
            else_stmt = if_stmt;
        }
        g->add_child(body, else_stmt);
    }

    /// Match condition for one handler: a synthetic matcher call carrying the
    /// handler's catchpad signature arguments. A handler block without a
    /// catchpad yields a ProblemNode in the chain.
    cpg::NodeId catchpad_signature_call(const std::string& handler_label,
                                        const std::string& exc_name) {
        const ir::IrBasicBlock* block =
            ctx->ir_function ? ctx->ir_function->find_block(handler_label) : nullptr;
        const ir::IrInstruction* pad = nullptr;
        if (block)
            for (const auto& i : block->instructions)
                if (i.opcode == ir::Opcode::CatchPad) {
                    pad = &i;
                    break;
                }
        if (!pad)
            return make_problem("catchswitch handler %" + handler_label +
                                    " has no catchpad",
                                handler_label, 0);
        std::vector<cpg::NodeId> args = {make_ref(exc_name, "local", "ptr")};
        for (const auto& op : pad->operands) {
            if (op.type && op.type->kind == ir::Type::Kind::Token) continue;
            args.push_back(map_operand(op));
        }
        return make_call("llvm.eh.matches", args, "i1");
    }

    // ---- φ -------------------------------------------------------------

    /// No node is emitted at the φ's position; the record carries everything
    /// the elimination pass needs, including pre-built value expressions
    /// (detached until the pass attaches them).
    void record_phi(const ir::IrInstruction& instr) {
        PhiRecord record;
        record.target_name = instr.result_name.empty()
                                 ? "phi." + std::to_string(instr.line)
                                 : instr.result_name;
        record.target_type = cpg_type_name(instr.result_type);
        record.owning_function = ctx->function;
        record.owning_block = ctx->current_block;
        record.line = instr.line;
        for (size_t i = 0; i + 1 < instr.operands.size(); i += 2) {
            PhiRecord::Incoming in;
            in.value = instr.operands[i];
            in.pred_label = instr.operands[i + 1].text;
            in.value_expr = map_operand(in.value);
            g->mark_pending(in.value_expr);
            record.incoming.push_back(std::move(in));
        }
        if (record.incoming.empty())
            throw std::runtime_error("phi without incoming values");
        records->push_back(std::move(record));
    }
};

inline TranslationResult translate_module(const ir::IrModule& m) {
    return Translator(m).translate();
}

} // namespace cpgir::translate
