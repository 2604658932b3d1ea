#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cpgir/ir/types.hpp"

namespace cpgir::ir {

enum class Opcode {
    // terminators
    Ret,
    Br,
    Switch,
    IndirectBr,
    Invoke,
    CallBr,
    Resume,
    CatchSwitch,
    CatchRet,
    CleanupRet,
    Unreachable,
    // unary
    FNeg,
    // binary
    Add,
    FAdd,
    Sub,
    FSub,
    Mul,
    FMul,
    UDiv,
    SDiv,
    FDiv,
    URem,
    SRem,
    FRem,
    // bitwise
    Shl,
    LShr,
    AShr,
    And,
    Or,
    Xor,
    // vector
    ExtractElement,
    InsertElement,
    ShuffleVector,
    // aggregate
    ExtractValue,
    InsertValue,
    // memory
    Alloca,
    Load,
    Store,
    Fence,
    CmpXchg,
    AtomicRMW,
    GetElementPtr,
    // conversion
    Trunc,
    ZExt,
    SExt,
    FPTrunc,
    FPExt,
    FPToUI,
    FPToSI,
    UIToFP,
    SIToFP,
    PtrToInt,
    IntToPtr,
    BitCast,
    AddrSpaceCast,
    // other
    ICmp,
    FCmp,
    Phi,
    Select,
    Freeze,
    Call,
    VaArg,
    LandingPad,
    CatchPad,
    CleanupPad,
    // fallback for anything outside the supported grammar
    Opaque,
};

inline const char* opcode_name(Opcode op) {
    switch (op) {
    case Opcode::Ret: return "ret";
    case Opcode::Br: return "br";
    case Opcode::Switch: return "switch";
    case Opcode::IndirectBr: return "indirectbr";
    case Opcode::Invoke: return "invoke";
    case Opcode::CallBr: return "callbr";
    case Opcode::Resume: return "resume";
    case Opcode::CatchSwitch: return "catchswitch";
    case Opcode::CatchRet: return "catchret";
    case Opcode::CleanupRet: return "cleanupret";
    case Opcode::Unreachable: return "unreachable";
    case Opcode::FNeg: return "fneg";
    case Opcode::Add: return "add";
    case Opcode::FAdd: return "fadd";
    case Opcode::Sub: return "sub";
    case Opcode::FSub: return "fsub";
    case Opcode::Mul: return "mul";
    case Opcode::FMul: return "fmul";
    case Opcode::UDiv: return "udiv";
    case Opcode::SDiv: return "sdiv";
    case Opcode::FDiv: return "fdiv";
    case Opcode::URem: return "urem";
    case Opcode::SRem: return "srem";
    case Opcode::FRem: return "frem";
    case Opcode::Shl: return "shl";
    case Opcode::LShr: return "lshr";
    case Opcode::AShr: return "ashr";
    case Opcode::And: return "and";
    case Opcode::Or: return "or";
    case Opcode::Xor: return "xor";
    case Opcode::ExtractElement: return "extractelement";
    case Opcode::InsertElement: return "insertelement";
    case Opcode::ShuffleVector: return "shufflevector";
    case Opcode::ExtractValue: return "extractvalue";
    case Opcode::InsertValue: return "insertvalue";
    case Opcode::Alloca: return "alloca";
    case Opcode::Load: return "load";
    case Opcode::Store: return "store";
    case Opcode::Fence: return "fence";
    case Opcode::CmpXchg: return "cmpxchg";
    case Opcode::AtomicRMW: return "atomicrmw";
    case Opcode::GetElementPtr: return "getelementptr";
    case Opcode::Trunc: return "trunc";
    case Opcode::ZExt: return "zext";
    case Opcode::SExt: return "sext";
    case Opcode::FPTrunc: return "fptrunc";
    case Opcode::FPExt: return "fpext";
    case Opcode::FPToUI: return "fptoui";
    case Opcode::FPToSI: return "fptosi";
    case Opcode::UIToFP: return "uitofp";
    case Opcode::SIToFP: return "sitofp";
    case Opcode::PtrToInt: return "ptrtoint";
    case Opcode::IntToPtr: return "inttoptr";
    case Opcode::BitCast: return "bitcast";
    case Opcode::AddrSpaceCast: return "addrspacecast";
    case Opcode::ICmp: return "icmp";
    case Opcode::FCmp: return "fcmp";
    case Opcode::Phi: return "phi";
    case Opcode::Select: return "select";
    case Opcode::Freeze: return "freeze";
    case Opcode::Call: return "call";
    case Opcode::VaArg: return "va_arg";
    case Opcode::LandingPad: return "landingpad";
    case Opcode::CatchPad: return "catchpad";
    case Opcode::CleanupPad: return "cleanuppad";
    case Opcode::Opaque: return "opaque";
    }
    return "opaque";
}

inline std::optional<Opcode> opcode_from(std::string_view word) {
    static const std::unordered_map<std::string_view, Opcode> table = [] {
        std::unordered_map<std::string_view, Opcode> m;
        for (int i = 0; i <= static_cast<int>(Opcode::CleanupPad); ++i) {
            Opcode op = static_cast<Opcode>(i);
            m.emplace(opcode_name(op), op);
        }
        return m;
    }();
    auto it = table.find(word);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

struct IrInstruction;

struct IrOperand {
    enum class Kind {
        LocalRef,    // %name (sigil stripped)
        GlobalRef,   // @name (sigil stripped)
        LiteralInt,
        LiteralFloat,
        LiteralString, // c"..." payload, decoded
        LiteralNull,   // null / undef / poison / none / zeroinitializer / true / false
        BlockLabel,
        ConstExpr,          // nested constant expression, full instruction payload
        AggregateConstant,  // { ... } [ ... ] < ... > initializer
        Unsupported,        // could not be parsed; surfaced as a ProblemNode later
    };

    Kind kind = Kind::Unsupported;
    std::string text;   // ref/label name, literal spelling, or raw unsupported text
    long long int_value = 0;
    double float_value = 0.0;
    std::string bytes;  // decoded c"..." payload (NUL retained)
    std::shared_ptr<IrInstruction> expr; // ConstExpr payload
    std::vector<IrOperand> elements;     // AggregateConstant members
    TypeRef type;

    static IrOperand local(std::string name, TypeRef t) {
        IrOperand o;
        o.kind = Kind::LocalRef;
        o.text = std::move(name);
        o.type = std::move(t);
        return o;
    }
    static IrOperand global(std::string name, TypeRef t) {
        IrOperand o;
        o.kind = Kind::GlobalRef;
        o.text = std::move(name);
        o.type = std::move(t);
        return o;
    }
    static IrOperand literal_int(long long v, TypeRef t) {
        IrOperand o;
        o.kind = Kind::LiteralInt;
        o.int_value = v;
        o.text = std::to_string(v);
        o.type = std::move(t);
        return o;
    }
    static IrOperand label(std::string name) {
        IrOperand o;
        o.kind = Kind::BlockLabel;
        o.text = std::move(name);
        o.type = label_type();
        return o;
    }
};

struct IrInstruction {
    Opcode opcode = Opcode::Opaque;
    std::string result_name;           // without the % sigil; empty if no result
    std::vector<IrOperand> operands;
    std::vector<TypeRef> type_args;    // role depends on opcode (GEP source type,
                                       // load type, cast target, alloca type, ...)
    std::vector<std::string> flags;    // nuw/nsw/inbounds/volatile/atomic orderings...
    std::string predicate;             // icmp/fcmp predicate, atomicrmw sub-opcode
    std::string callee;                // direct call target (no @); empty if indirect
    std::vector<long long> indices;    // extractvalue/insertvalue index path
    TypeRef result_type;
    std::string raw_text;
    int line = 0;
    int column = 0;

    bool has_flag(std::string_view f) const {
        for (const auto& x : flags)
            if (x == f) return true;
        return false;
    }
    bool is_terminator() const {
        switch (opcode) {
        case Opcode::Ret:
        case Opcode::Br:
        case Opcode::Switch:
        case Opcode::IndirectBr:
        case Opcode::Invoke:
        case Opcode::CallBr:
        case Opcode::Resume:
        case Opcode::CatchSwitch:
        case Opcode::CatchRet:
        case Opcode::CleanupRet:
        case Opcode::Unreachable: return true;
        default: return false;
        }
    }
};

struct IrBasicBlock {
    std::string label; // without a sigil
    std::vector<IrInstruction> instructions;
};

struct IrFunction {
    struct Param {
        std::string name;
        TypeRef type;
    };

    std::string name;
    TypeRef return_type;
    std::vector<Param> params;
    std::vector<IrBasicBlock> blocks;
    bool is_declaration = false;
    bool varargs = false;

    const IrBasicBlock* find_block(std::string_view label) const {
        for (const auto& b : blocks)
            if (b.label == label) return &b;
        return nullptr;
    }
    IrBasicBlock* find_block(std::string_view label) {
        for (auto& b : blocks)
            if (b.label == label) return &b;
        return nullptr;
    }
};

struct IrGlobal {
    std::string name;
    TypeRef type;              // value type (not the implicit pointer)
    std::optional<IrOperand> initializer;
    bool is_constant = false;
};

struct IrModule {
    std::string source_name;
    std::optional<std::string> target_triple;
    std::vector<std::pair<std::string, TypeRef>> type_defs;
    std::vector<IrGlobal> globals;
    std::vector<IrFunction> functions;

    TypeRef find_type(std::string_view name) const {
        for (const auto& [n, t] : type_defs)
            if (n == name) return t;
        return nullptr;
    }
    const IrFunction* find_function(std::string_view name) const {
        for (const auto& f : functions)
            if (f.name == name) return &f;
        return nullptr;
    }
    const IrGlobal* find_global(std::string_view name) const {
        for (const auto& g : globals)
            if (g.name == name) return &g;
        return nullptr;
    }
};

} // namespace cpgir::ir
