#pragma once

#include <algorithm>
#include <charconv>
#include <cstring>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

#include "cpgir/ir/ast.hpp"
#include "cpgir/ir/lexer.hpp"
#include "cpgir/support.hpp"

namespace cpgir::ir {

struct ParseResult {
    IrModule module;
    DiagnosticList diagnostics;
    bool fatal = false;
    std::string fatal_message;
};

struct ParseError {
    std::string message;
    int line = 0;
};

namespace detail {

inline const std::unordered_set<std::string_view>& linkage_words() {
    static const std::unordered_set<std::string_view> s = {
        "private", "internal", "available_externally", "linkonce", "weak", "common",
        "appending", "extern_weak", "linkonce_odr", "weak_odr", "external", "dso_local",
        "dso_preemptable", "hidden", "protected", "default", "dllimport", "dllexport",
        "thread_local", "localdynamic", "initialexec", "localexec", "unnamed_addr",
        "local_unnamed_addr", "externally_initialized",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& param_attr_words() {
    static const std::unordered_set<std::string_view> s = {
        "zeroext", "signext", "inreg", "byval", "byref", "preallocated", "inalloca", "sret",
        "elementtype", "align", "noalias", "nocapture", "nofree", "nest", "returned", "nonnull",
        "dereferenceable", "dereferenceable_or_null", "swiftself", "swiftasync", "swifterror",
        "immarg", "noundef", "nofpclass", "alignstack", "allocalign", "allocptr", "readnone",
        "readonly", "writeonly", "writable", "initializes", "dead_on_unwind", "range", "captures",
        "dead_on_return",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& fast_math_words() {
    static const std::unordered_set<std::string_view> s = {
        "fast", "nnan", "ninf", "nsz", "arcp", "contract", "afn", "reassoc",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& ordering_words() {
    static const std::unordered_set<std::string_view> s = {
        "unordered", "monotonic", "acquire", "release", "acq_rel", "seq_cst",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& cconv_words() {
    static const std::unordered_set<std::string_view> s = {
        "ccc", "fastcc", "coldcc", "webkit_jscc", "anyregcc", "preserve_mostcc",
        "preserve_allcc", "cxx_fast_tlscc", "swiftcc", "swifttailcc", "tailcc", "cfguard_checkcc",
        "x86_stdcallcc", "x86_fastcallcc", "x86_thiscallcc", "x86_vectorcallcc", "arm_apcscc",
        "arm_aapcscc", "arm_aapcs_vfpcc", "aarch64_vector_pcs", "win64cc", "x86_64_sysvcc",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& icmp_predicates() {
    static const std::unordered_set<std::string_view> s = {
        "eq", "ne", "ugt", "uge", "ult", "ule", "sgt", "sge", "slt", "sle",
    };
    return s;
}

inline const std::unordered_set<std::string_view>& fcmp_predicates() {
    static const std::unordered_set<std::string_view> s = {
        "false", "oeq", "ogt", "oge", "olt", "ole", "one", "ord",
        "ueq", "ugt", "uge", "ult", "ule", "une", "uno", "true",
    };
    return s;
}

// constant expressions admissible in operand position
inline bool const_expr_opcode(Opcode op) {
    switch (op) {
    case Opcode::GetElementPtr:
    case Opcode::Trunc:
    case Opcode::ZExt:
    case Opcode::SExt:
    case Opcode::FPTrunc:
    case Opcode::FPExt:
    case Opcode::FPToUI:
    case Opcode::FPToSI:
    case Opcode::UIToFP:
    case Opcode::SIToFP:
    case Opcode::PtrToInt:
    case Opcode::IntToPtr:
    case Opcode::BitCast:
    case Opcode::AddrSpaceCast:
    case Opcode::ICmp:
    case Opcode::FCmp:
    case Opcode::Select:
    case Opcode::ExtractElement:
    case Opcode::InsertElement:
    case Opcode::ShuffleVector:
    case Opcode::ExtractValue:
    case Opcode::InsertValue:
    case Opcode::Add:
    case Opcode::FAdd:
    case Opcode::Sub:
    case Opcode::FSub:
    case Opcode::Mul:
    case Opcode::FMul:
    case Opcode::UDiv:
    case Opcode::SDiv:
    case Opcode::FDiv:
    case Opcode::URem:
    case Opcode::SRem:
    case Opcode::FRem:
    case Opcode::Shl:
    case Opcode::LShr:
    case Opcode::AShr:
    case Opcode::And:
    case Opcode::Or:
    case Opcode::Xor:
    case Opcode::FNeg: return true;
    default: return false;
    }
}

inline std::string decode_c_string(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size()) {
            if (raw[i + 1] == '\\') {
                out += '\\';
                ++i;
                continue;
            }
            if (i + 2 < raw.size() && std::isxdigit(static_cast<unsigned char>(raw[i + 1])) &&
                std::isxdigit(static_cast<unsigned char>(raw[i + 2]))) {
                auto hex = [](char c) -> int {
                    if (c >= '0' && c <= '9') return c - '0';
                    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
                    return c - 'A' + 10;
                };
                out += static_cast<char>(hex(raw[i + 1]) * 16 + hex(raw[i + 2]));
                i += 2;
                continue;
            }
        }
        out += raw[i];
    }
    return out;
}

} // namespace detail

/// Recursive-descent parser for the supported textual LLVM subset. Anything
/// outside the grammar degrades to an opaque instruction record carrying the
/// verbatim source slice; only structurally unrecoverable input is fatal.
class Parser {
public:
    static constexpr int kMaxConstExprDepth = 8;
    static constexpr int kMaxTypeDepth = 64;

    static ParseResult parse_module(std::string_view source,
                                    std::string source_name = "<memory>") {
        Parser p(source);
        ParseResult result;
        result.module.source_name = std::move(source_name);
        p.run(result);
        return result;
    }

    /// Parses one instruction in isolation (test and tooling hook).
    /// Throws ParseError when the line is not in the supported grammar.
    static IrInstruction parse_single_instruction(std::string_view text) {
        Parser p(text);
        unsigned counter = 0;
        IrInstruction instr = p.parse_instruction(counter);
        if (instr.opcode == Opcode::Opaque)
            throw ParseError{"unsupported instruction: " + instr.raw_text, instr.line};
        return instr;
    }

private:
    std::string_view src;
    std::vector<Token> toks;
    size_t pos = 0;
    DiagnosticList* diags = nullptr;

    explicit Parser(std::string_view source) : src(source) { toks = Lexer(source).tokenize(); }

    // ---- token helpers -------------------------------------------------

    const Token& cur() const { return toks[std::min(pos, toks.size() - 1)]; }
    const Token& peek(size_t n = 1) const { return toks[std::min(pos + n, toks.size() - 1)]; }
    bool at_end() const { return cur().kind == Token::Kind::End; }
    void advance() {
        if (pos + 1 < toks.size()) ++pos;
    }

    bool accept_punct(char c) {
        if (cur().is_punct(c)) {
            advance();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c))
            throw ParseError{std::string("expected '") + c + "', found '" + token_text(cur()) +
                                 "'",
                             cur().line};
    }

    bool accept_word(std::string_view w) {
        if (cur().is_word(w)) {
            advance();
            return true;
        }
        return false;
    }

    void expect_word(std::string_view w) {
        if (!accept_word(w))
            throw ParseError{"expected '" + std::string(w) + "', found '" + token_text(cur()) +
                                 "'",
                             cur().line};
    }

    static std::string token_text(const Token& t) {
        if (t.kind == Token::Kind::Punct) return std::string(1, t.punct);
        if (t.kind == Token::Kind::End) return "<eof>";
        return t.text;
    }

    void diag(Diagnostic::Severity sev, int line, std::string msg) {
        if (diags) diags->push_back(make_diag(sev, line, std::move(msg)));
    }

    void skip_to_next_line() {
        int line = cur().line;
        while (!at_end() && cur().line == line) advance();
    }

    std::string slice(size_t begin_tok, size_t end_tok) const {
        if (begin_tok >= toks.size() || begin_tok > end_tok) return {};
        size_t b = toks[begin_tok].begin;
        size_t e = toks[std::min(end_tok, toks.size() - 1)].end;
        if (e < b) return {};
        return std::string(src.substr(b, e - b));
    }

    long long to_int(const Token& t) const {
        long long value = 0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        auto [p, ec] = std::from_chars(b, e, value);
        if (ec == std::errc::result_out_of_range)
            value = t.text.size() && t.text[0] == '-' ? INT64_MIN : INT64_MAX;
        return value;
    }

    // ---- module level --------------------------------------------------

    void run(ParseResult& result) {
        diags = &result.diagnostics;
        IrModule& m = result.module;
        while (!at_end()) {
            try {
                parse_top_level(m);
            } catch (const ParseError& e) {
                if (result.fatal) return;
                diag(Diagnostic::Severity::Error, e.line, e.message);
                skip_to_next_line();
            } catch (const FatalError& e) {
                result.fatal = true;
                result.fatal_message = e.message;
                diag(Diagnostic::Severity::Error, e.line, e.message);
                return;
            }
        }
        // module invariants: unique type and function names
        check_unique(m, result);
    }

    struct FatalError {
        std::string message;
        int line = 0;
    };

    void check_unique(IrModule& m, ParseResult& result) {
        std::set<std::string> seen;
        for (const auto& [name, t] : m.type_defs) {
            (void)t;
            if (!seen.insert(name).second)
                diag(Diagnostic::Severity::Warning, 0, "duplicate type definition %" + name);
        }
        seen.clear();
        for (const auto& f : m.functions) {
            if (!seen.insert(f.name).second)
                diag(Diagnostic::Severity::Warning, 0, "duplicate function @" + f.name);
        }
        (void)result;
    }

    void parse_top_level(IrModule& m) {
        const Token& t = cur();
        switch (t.kind) {
        case Token::Kind::Word:
            if (t.text == "define") {
                m.functions.push_back(parse_function(true));
                return;
            }
            if (t.text == "declare") {
                m.functions.push_back(parse_function(false));
                return;
            }
            if (t.text == "target") {
                advance();
                bool triple = accept_word("triple");
                if (!triple) accept_word("datalayout");
                expect_punct('=');
                if (cur().kind == Token::Kind::StringLit) {
                    if (triple) m.target_triple = cur().text;
                    advance();
                } else {
                    skip_to_next_line();
                }
                return;
            }
            if (t.text == "source_filename") {
                advance();
                expect_punct('=');
                if (cur().kind == Token::Kind::StringLit) {
                    m.source_name = cur().text;
                    advance();
                } else {
                    skip_to_next_line();
                }
                return;
            }
            if (t.text == "attributes") {
                advance(); // attributes #N = { ... }
                if (cur().kind == Token::Kind::AttrRef) advance();
                expect_punct('=');
                skip_balanced('{', '}');
                return;
            }
            if (t.text == "module") {
                skip_to_next_line(); // module asm "..."
                return;
            }
            if (t.text == "uselistorder" || t.text == "uselistorder_bb") {
                skip_to_next_line();
                return;
            }
            if (t.text[0] == '$') {
                skip_to_next_line(); // comdat definition
                return;
            }
            diag(Diagnostic::Severity::Warning, t.line,
                 "unrecognized top-level construct '" + t.text + "'");
            skip_to_next_line();
            return;
        case Token::Kind::LocalIdent: {
            // %name = type { ... }
            std::string name = t.text;
            advance();
            expect_punct('=');
            if (accept_word("type")) {
                TypeRef ty;
                if (accept_word("opaque")) {
                    ty = opaque_type("opaque");
                } else {
                    ty = parse_type();
                }
                // the definition names its struct body, so later lookups see
                // a named struct rather than an anonymous structural copy
                if (ty && ty->kind == Type::Kind::Struct && ty->name.empty()) {
                    auto named = std::make_shared<Type>(*ty);
                    named->name = name;
                    ty = named;
                }
                m.type_defs.emplace_back(std::move(name), std::move(ty));
            } else {
                diag(Diagnostic::Severity::Warning, t.line, "unrecognized local definition");
                skip_to_next_line();
            }
            return;
        }
        case Token::Kind::GlobalIdent: {
            m.globals.push_back(parse_global());
            return;
        }
        case Token::Kind::MetadataRef:
            skip_metadata_def();
            return;
        default:
            diag(Diagnostic::Severity::Warning, t.line,
                 "stray token '" + token_text(t) + "' at module scope");
            skip_to_next_line();
            return;
        }
    }

    void skip_metadata_def() {
        // !name = !{...} / !0 = distinct !DISubprogram(...)
        int line = cur().line;
        while (!at_end() && cur().line == line) {
            if (cur().is_punct('{')) {
                skip_balanced('{', '}');
                continue;
            }
            if (cur().is_punct('(')) {
                skip_balanced('(', ')');
                continue;
            }
            advance();
        }
    }

    void skip_balanced(char open, char close) {
        // positions before the opening bracket are tolerated
        while (!at_end() && !cur().is_punct(open)) {
            if (cur().is_punct('\n')) break;
            advance();
            if (cur().kind == Token::Kind::End) return;
            if (cur().is_punct(open)) break;
            // bail out if we ran onto the next line without an opening bracket
            break;
        }
        if (!cur().is_punct(open)) return;
        int depth = 0;
        int start_line = cur().line;
        while (!at_end()) {
            if (cur().is_punct(open)) ++depth;
            if (cur().is_punct(close)) {
                --depth;
                if (depth == 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
        throw FatalError{std::string("unbalanced '") + open + "' starting at line " +
                             std::to_string(start_line),
                         start_line};
    }

    // ---- attribute / qualifier skipping --------------------------------

    void skip_value_attrs() {
        // parameter/return attributes between a type and its value
        while (cur().kind == Token::Kind::Word) {
            std::string_view w = cur().text;
            if (detail::param_attr_words().count(w)) {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                else if (w == "align" && cur().kind == Token::Kind::IntLit) advance();
                continue;
            }
            break;
        }
    }

    void skip_function_qualifiers() {
        // linkage, visibility, cconv, return attrs appearing before the return type
        while (true) {
            if (cur().kind == Token::Kind::Word) {
                std::string_view w = cur().text;
                if (detail::linkage_words().count(w) || detail::cconv_words().count(w) ||
                    detail::param_attr_words().count(w)) {
                    advance();
                    if (cur().is_punct('(')) skip_balanced('(', ')');
                    continue;
                }
                if (w == "cc") { // numbered calling convention: cc 10
                    advance();
                    if (cur().kind == Token::Kind::IntLit) advance();
                    continue;
                }
                if (w == "addrspace" && peek().is_punct('(')) {
                    advance();
                    skip_balanced('(', ')');
                    continue;
                }
            }
            if (cur().kind == Token::Kind::AttrRef) {
                advance();
                continue;
            }
            break;
        }
    }

    // trailing ", align N", ", !dbg !7", attr refs... after an instruction
    void skip_instruction_suffix() {
        while (true) {
            if (cur().kind == Token::Kind::AttrRef) {
                advance();
                continue;
            }
            if (cur().is_punct(',') &&
                (peek().kind == Token::Kind::MetadataRef ||
                 (peek().kind == Token::Kind::Word && peek().text == "align"))) {
                advance();
                if (cur().kind == Token::Kind::MetadataRef) {
                    advance();
                    if (cur().kind == Token::Kind::MetadataRef) advance();
                    else if (cur().is_punct('!')) {
                        advance();
                        if (cur().is_punct('{')) skip_balanced('{', '}');
                    }
                } else { // align
                    advance();
                    if (cur().kind == Token::Kind::IntLit) advance();
                }
                continue;
            }
            break;
        }
    }

    // ---- types ---------------------------------------------------------

    TypeRef parse_type(int depth = 0, bool allow_function = true) {
        if (depth > kMaxTypeDepth) throw ParseError{"type nesting too deep", cur().line};
        TypeRef base = parse_base_type(depth);
        return parse_type_suffix(std::move(base), depth, allow_function);
    }

    TypeRef parse_base_type(int depth) {
        const Token& t = cur();
        if (t.kind == Token::Kind::Word) {
            std::string_view w = t.text;
            if (w.size() >= 2 && w[0] == 'i' &&
                std::all_of(w.begin() + 1, w.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                unsigned bits = 0;
                std::from_chars(w.data() + 1, w.data() + w.size(), bits);
                advance();
                return int_type(bits);
            }
            if (w == "void") {
                advance();
                return void_type();
            }
            if (w == "half" || w == "bfloat" || w == "float" || w == "double" ||
                w == "x86_fp80" || w == "fp128" || w == "ppc_fp128") {
                std::string flavor(w);
                advance();
                return float_type(std::move(flavor));
            }
            if (w == "ptr") {
                advance();
                if (cur().is_word("addrspace") && peek().is_punct('(')) {
                    advance();
                    skip_balanced('(', ')');
                }
                return opaque_pointer();
            }
            if (w == "label") {
                advance();
                return label_type();
            }
            if (w == "token") {
                advance();
                return token_type();
            }
            if (w == "metadata") {
                advance();
                return metadata_type();
            }
            if (w == "opaque") {
                advance();
                return opaque_type("opaque");
            }
            if (w == "x86_mmx" || w == "x86_amx") {
                std::string raw(w);
                advance();
                return opaque_type(std::move(raw));
            }
            throw ParseError{"expected type, found '" + std::string(w) + "'", t.line};
        }
        if (t.kind == Token::Kind::LocalIdent) {
            std::string name = t.text;
            advance();
            return named_struct(std::move(name));
        }
        if (t.is_punct('[')) {
            advance();
            if (cur().kind != Token::Kind::IntLit)
                throw ParseError{"expected array length", cur().line};
            uint64_t len = static_cast<uint64_t>(to_int(cur()));
            advance();
            expect_word("x");
            TypeRef elem = parse_type(depth + 1);
            expect_punct(']');
            return array_of(len, std::move(elem));
        }
        if (t.is_punct('<')) {
            advance();
            if (cur().is_punct('{')) { // packed struct <{ ... }>
                TypeRef s = parse_struct_body(depth, true);
                expect_punct('>');
                return s;
            }
            bool scalable = accept_word("vscale");
            if (scalable) expect_word("x");
            if (cur().kind != Token::Kind::IntLit)
                throw ParseError{"expected vector length", cur().line};
            uint64_t len = static_cast<uint64_t>(to_int(cur()));
            advance();
            expect_word("x");
            TypeRef elem = parse_type(depth + 1);
            expect_punct('>');
            return vector_of(len, std::move(elem));
        }
        if (t.is_punct('{')) return parse_struct_body(depth, false);
        throw ParseError{"expected type, found '" + token_text(t) + "'", t.line};
    }

    TypeRef parse_struct_body(int depth, bool packed) {
        expect_punct('{');
        std::vector<TypeRef> fields;
        if (!cur().is_punct('}')) {
            fields.push_back(parse_type(depth + 1));
            while (accept_punct(',')) fields.push_back(parse_type(depth + 1));
        }
        expect_punct('}');
        return struct_of(std::move(fields), packed);
    }

    TypeRef parse_type_suffix(TypeRef base, int depth, bool allow_function) {
        while (true) {
            if (cur().is_punct('*')) {
                advance();
                base = pointer_to(std::move(base));
                continue;
            }
            if (cur().is_word("addrspace") && peek().is_punct('(')) {
                advance();
                skip_balanced('(', ')');
                if (cur().is_punct('*')) {
                    advance();
                    base = pointer_to(std::move(base));
                    continue;
                }
                continue;
            }
            if (allow_function && cur().is_punct('(')) {
                // trial parse of a function-type suffix; backtracks when the
                // parenthesis actually opens a call argument list
                size_t save = pos;
                try {
                    advance();
                    std::vector<TypeRef> params;
                    bool varargs = false;
                    if (!cur().is_punct(')')) {
                        while (true) {
                            if (cur().is_word("...")) {
                                advance();
                                varargs = true;
                                break;
                            }
                            params.push_back(parse_type(depth + 1));
                            if (!accept_punct(',')) break;
                        }
                    }
                    expect_punct(')');
                    if (!(cur().is_punct('*') || cur().kind == Token::Kind::GlobalIdent ||
                          cur().kind == Token::Kind::LocalIdent))
                        throw ParseError{"not a function type", cur().line};
                    base = function_type(std::move(base), std::move(params), varargs);
                    continue;
                } catch (const ParseError&) {
                    pos = save;
                    return base;
                }
            }
            return base;
        }
    }

    // ---- values / operands ---------------------------------------------

    IrOperand parse_typed_operand(int depth) {
        TypeRef ty = parse_type(depth);
        skip_value_attrs();
        return parse_value(std::move(ty), depth);
    }

    IrOperand parse_value(TypeRef ty, int depth) {
        const Token& t = cur();
        IrOperand op;
        op.type = ty;

        if (ty && ty->kind == Type::Kind::Metadata) return parse_metadata_value(std::move(ty));

        switch (t.kind) {
        case Token::Kind::LocalIdent:
            op.kind = IrOperand::Kind::LocalRef;
            op.text = t.text;
            advance();
            return op;
        case Token::Kind::GlobalIdent:
            op.kind = IrOperand::Kind::GlobalRef;
            op.text = t.text;
            advance();
            return op;
        case Token::Kind::IntLit:
            op.kind = IrOperand::Kind::LiteralInt;
            op.int_value = to_int(t);
            op.text = t.text;
            advance();
            return op;
        case Token::Kind::FloatLit:
            op.kind = IrOperand::Kind::LiteralFloat;
            op.float_value = std::strtod(t.text.c_str(), nullptr);
            op.text = t.text;
            advance();
            return op;
        case Token::Kind::HexLit: {
            op.kind = IrOperand::Kind::LiteralFloat;
            op.text = t.text;
            op.float_value = decode_hex_float(t.text);
            advance();
            return op;
        }
        case Token::Kind::CStringLit:
            op.kind = IrOperand::Kind::LiteralString;
            op.bytes = detail::decode_c_string(t.text);
            op.text = t.text;
            advance();
            return op;
        case Token::Kind::Word: {
            std::string_view w = t.text;
            if (w == "true" || w == "false") {
                op.kind = IrOperand::Kind::LiteralInt;
                op.int_value = w == "true" ? 1 : 0;
                op.text = w;
                advance();
                return op;
            }
            if (w == "null" || w == "undef" || w == "poison" || w == "none" ||
                w == "zeroinitializer") {
                op.kind = IrOperand::Kind::LiteralNull;
                op.text = w;
                advance();
                return op;
            }
            if (w == "blockaddress" || w == "dso_local_equivalent" || w == "no_cfi") {
                op.kind = IrOperand::Kind::Unsupported;
                size_t start = pos;
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                op.text = slice(start, pos - 1);
                return op;
            }
            if (w == "asm") {
                op.kind = IrOperand::Kind::Unsupported;
                size_t start = pos;
                advance();
                while (cur().kind == Token::Kind::Word) advance(); // sideeffect etc.
                while (cur().kind == Token::Kind::StringLit) {
                    advance();
                    if (!accept_punct(',')) break;
                }
                op.text = slice(start, pos - 1);
                return op;
            }
            if (auto oc = opcode_from(w); oc && detail::const_expr_opcode(*oc))
                return parse_const_expr(std::move(ty), depth);
            break;
        }
        case Token::Kind::Punct:
            if (t.punct == '{' || t.punct == '[' || t.punct == '<')
                return parse_aggregate_constant(std::move(ty), depth);
            break;
        default: break;
        }
        throw ParseError{"expected value, found '" + token_text(t) + "'", t.line};
    }

    IrOperand parse_metadata_value(TypeRef ty) {
        IrOperand op;
        op.kind = IrOperand::Kind::LiteralNull;
        op.text = "metadata";
        op.type = std::move(ty);
        if (cur().kind == Token::Kind::MetadataRef) {
            advance();
            if (cur().is_punct('(')) skip_balanced('(', ')');
            return op;
        }
        if (cur().is_punct('!')) {
            advance();
            if (cur().is_punct('{')) skip_balanced('{', '}');
            return op;
        }
        // metadata wrapping a plain value: metadata i32* %x
        TypeRef inner = parse_type();
        skip_value_attrs();
        return parse_value(std::move(inner), 0);
    }

    double decode_hex_float(const std::string& text) {
        // plain 0x... carries IEEE-754 double bits; 0xK/L/M/H/R payloads are
        // wider formats we keep textual only
        if (text.size() > 2 && std::isxdigit(static_cast<unsigned char>(text[2]))) {
            uint64_t bits = 0;
            std::from_chars(text.data() + 2, text.data() + text.size(), bits, 16);
            double d;
            std::memcpy(&d, &bits, sizeof d);
            return d;
        }
        return 0.0;
    }

    IrOperand parse_aggregate_constant(TypeRef ty, int depth) {
        if (depth > kMaxConstExprDepth)
            throw ParseError{"aggregate constant nesting too deep", cur().line};
        IrOperand op;
        op.kind = IrOperand::Kind::AggregateConstant;
        op.type = std::move(ty);
        size_t start = pos;
        char open = cur().punct;
        char close = open == '{' ? '}' : open == '[' ? ']' : '>';
        advance();
        if (open == '<' && cur().is_punct('{')) { // packed struct constant <{ ... }>
            advance();
            open = '{';
            close = '}';
            if (!cur().is_punct('}')) {
                op.elements.push_back(parse_typed_operand(depth + 1));
                while (accept_punct(',')) op.elements.push_back(parse_typed_operand(depth + 1));
            }
            expect_punct('}');
            expect_punct('>');
            op.text = slice(start, pos - 1);
            return op;
        }
        if (!cur().is_punct(close)) {
            op.elements.push_back(parse_typed_operand(depth + 1));
            while (accept_punct(',')) op.elements.push_back(parse_typed_operand(depth + 1));
        }
        expect_punct(close);
        op.text = slice(start, pos - 1);
        return op;
    }

    IrOperand parse_const_expr(TypeRef ty, int depth) {
        size_t start = pos;
        if (depth + 1 > kMaxConstExprDepth) {
            diag(Diagnostic::Severity::Warning, cur().line,
                 "constant expression nested deeper than " + std::to_string(kMaxConstExprDepth) +
                     " levels; kept opaque");
            IrOperand op;
            op.kind = IrOperand::Kind::Unsupported;
            advance(); // opcode word
            while (cur().kind == Token::Kind::Word) advance();
            if (cur().is_punct('(')) skip_balanced('(', ')');
            op.text = slice(start, pos - 1);
            op.type = std::move(ty);
            return op;
        }

        auto instr = std::make_shared<IrInstruction>();
        instr->line = cur().line;
        Opcode oc = *opcode_from(cur().text);
        instr->opcode = oc;
        advance();

        // flag words between opcode and '('
        while (cur().kind == Token::Kind::Word && !cur().is_punct('(')) {
            std::string_view w = cur().text;
            if (w == "inbounds" || w == "nuw" || w == "nsw" || w == "exact" ||
                detail::fast_math_words().count(w)) {
                instr->flags.emplace_back(w);
                advance();
                continue;
            }
            if ((oc == Opcode::ICmp && detail::icmp_predicates().count(w)) ||
                (oc == Opcode::FCmp && detail::fcmp_predicates().count(w))) {
                instr->predicate = std::string(w);
                advance();
                continue;
            }
            break;
        }

        expect_punct('(');
        switch (oc) {
        case Opcode::GetElementPtr: {
            instr->type_args.push_back(parse_type(depth + 1));
            expect_punct(',');
            instr->operands.push_back(parse_typed_operand(depth + 1));
            while (accept_punct(',')) {
                accept_word("inrange");
                instr->operands.push_back(parse_typed_operand(depth + 1));
            }
            break;
        }
        case Opcode::Trunc:
        case Opcode::ZExt:
        case Opcode::SExt:
        case Opcode::FPTrunc:
        case Opcode::FPExt:
        case Opcode::FPToUI:
        case Opcode::FPToSI:
        case Opcode::UIToFP:
        case Opcode::SIToFP:
        case Opcode::PtrToInt:
        case Opcode::IntToPtr:
        case Opcode::BitCast:
        case Opcode::AddrSpaceCast: {
            instr->operands.push_back(parse_typed_operand(depth + 1));
            expect_word("to");
            instr->type_args.push_back(parse_type(depth + 1));
            break;
        }
        case Opcode::ExtractValue: {
            instr->operands.push_back(parse_typed_operand(depth + 1));
            while (accept_punct(',')) {
                if (cur().kind != Token::Kind::IntLit) break;
                instr->indices.push_back(to_int(cur()));
                advance();
            }
            break;
        }
        case Opcode::InsertValue: {
            instr->operands.push_back(parse_typed_operand(depth + 1));
            expect_punct(',');
            instr->operands.push_back(parse_typed_operand(depth + 1));
            while (accept_punct(',')) {
                if (cur().kind != Token::Kind::IntLit) break;
                instr->indices.push_back(to_int(cur()));
                advance();
            }
            break;
        }
        default: { // binary / compare / select / vector ops: comma-separated operands
            if (!cur().is_punct(')')) {
                instr->operands.push_back(parse_typed_operand(depth + 1));
                while (accept_punct(',')) instr->operands.push_back(parse_typed_operand(depth + 1));
            }
            break;
        }
        }
        expect_punct(')');

        instr->raw_text = slice(start, pos - 1);
        IrOperand op;
        op.kind = IrOperand::Kind::ConstExpr;
        op.expr = std::move(instr);
        op.type = std::move(ty);
        op.text = op.expr->raw_text;
        return op;
    }

    // ---- globals -------------------------------------------------------

    IrGlobal parse_global() {
        IrGlobal g;
        g.name = cur().text;
        int line = cur().line;
        advance();
        expect_punct('=');
        bool saw_kind = false;
        while (cur().kind == Token::Kind::Word) {
            std::string_view w = cur().text;
            if (w == "global") {
                advance();
                saw_kind = true;
                break;
            }
            if (w == "constant") {
                g.is_constant = true;
                advance();
                saw_kind = true;
                break;
            }
            if (w == "alias" || w == "ifunc") {
                // alias/ifunc definitions are not modeled; keep the line only
                skip_to_next_line();
                g.type = opaque_pointer();
                return g;
            }
            if (detail::linkage_words().count(w)) {
                advance();
                continue;
            }
            if (w == "addrspace" || w == "thread_local" || w == "align" ||
                w == "section" || w == "comdat" || w == "partition" || w == "sanitize_address_dyninit" ||
                w == "no_sanitize_address" || w == "code_model") {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                else if (cur().kind == Token::Kind::IntLit ||
                         cur().kind == Token::Kind::StringLit)
                    advance();
                continue;
            }
            break;
        }
        if (!saw_kind)
            throw ParseError{"expected 'global' or 'constant' in definition of @" + g.name, line};
        g.type = parse_type();
        // external globals have no initializer; otherwise a constant follows
        if (!at_end() && !cur().is_punct(',') && cur().line == line &&
            cur().kind != Token::Kind::End) {
            if (cur().kind == Token::Kind::LocalIdent || cur().kind == Token::Kind::GlobalIdent ||
                cur().kind == Token::Kind::IntLit || cur().kind == Token::Kind::FloatLit ||
                cur().kind == Token::Kind::HexLit || cur().kind == Token::Kind::CStringLit ||
                cur().kind == Token::Kind::Word || cur().is_punct('{') || cur().is_punct('[') ||
                cur().is_punct('<')) {
                g.initializer = parse_value(g.type, 0);
            }
        }
        // trailing section/comdat/align qualifiers
        while (accept_punct(',')) {
            if (cur().kind == Token::Kind::Word) {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                else if (cur().kind == Token::Kind::IntLit ||
                         cur().kind == Token::Kind::StringLit)
                    advance();
            } else if (cur().kind == Token::Kind::MetadataRef) {
                advance();
                if (cur().kind == Token::Kind::MetadataRef) advance();
            } else {
                break;
            }
        }
        skip_instruction_suffix();
        return g;
    }

    // ---- functions -----------------------------------------------------

    IrFunction parse_function(bool is_definition) {
        advance(); // define / declare
        IrFunction fn;
        fn.is_declaration = !is_definition;
        skip_function_qualifiers();
        fn.return_type = parse_type(0, /*allow_function=*/false);
        skip_function_qualifiers();
        if (cur().kind != Token::Kind::GlobalIdent)
            throw ParseError{"expected function name, found '" + token_text(cur()) + "'",
                             cur().line};
        fn.name = cur().text;
        advance();

        unsigned unnamed_counter = 0;
        expect_punct('(');
        if (!cur().is_punct(')')) {
            while (true) {
                if (cur().is_word("...")) {
                    advance();
                    fn.varargs = true;
                    break;
                }
                IrFunction::Param p;
                p.type = parse_type();
                skip_value_attrs();
                if (cur().kind == Token::Kind::LocalIdent) {
                    p.name = cur().text;
                    bump_counter(unnamed_counter, p.name);
                    advance();
                } else {
                    p.name = std::to_string(unnamed_counter++);
                }
                fn.params.push_back(std::move(p));
                if (!accept_punct(',')) break;
            }
        }
        expect_punct(')');
        skip_function_qualifiers();
        // personality fn, section, gc, prologue...
        while (cur().kind == Token::Kind::Word && !cur().is_punct('{')) {
            std::string_view w = cur().text;
            if (w == "personality" || w == "prefix" || w == "prologue") {
                advance();
                parse_typed_operand(0);
                continue;
            }
            if (w == "section" || w == "gc" || w == "partition") {
                advance();
                if (cur().kind == Token::Kind::StringLit) advance();
                continue;
            }
            if (w == "align") {
                advance();
                if (cur().kind == Token::Kind::IntLit) advance();
                continue;
            }
            if (w == "comdat") {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                continue;
            }
            break;
        }
        while (cur().kind == Token::Kind::MetadataRef) { // !dbg !7 attachments
            advance();
            if (cur().kind == Token::Kind::MetadataRef) advance();
        }

        if (!is_definition) return fn;

        expect_punct('{');
        parse_body(fn, unnamed_counter);
        return fn;
    }

    void bump_counter(unsigned& counter, const std::string& name) {
        if (name.empty() || !std::isdigit(static_cast<unsigned char>(name[0]))) return;
        unsigned n = 0;
        auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), n);
        if (ec == std::errc() && p == name.data() + name.size() && n >= counter) counter = n + 1;
    }

    void parse_body(IrFunction& fn, unsigned unnamed_counter) {
        IrBasicBlock* block = nullptr;
        auto ensure_block = [&]() -> IrBasicBlock& {
            if (!block) {
                fn.blocks.emplace_back();
                fn.blocks.back().label = std::to_string(unnamed_counter++);
                block = &fn.blocks.back();
            }
            return *block;
        };

        while (!at_end() && !cur().is_punct('}')) {
            // a label introduces a new block: word/int/string followed by ':'
            if ((cur().kind == Token::Kind::Word || cur().kind == Token::Kind::IntLit ||
                 cur().kind == Token::Kind::StringLit) &&
                peek().is_punct(':')) {
                fn.blocks.emplace_back();
                fn.blocks.back().label = cur().text;
                bump_counter(unnamed_counter, fn.blocks.back().label);
                block = &fn.blocks.back();
                advance();
                advance();
                continue;
            }
            // an instruction follows; an unlabeled block claims its implicit
            // number before the instruction does
            ensure_block();
            size_t start = pos;
            int start_line = cur().line;
            try {
                IrInstruction instr = parse_instruction(unnamed_counter);
                ensure_block().instructions.push_back(std::move(instr));
            } catch (const ParseError& e) {
                diag(Diagnostic::Severity::Warning, e.line, e.message + " [kept opaque]");
                pos = start;
                IrInstruction opaque;
                opaque.opcode = Opcode::Opaque;
                opaque.line = start_line;
                opaque.column = toks[start].col;
                // salvage a result name so later references still resolve
                if (toks[start].kind == Token::Kind::LocalIdent && peek(1).is_punct('=') &&
                    pos + 1 < toks.size()) {
                    opaque.result_name = toks[start].text;
                    bump_counter(unnamed_counter, opaque.result_name);
                }
                int err_line = std::max(start_line, e.line);
                while (!at_end() && cur().line <= err_line && !cur().is_punct('}')) advance();
                opaque.raw_text = slice(start, pos ? pos - 1 : 0);
                ensure_block().instructions.push_back(std::move(opaque));
            }
        }
        if (at_end())
            throw FatalError{"unterminated function body of @" + fn.name, cur().line};
        expect_punct('}');

        // SSA bookkeeping: reject duplicate result definitions
        std::set<std::string> defined;
        for (auto& b : fn.blocks)
            for (auto& i : b.instructions)
                if (!i.result_name.empty() && !defined.insert(i.result_name).second)
                    diag(Diagnostic::Severity::Warning, i.line,
                         "local %" + i.result_name + " defined more than once");
    }

    // ---- instructions --------------------------------------------------

    IrInstruction parse_instruction(unsigned& unnamed_counter) {
        size_t start = pos;
        IrInstruction instr;
        instr.line = cur().line;
        instr.column = cur().col;

        if (cur().kind == Token::Kind::LocalIdent && peek().is_punct('=')) {
            instr.result_name = cur().text;
            bump_counter(unnamed_counter, instr.result_name);
            advance();
            advance();
        }

        // call prefixes
        bool saw_tail = false;
        if (cur().is_word("tail") || cur().is_word("musttail") || cur().is_word("notail")) {
            saw_tail = true;
            advance();
        }

        if (cur().kind != Token::Kind::Word)
            throw ParseError{"expected opcode, found '" + token_text(cur()) + "'", cur().line};
        std::string word = cur().text;
        auto oc = opcode_from(word);
        if (!oc || (saw_tail && *oc != Opcode::Call))
            throw ParseError{"unsupported opcode '" + word + "'", cur().line};
        instr.opcode = *oc;
        advance();

        parse_instruction_payload(instr);
        skip_instruction_suffix();
        instr.raw_text = slice(start, pos ? pos - 1 : 0);
        return instr;
    }

    void collect_fast_math(IrInstruction& instr) {
        while (cur().kind == Token::Kind::Word && detail::fast_math_words().count(cur().text)) {
            instr.flags.push_back(cur().text);
            advance();
        }
    }

    void parse_instruction_payload(IrInstruction& instr) {
        switch (instr.opcode) {
        case Opcode::Ret: {
            if (cur().is_word("void")) {
                advance();
                instr.result_type = void_type();
                return;
            }
            instr.operands.push_back(parse_typed_operand(0));
            return;
        }
        case Opcode::Br: {
            if (accept_word("label")) {
                expect_local_label(instr);
                return;
            }
            TypeRef ty = parse_type();
            instr.operands.push_back(parse_value(std::move(ty), 0));
            expect_punct(',');
            expect_word("label");
            expect_local_label(instr);
            expect_punct(',');
            expect_word("label");
            expect_local_label(instr);
            return;
        }
        case Opcode::Switch: {
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            expect_word("label");
            expect_local_label(instr);
            expect_punct('[');
            while (!cur().is_punct(']') && !at_end()) {
                instr.operands.push_back(parse_typed_operand(0));
                expect_punct(',');
                expect_word("label");
                expect_local_label(instr);
            }
            expect_punct(']');
            return;
        }
        case Opcode::IndirectBr: {
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            expect_punct('[');
            while (!cur().is_punct(']') && !at_end()) {
                expect_word("label");
                expect_local_label(instr);
                if (!accept_punct(',')) break;
            }
            expect_punct(']');
            return;
        }
        case Opcode::Invoke:
        case Opcode::CallBr:
        case Opcode::Call: {
            parse_call_like(instr);
            return;
        }
        case Opcode::Resume: {
            instr.operands.push_back(parse_typed_operand(0));
            return;
        }
        case Opcode::CatchSwitch: {
            expect_word("within");
            parse_within_token(instr);
            expect_punct('[');
            while (!cur().is_punct(']') && !at_end()) {
                expect_word("label");
                expect_local_label(instr);
                if (!accept_punct(',')) break;
            }
            expect_punct(']');
            expect_word("unwind");
            if (accept_word("to")) {
                expect_word("caller");
                instr.flags.emplace_back("unwind-to-caller");
            } else {
                expect_word("label");
                expect_local_label(instr);
                instr.flags.emplace_back("unwind-to-label");
            }
            return;
        }
        case Opcode::CatchRet: {
            expect_word("from");
            instr.operands.push_back(IrOperand::local(expect_local_name(), token_type()));
            expect_word("to");
            expect_word("label");
            expect_local_label(instr);
            return;
        }
        case Opcode::CleanupRet: {
            expect_word("from");
            instr.operands.push_back(IrOperand::local(expect_local_name(), token_type()));
            expect_word("unwind");
            if (accept_word("to")) {
                expect_word("caller");
                instr.flags.emplace_back("unwind-to-caller");
            } else {
                expect_word("label");
                expect_local_label(instr);
                instr.flags.emplace_back("unwind-to-label");
            }
            return;
        }
        case Opcode::Unreachable: return;
        case Opcode::FNeg: {
            collect_fast_math(instr);
            instr.operands.push_back(parse_typed_operand(0));
            instr.result_type = instr.operands[0].type;
            return;
        }
        case Opcode::Add:
        case Opcode::Sub:
        case Opcode::Mul:
        case Opcode::Shl: {
            while (accept_word("nuw")) instr.flags.emplace_back("nuw");
            while (accept_word("nsw")) instr.flags.emplace_back("nsw");
            while (accept_word("nuw")) instr.flags.emplace_back("nuw");
            parse_binary_rest(instr);
            return;
        }
        case Opcode::UDiv:
        case Opcode::SDiv:
        case Opcode::LShr:
        case Opcode::AShr: {
            if (accept_word("exact")) instr.flags.emplace_back("exact");
            parse_binary_rest(instr);
            return;
        }
        case Opcode::URem:
        case Opcode::SRem:
        case Opcode::And:
        case Opcode::Or:
        case Opcode::Xor: {
            accept_word("disjoint"); // or disjoint
            parse_binary_rest(instr);
            return;
        }
        case Opcode::FAdd:
        case Opcode::FSub:
        case Opcode::FMul:
        case Opcode::FDiv:
        case Opcode::FRem: {
            collect_fast_math(instr);
            parse_binary_rest(instr);
            return;
        }
        case Opcode::ExtractElement: {
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0));
            return;
        }
        case Opcode::InsertElement:
        case Opcode::ShuffleVector:
        case Opcode::Select: {
            if (instr.opcode == Opcode::Select) collect_fast_math(instr);
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0));
            return;
        }
        case Opcode::ExtractValue: {
            instr.operands.push_back(parse_typed_operand(0));
            parse_index_list(instr);
            return;
        }
        case Opcode::InsertValue: {
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0));
            parse_index_list(instr);
            return;
        }
        case Opcode::Alloca: {
            accept_word("inalloca");
            accept_word("swifterror");
            instr.type_args.push_back(parse_type());
            while (accept_punct(',')) {
                if (cur().is_word("align")) {
                    advance();
                    if (cur().kind == Token::Kind::IntLit) advance();
                    continue;
                }
                if (cur().is_word("addrspace")) {
                    advance();
                    if (cur().is_punct('(')) skip_balanced('(', ')');
                    continue;
                }
                if (cur().kind == Token::Kind::MetadataRef) {
                    pos -= 1; // let the shared suffix handler deal with it
                    return;
                }
                instr.operands.push_back(parse_typed_operand(0)); // element count
            }
            return;
        }
        case Opcode::Load: {
            bool atomic = accept_word("atomic");
            if (atomic) instr.flags.emplace_back("atomic");
            if (accept_word("volatile")) instr.flags.emplace_back("volatile");
            instr.type_args.push_back(parse_type());
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0));
            parse_atomic_ordering_suffix(instr);
            return;
        }
        case Opcode::Store: {
            bool atomic = accept_word("atomic");
            if (atomic) instr.flags.emplace_back("atomic");
            if (accept_word("volatile")) instr.flags.emplace_back("volatile");
            instr.operands.push_back(parse_typed_operand(0)); // value
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0)); // pointer
            parse_atomic_ordering_suffix(instr);
            return;
        }
        case Opcode::Fence: {
            parse_syncscope(instr);
            if (cur().kind == Token::Kind::Word && detail::ordering_words().count(cur().text)) {
                instr.flags.push_back(cur().text);
                advance();
            }
            return;
        }
        case Opcode::CmpXchg: {
            if (accept_word("weak")) instr.flags.emplace_back("weak");
            if (accept_word("volatile")) instr.flags.emplace_back("volatile");
            instr.operands.push_back(parse_typed_operand(0)); // pointer
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0)); // compare
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0)); // new value
            parse_syncscope(instr);
            if (cur().kind == Token::Kind::Word && detail::ordering_words().count(cur().text)) {
                instr.flags.push_back("success-" + cur().text);
                advance();
            }
            if (cur().kind == Token::Kind::Word && detail::ordering_words().count(cur().text)) {
                instr.flags.push_back("failure-" + cur().text);
                advance();
            }
            return;
        }
        case Opcode::AtomicRMW: {
            if (accept_word("volatile")) instr.flags.emplace_back("volatile");
            if (cur().kind != Token::Kind::Word)
                throw ParseError{"expected atomicrmw operation", cur().line};
            instr.predicate = cur().text;
            advance();
            instr.operands.push_back(parse_typed_operand(0)); // pointer
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0)); // operand
            parse_syncscope(instr);
            if (cur().kind == Token::Kind::Word && detail::ordering_words().count(cur().text)) {
                instr.flags.push_back(cur().text);
                advance();
            }
            return;
        }
        case Opcode::GetElementPtr: {
            if (accept_word("inbounds")) instr.flags.emplace_back("inbounds");
            accept_word("nuw");
            accept_word("nusw");
            if (cur().is_word("inrange")) {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
            }
            instr.type_args.push_back(parse_type());
            expect_punct(',');
            instr.operands.push_back(parse_typed_operand(0)); // base pointer
            while (true) {
                size_t save = pos;
                if (!accept_punct(',')) break;
                accept_word("inrange");
                if (cur().kind == Token::Kind::MetadataRef || cur().is_word("align")) {
                    pos = save;
                    break;
                }
                instr.operands.push_back(parse_typed_operand(0));
            }
            return;
        }
        case Opcode::Trunc:
        case Opcode::ZExt:
        case Opcode::SExt:
        case Opcode::FPTrunc:
        case Opcode::FPExt:
        case Opcode::FPToUI:
        case Opcode::FPToSI:
        case Opcode::UIToFP:
        case Opcode::SIToFP:
        case Opcode::PtrToInt:
        case Opcode::IntToPtr:
        case Opcode::BitCast:
        case Opcode::AddrSpaceCast: {
            accept_word("nneg"); // zext nneg
            accept_word("nuw");
            accept_word("nsw");
            instr.operands.push_back(parse_typed_operand(0));
            expect_word("to");
            instr.type_args.push_back(parse_type());
            instr.result_type = instr.type_args[0];
            return;
        }
        case Opcode::ICmp: {
            accept_word("samesign");
            if (cur().kind != Token::Kind::Word || !detail::icmp_predicates().count(cur().text))
                throw ParseError{"expected icmp predicate", cur().line};
            instr.predicate = cur().text;
            advance();
            parse_binary_rest(instr);
            instr.result_type = int_type(1);
            return;
        }
        case Opcode::FCmp: {
            collect_fast_math(instr);
            if (cur().kind != Token::Kind::Word || !detail::fcmp_predicates().count(cur().text))
                throw ParseError{"expected fcmp predicate", cur().line};
            instr.predicate = cur().text;
            advance();
            parse_binary_rest(instr);
            instr.result_type = int_type(1);
            return;
        }
        case Opcode::Phi: {
            collect_fast_math(instr);
            TypeRef ty = parse_type();
            instr.result_type = ty;
            while (true) {
                expect_punct('[');
                instr.operands.push_back(parse_value(ty, 0));
                expect_punct(',');
                if (cur().kind != Token::Kind::LocalIdent)
                    throw ParseError{"expected predecessor label in phi", cur().line};
                instr.operands.push_back(IrOperand::label(cur().text));
                advance();
                expect_punct(']');
                if (!accept_punct(',')) break;
            }
            return;
        }
        case Opcode::Freeze: {
            instr.operands.push_back(parse_typed_operand(0));
            return;
        }
        case Opcode::VaArg: {
            instr.operands.push_back(parse_typed_operand(0));
            expect_punct(',');
            instr.type_args.push_back(parse_type());
            instr.result_type = instr.type_args[0];
            return;
        }
        case Opcode::LandingPad: {
            instr.type_args.push_back(parse_type());
            instr.result_type = instr.type_args[0];
            if (accept_word("cleanup")) instr.flags.emplace_back("cleanup");
            while (cur().is_word("catch") || cur().is_word("filter")) {
                instr.flags.emplace_back(cur().text);
                advance();
                instr.operands.push_back(parse_typed_operand(0));
            }
            return;
        }
        case Opcode::CatchPad: {
            expect_word("within");
            parse_within_token(instr);
            expect_punct('[');
            while (!cur().is_punct(']') && !at_end()) {
                instr.operands.push_back(parse_typed_operand(0));
                if (!accept_punct(',')) break;
            }
            expect_punct(']');
            instr.result_type = token_type();
            return;
        }
        case Opcode::CleanupPad: {
            expect_word("within");
            parse_within_token(instr);
            if (cur().is_punct('[')) {
                advance();
                while (!cur().is_punct(']') && !at_end()) {
                    instr.operands.push_back(parse_typed_operand(0));
                    if (!accept_punct(',')) break;
                }
                expect_punct(']');
            }
            instr.result_type = token_type();
            return;
        }
        case Opcode::Opaque:
            throw ParseError{"opaque instruction cannot be parsed", instr.line};
        }
    }

    void parse_binary_rest(IrInstruction& instr) {
        TypeRef ty = parse_type();
        instr.operands.push_back(parse_value(ty, 0));
        expect_punct(',');
        instr.operands.push_back(parse_value(ty, 0));
        if (!instr.result_type) instr.result_type = ty;
    }

    void parse_index_list(IrInstruction& instr) {
        while (true) {
            size_t save = pos;
            if (!accept_punct(',')) break;
            if (cur().kind != Token::Kind::IntLit) {
                pos = save;
                break;
            }
            instr.indices.push_back(to_int(cur()));
            advance();
        }
        if (instr.indices.empty()) throw ParseError{"expected index list", cur().line};
    }

    void parse_syncscope(IrInstruction& instr) {
        if (cur().is_word("syncscope")) {
            advance();
            if (cur().is_punct('(')) skip_balanced('(', ')');
            instr.flags.emplace_back("syncscope");
        }
    }

    void parse_atomic_ordering_suffix(IrInstruction& instr) {
        parse_syncscope(instr);
        if (cur().kind == Token::Kind::Word && detail::ordering_words().count(cur().text)) {
            instr.flags.push_back(cur().text);
            advance();
        }
    }

    void parse_within_token(IrInstruction& instr) {
        if (accept_word("none")) {
            instr.flags.emplace_back("within-none");
            return;
        }
        if (cur().kind == Token::Kind::LocalIdent) {
            instr.operands.push_back(IrOperand::local(cur().text, token_type()));
            advance();
            return;
        }
        throw ParseError{"expected 'none' or token value after 'within'", cur().line};
    }

    std::string expect_local_name() {
        if (cur().kind != Token::Kind::LocalIdent)
            throw ParseError{"expected local value, found '" + token_text(cur()) + "'",
                             cur().line};
        std::string name = cur().text;
        advance();
        return name;
    }

    void expect_local_label(IrInstruction& instr) {
        instr.operands.push_back(IrOperand::label(expect_local_name()));
    }

    // call / invoke / callbr share most of their grammar
    void parse_call_like(IrInstruction& instr) {
        collect_fast_math(instr);
        // cconv / return attrs / addrspace before the type
        while (cur().kind == Token::Kind::Word) {
            std::string_view w = cur().text;
            if (detail::cconv_words().count(w) || detail::param_attr_words().count(w)) {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                continue;
            }
            if (w == "cc") {
                advance();
                if (cur().kind == Token::Kind::IntLit) advance();
                continue;
            }
            if (w == "addrspace" && peek().is_punct('(')) {
                advance();
                skip_balanced('(', ')');
                continue;
            }
            break;
        }

        TypeRef ty = parse_type();
        instr.result_type = ty && ty->kind == Type::Kind::Function ? ty->ret : ty;

        // callee: direct @name, indirect %name, or a constant expression
        if (cur().kind == Token::Kind::GlobalIdent) {
            instr.callee = cur().text;
            advance();
        } else {
            IrOperand callee = parse_value(pointer_to(ty), 0);
            if (callee.kind == IrOperand::Kind::GlobalRef) {
                instr.callee = callee.text;
            } else if (callee.kind == IrOperand::Kind::ConstExpr && callee.expr &&
                       callee.expr->opcode == Opcode::BitCast && !callee.expr->operands.empty() &&
                       callee.expr->operands[0].kind == IrOperand::Kind::GlobalRef) {
                instr.callee = callee.expr->operands[0].text;
            } else {
                instr.flags.emplace_back("indirect");
                instr.operands.push_back(std::move(callee));
            }
        }

        expect_punct('(');
        if (!cur().is_punct(')')) {
            while (true) {
                instr.operands.push_back(parse_typed_operand(0));
                if (!accept_punct(',')) break;
            }
        }
        expect_punct(')');

        // function attrs / operand bundles
        while (true) {
            if (cur().kind == Token::Kind::AttrRef) {
                advance();
                continue;
            }
            if (cur().kind == Token::Kind::Word &&
                (detail::param_attr_words().count(cur().text) || cur().text == "nounwind" ||
                 cur().text == "noreturn" || cur().text == "willreturn" ||
                 cur().text == "memory" || cur().text == "nocallback" ||
                 cur().text == "mustprogress" || cur().text == "norecurse" ||
                 cur().text == "nosync" || cur().text == "speculatable" ||
                 cur().text == "strictfp" || cur().text == "builtin" ||
                 cur().text == "nobuiltin" || cur().text == "cold" || cur().text == "convergent")) {
                advance();
                if (cur().is_punct('(')) skip_balanced('(', ')');
                continue;
            }
            if (cur().is_punct('[')) { // operand bundles
                skip_balanced('[', ']');
                continue;
            }
            break;
        }

        if (instr.opcode == Opcode::Invoke) {
            expect_word("to");
            expect_word("label");
            expect_local_label(instr); // normal destination
            expect_word("unwind");
            expect_word("label");
            expect_local_label(instr); // unwind destination
        } else if (instr.opcode == Opcode::CallBr) {
            expect_word("to");
            expect_word("label");
            expect_local_label(instr);
            expect_punct('[');
            while (!cur().is_punct(']') && !at_end()) {
                expect_word("label");
                expect_local_label(instr);
                if (!accept_punct(',')) break;
            }
            expect_punct(']');
        }
    }
};

/// Convenience wrapper matching the module-level entry point.
inline ParseResult parse_module(std::string_view source, std::string source_name = "<memory>") {
    return Parser::parse_module(source, std::move(source_name));
}

} // namespace cpgir::ir
