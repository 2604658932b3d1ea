#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cpgir::ir {

class Type;
using TypeRef = std::shared_ptr<const Type>;

/// Immutable structural description of an LLVM type. Named structs are
/// represented by name only; their field list lives in the module's type
/// definition table.
class Type {
public:
    enum class Kind {
        Void,
        Integer,  // iN
        Float,    // half, bfloat, float, double, x86_fp80, fp128, ppc_fp128
        Pointer,  // T* or opaque ptr (null pointee)
        Array,    // [N x T]
        Vector,   // <N x T>
        Struct,   // literal {..} / packed <{..}> / named %n
        Function, // ret (params...)
        Label,
        Token,
        Metadata,
        Opaque, // unrecognized type text, kept verbatim in name
    };

    Kind kind = Kind::Void;
    unsigned bits = 0;            // Integer width
    std::string name;             // Float flavor, named-struct name, Opaque raw text
    uint64_t length = 0;          // Array/Vector element count
    TypeRef element;              // Pointer pointee / Array / Vector element
    std::vector<TypeRef> members; // Struct fields / Function params
    TypeRef ret;                  // Function return
    bool packed = false;          // <{...}> struct
    bool varargs = false;         // Function ...

    bool is_named_struct() const { return kind == Kind::Struct && !name.empty(); }
    bool is_literal_struct() const { return kind == Kind::Struct && name.empty(); }
    bool is_opaque_pointer() const { return kind == Kind::Pointer && !element; }
};

inline TypeRef make_type(Type t) { return std::make_shared<Type>(std::move(t)); }

inline TypeRef void_type() {
    static TypeRef t = make_type(Type{.kind = Type::Kind::Void});
    return t;
}

inline TypeRef label_type() {
    static TypeRef t = make_type(Type{.kind = Type::Kind::Label});
    return t;
}

inline TypeRef token_type() {
    static TypeRef t = make_type(Type{.kind = Type::Kind::Token});
    return t;
}

inline TypeRef metadata_type() {
    static TypeRef t = make_type(Type{.kind = Type::Kind::Metadata});
    return t;
}

inline TypeRef int_type(unsigned bits) {
    Type t;
    t.kind = Type::Kind::Integer;
    t.bits = bits;
    return make_type(std::move(t));
}

inline TypeRef float_type(std::string flavor) {
    Type t;
    t.kind = Type::Kind::Float;
    t.name = std::move(flavor);
    t.bits = t.name == "double" ? 64 : t.name == "float" ? 32 : t.name == "half" ? 16 : 0;
    return make_type(std::move(t));
}

inline TypeRef pointer_to(TypeRef pointee) {
    Type t;
    t.kind = Type::Kind::Pointer;
    t.element = std::move(pointee);
    return make_type(std::move(t));
}

inline TypeRef opaque_pointer() { return pointer_to(nullptr); }

inline TypeRef array_of(uint64_t len, TypeRef elem) {
    Type t;
    t.kind = Type::Kind::Array;
    t.length = len;
    t.element = std::move(elem);
    return make_type(std::move(t));
}

inline TypeRef vector_of(uint64_t len, TypeRef elem) {
    Type t;
    t.kind = Type::Kind::Vector;
    t.length = len;
    t.element = std::move(elem);
    return make_type(std::move(t));
}

inline TypeRef struct_of(std::vector<TypeRef> fields, bool packed = false) {
    Type t;
    t.kind = Type::Kind::Struct;
    t.members = std::move(fields);
    t.packed = packed;
    return make_type(std::move(t));
}

inline TypeRef named_struct(std::string name) {
    Type t;
    t.kind = Type::Kind::Struct;
    t.name = std::move(name);
    return make_type(std::move(t));
}

inline TypeRef function_type(TypeRef ret, std::vector<TypeRef> params, bool varargs = false) {
    Type t;
    t.kind = Type::Kind::Function;
    t.ret = std::move(ret);
    t.members = std::move(params);
    t.varargs = varargs;
    return make_type(std::move(t));
}

inline TypeRef opaque_type(std::string raw) {
    Type t;
    t.kind = Type::Kind::Opaque;
    t.name = std::move(raw);
    return make_type(std::move(t));
}

/// Canonical textual spelling; doubles as the structural-equality key.
inline std::string to_string(const TypeRef& type) {
    if (!type) return "?";
    const Type& t = *type;
    switch (t.kind) {
    case Type::Kind::Void: return "void";
    case Type::Kind::Integer: return "i" + std::to_string(t.bits);
    case Type::Kind::Float: return t.name;
    case Type::Kind::Pointer:
        if (!t.element) return "ptr";
        return to_string(t.element) + "*";
    case Type::Kind::Array:
        return "[" + std::to_string(t.length) + " x " + to_string(t.element) + "]";
    case Type::Kind::Vector:
        return "<" + std::to_string(t.length) + " x " + to_string(t.element) + ">";
    case Type::Kind::Struct: {
        if (!t.name.empty()) return "%" + t.name;
        std::string out = t.packed ? "<{" : "{";
        for (size_t i = 0; i < t.members.size(); ++i) {
            if (i) out += ", ";
            out += to_string(t.members[i]);
        }
        out += t.packed ? "}>" : "}";
        return out;
    }
    case Type::Kind::Function: {
        std::string out = to_string(t.ret) + " (";
        for (size_t i = 0; i < t.members.size(); ++i) {
            if (i) out += ", ";
            out += to_string(t.members[i]);
        }
        if (t.varargs) {
            if (!t.members.empty()) out += ", ";
            out += "...";
        }
        out += ")";
        return out;
    }
    case Type::Kind::Label: return "label";
    case Type::Kind::Token: return "token";
    case Type::Kind::Metadata: return "metadata";
    case Type::Kind::Opaque: return t.name.empty() ? "opaque" : t.name;
    }
    return "?";
}

inline bool equal(const TypeRef& a, const TypeRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return to_string(a) == to_string(b);
}

} // namespace cpgir::ir
