#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace cpgir::ir {

struct Token {
    enum class Kind {
        Word,        // bare keyword/identifier: define, i32, add, seq_cst, ...
        LocalIdent,  // %name / %"quoted" / %42  (text holds the unquoted name)
        GlobalIdent, // @name / @"quoted"
        MetadataRef, // !name / !42 / !DIExpression
        AttrRef,     // #0
        IntLit,
        FloatLit,
        HexLit,      // 0x... (LLVM hexadecimal float, possibly 0xK/0xL/0xM/0xH/0xR)
        StringLit,   // "..." (text holds raw content, escapes untouched)
        CStringLit,  // c"..."
        Punct,
        End,
    };

    Kind kind = Kind::End;
    std::string text;
    char punct = 0;
    size_t begin = 0; // byte offsets into the source
    size_t end = 0;
    int line = 1;
    int col = 1;

    bool is_punct(char c) const { return kind == Kind::Punct && punct == c; }
    bool is_word(std::string_view w) const { return kind == Kind::Word && text == w; }
};

namespace detail {

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' ||
           c == '-';
}

inline bool word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

} // namespace detail

/// Tokenizes textual LLVM assembly. Never throws; unrecognizable bytes become
/// single-character Punct tokens the parser can reject with a diagnostic.
class Lexer {
public:
    explicit Lexer(std::string_view source) : src(source) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            bool end = t.kind == Token::Kind::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    std::string_view src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    char cur() const { return pos < src.size() ? src[pos] : '\0'; }
    char peek(size_t n = 1) const { return pos + n < src.size() ? src[pos + n] : '\0'; }

    void advance() {
        if (pos >= src.size()) return;
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_trivia() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == ';') {
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token start_token() const {
        Token t;
        t.begin = pos;
        t.line = line;
        t.col = col;
        return t;
    }

    Token finish(Token t, Token::Kind kind) {
        t.kind = kind;
        t.end = pos;
        return t;
    }

    // %name, @name, with optional quoting; also bare numeric suffixes (%0)
    Token lex_sigil(Token::Kind kind) {
        Token t = start_token();
        advance(); // sigil
        if (cur() == '"') {
            t.text = lex_quoted();
        } else {
            size_t s = pos;
            while (pos < src.size() && detail::ident_char(src[pos])) advance();
            t.text = std::string(src.substr(s, pos - s));
        }
        return finish(t, kind);
    }

    std::string lex_quoted() {
        advance(); // opening quote
        std::string text;
        while (pos < src.size() && src[pos] != '"') {
            if (src[pos] == '\\' && pos + 1 < src.size()) {
                text += src[pos];
                advance();
            }
            text += src[pos];
            advance();
        }
        if (pos < src.size()) advance(); // closing quote
        return text;
    }

    Token next() {
        skip_trivia();
        if (pos >= src.size()) {
            Token t = start_token();
            return finish(t, Token::Kind::End);
        }
        char c = cur();

        if (c == '%') return lex_sigil(Token::Kind::LocalIdent);
        if (c == '@') return lex_sigil(Token::Kind::GlobalIdent);

        if (c == '!') {
            // !name / !0 metadata reference; bare ! before { or " stays punctuation
            if (detail::ident_char(peek()) || std::isdigit(static_cast<unsigned char>(peek()))) {
                Token t = start_token();
                advance();
                size_t s = pos;
                while (pos < src.size() && detail::ident_char(src[pos])) advance();
                t.text = std::string(src.substr(s, pos - s));
                return finish(t, Token::Kind::MetadataRef);
            }
            Token t = start_token();
            t.punct = c;
            advance();
            return finish(t, Token::Kind::Punct);
        }

        if (c == '#' && std::isdigit(static_cast<unsigned char>(peek()))) {
            Token t = start_token();
            advance();
            size_t s = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance();
            t.text = std::string(src.substr(s, pos - s));
            return finish(t, Token::Kind::AttrRef);
        }

        if (c == '"') {
            Token t = start_token();
            t.text = lex_quoted();
            return finish(t, Token::Kind::StringLit);
        }

        if (c == 'c' && peek() == '"') {
            Token t = start_token();
            advance(); // c
            t.text = lex_quoted();
            return finish(t, Token::Kind::CStringLit);
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek())))) {
            return lex_number();
        }

        if (detail::word_start(c)) {
            Token t = start_token();
            size_t s = pos;
            while (pos < src.size() && (detail::ident_char(src[pos]) && src[pos] != '-')) advance();
            t.text = std::string(src.substr(s, pos - s));
            return finish(t, Token::Kind::Word);
        }

        Token t = start_token();
        t.punct = c;
        advance();
        return finish(t, Token::Kind::Punct);
    }

    Token lex_number() {
        Token t = start_token();
        size_t s = pos;
        if (cur() == '-' || cur() == '+') advance();
        if (cur() == '0' && (peek() == 'x' || peek() == 'X')) {
            advance();
            advance();
            // 0xK / 0xL / 0xM / 0xH / 0xR mark extended float payloads
            if (cur() == 'K' || cur() == 'L' || cur() == 'M' || cur() == 'H' || cur() == 'R')
                advance();
            while (pos < src.size() && std::isxdigit(static_cast<unsigned char>(src[pos])))
                advance();
            t.text = std::string(src.substr(s, pos - s));
            return finish(t, Token::Kind::HexLit);
        }
        bool is_float = false;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance();
        if (cur() == '.' && std::isdigit(static_cast<unsigned char>(peek()))) {
            is_float = true;
            advance();
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance();
        }
        if (cur() == 'e' || cur() == 'E') {
            size_t save_pos = pos;
            int save_col = col;
            advance();
            if (cur() == '-' || cur() == '+') advance();
            if (std::isdigit(static_cast<unsigned char>(cur()))) {
                is_float = true;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    advance();
            } else {
                pos = save_pos;
                col = save_col;
            }
        }
        t.text = std::string(src.substr(s, pos - s));
        return finish(t, is_float ? Token::Kind::FloatLit : Token::Kind::IntLit);
    }
};

} // namespace cpgir::ir
