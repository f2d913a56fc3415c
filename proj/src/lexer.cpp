#include "exkit/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace exkit::java {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
    "const", "continue", "default", "do", "double", "else", "enum", "extends", "final",
    "finally", "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
    "interface", "long", "native", "new", "package", "private", "protected", "public",
    "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while",
    // literals and contextual keywords, kept in the set so the weighted n-gram
    // matcher and the parser see them uniformly
    "true", "false", "null", "var", "record", "yield",
};

// Longest-match operator table, ordered by length.
constexpr std::array<std::string_view, 50> kOperators = {
    ">>>=",
    ">>>", ">>=", "<<=", "...",
    "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "&=", "|=", "^=", "%=", "<<", ">>",
    "(", ")", "{", "}", "[", "]", ";", ",", ".", "@", "=", "<", ">", "!", "~", "?", ":",
    "+", "-", "*", "/", "&", "|", "^", "%",
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_part(char c) {
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool is_hex_digit(char c) { return std::isxdigit(static_cast<unsigned char>(c)); }

}  // namespace

bool is_java_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

LexResult lex_java(std::string_view src) {
    LexResult res;
    std::size_t i = 0;
    const std::size_t n = src.size();

    auto fail = [&](std::size_t at, std::string msg) {
        if (res.ok) {
            res.ok = false;
            res.error_offset = static_cast<std::uint32_t>(at);
            res.error_message = std::move(msg);
        }
    };
    auto push = [&](TokKind k, std::size_t b, std::size_t e) {
        res.tokens.push_back({k, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)});
    };

    while (i < n) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t start = i;
            i += 2;
            bool closed = false;
            while (i + 1 < n) {
                if (src[i] == '*' && src[i + 1] == '/') {
                    i += 2;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed) {
                fail(start, "unterminated block comment");
                i = n;
            }
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t b = i;
            while (i < n && is_ident_part(src[i])) ++i;
            std::string_view word = src.substr(b, i - b);
            push(kKeywords.count(word) ? TokKind::Keyword : TokKind::Identifier, b, i);
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(src[i + 1]))) {
            std::size_t b = i;
            bool is_float = false;
            if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
                i += 2;
                while (i < n && (is_hex_digit(src[i]) || src[i] == '_')) ++i;
            } else if (c == '0' && i + 1 < n && (src[i + 1] == 'b' || src[i + 1] == 'B')) {
                i += 2;
                while (i < n && (src[i] == '0' || src[i] == '1' || src[i] == '_')) ++i;
            } else {
                while (i < n && (is_digit(src[i]) || src[i] == '_')) ++i;
                if (i < n && src[i] == '.' && i + 1 < n && is_digit(src[i + 1])) {
                    is_float = true;
                    ++i;
                    while (i < n && (is_digit(src[i]) || src[i] == '_')) ++i;
                } else if (i < n && src[i] == '.' && src[b] != '.') {
                    // "1." style literal; do not swallow ".." or method calls on ints
                    if (i + 1 >= n || !is_ident_start(src[i + 1])) {
                        is_float = true;
                        ++i;
                    }
                }
                if (i < n && (src[i] == 'e' || src[i] == 'E')) {
                    std::size_t save = i;
                    ++i;
                    if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
                    if (i < n && is_digit(src[i])) {
                        is_float = true;
                        while (i < n && is_digit(src[i])) ++i;
                    } else {
                        i = save;
                    }
                }
            }
            if (i < n && (src[i] == 'f' || src[i] == 'F' || src[i] == 'd' || src[i] == 'D')) {
                is_float = true;
                ++i;
            } else if (i < n && (src[i] == 'l' || src[i] == 'L')) {
                ++i;
            }
            push(is_float ? TokKind::FloatLit : TokKind::IntLit, b, i);
            continue;
        }
        if (c == '"') {
            std::size_t b = i;
            // text block
            if (i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                i += 3;
                bool closed = false;
                while (i + 2 < n || (i + 2 == n && i < n)) {
                    if (i + 2 < n && src[i] == '"' && src[i + 1] == '"' && src[i + 2] == '"') {
                        i += 3;
                        closed = true;
                        break;
                    }
                    if (src[i] == '\\') ++i;
                    ++i;
                }
                if (!closed) {
                    fail(b, "unterminated text block");
                    i = n;
                }
                push(TokKind::StringLit, b, i);
                continue;
            }
            ++i;
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (src[i] == '"') {
                    ++i;
                    closed = true;
                    break;
                }
                if (src[i] == '\n') break;
                ++i;
            }
            if (!closed) fail(b, "unterminated string literal");
            push(TokKind::StringLit, b, i);
            continue;
        }
        if (c == '\'') {
            std::size_t b = i;
            ++i;
            bool closed = false;
            while (i < n) {
                if (src[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (src[i] == '\'') {
                    ++i;
                    closed = true;
                    break;
                }
                if (src[i] == '\n') break;
                ++i;
            }
            if (!closed) fail(b, "unterminated char literal");
            push(TokKind::CharLit, b, i);
            continue;
        }
        bool matched = false;
        for (std::string_view op : kOperators) {
            if (src.substr(i, op.size()) == op) {
                push(TokKind::Operator, i, i + op.size());
                i += op.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            fail(i, "unexpected character");
            push(TokKind::Error, i, i + 1);
            ++i;
        }
    }
    push(TokKind::EndOfFile, n, n);
    return res;
}

}  // namespace exkit::java
