#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace exkit::java {

enum class TokKind : std::uint8_t {
    Identifier,
    Keyword,
    IntLit,
    FloatLit,
    CharLit,
    StringLit,
    Operator,
    EndOfFile,
    Error,
};

struct Token {
    TokKind kind = TokKind::EndOfFile;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    std::string_view text(std::string_view src) const { return src.substr(begin, end - begin); }
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by EndOfFile
    bool ok = true;
    std::uint32_t error_offset = 0;
    std::string error_message;
};

// Tokenizes Java source. Comments and whitespace are skipped. Unterminated
// string/char literals and stray bytes produce ok = false with the offending
// offset; the token stream still ends with EndOfFile so tolerant callers can
// proceed.
LexResult lex_java(std::string_view src);

bool is_java_keyword(std::string_view word);

}  // namespace exkit::java
