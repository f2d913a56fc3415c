#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exkit {

// 64-bit FNV-1a over a length-prefixed field sequence. Stable across
// platforms and runs; used for record ids and gateway request keys.
std::uint64_t stable_hash(const std::vector<std::string_view>& fields);

std::string hash_hex(std::uint64_t h);

struct LineCol {
    int line = 1;  // 1-based
    int column = 1;
};

LineCol line_col_at(std::string_view text, std::size_t offset);

std::optional<std::string> read_text_file(const std::string& path);
bool write_text_file(const std::string& path, std::string_view content);

// Last '.'-separated segment ("java.io.IOException" -> "IOException").
std::string_view simple_name(std::string_view qualified);

// Collapse every whitespace run to a single space and trim the ends.
std::string collapse_ws(std::string_view text);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Levenshtein edit distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - dist/max_len; both empty -> 1.0.
double name_similarity(std::string_view a, std::string_view b);

}  // namespace exkit
