#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "exkit/ast.hpp"

namespace exkit {

struct ExecutionContext;  // context.hpp

struct SourceFile {
    std::string repo_id;
    std::string path;  // repository-relative
    std::shared_ptr<const std::string> content;
    std::shared_ptr<const java::SyntaxTree> tree;  // null when the file did not parse

    std::string_view text() const { return content ? std::string_view(*content) : std::string_view(); }
    bool parsed() const { return tree != nullptr; }
};

// Parses content and wraps it; on parse failure `tree` stays null and the
// first diagnostic is returned through `diag`.
SourceFile make_source_file(std::string repo_id, std::string path, std::string content,
                            java::Diagnostic* diag = nullptr);

struct CodeSegment {
    SourceFile file;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;  // half-open [begin, end)

    std::string_view text() const { return file.text().substr(begin, end - begin); }
};

struct ApiSignature {
    std::string receiver;  // simple type or literal qualifier; empty = none
    std::string method;
    int arity = 0;

    std::string normalized() const;
    bool operator==(const ApiSignature& o) const {
        return receiver == o.receiver && method == o.method && arity == o.arity;
    }
};

struct ImportDecl {
    std::string raw;     // full import text as written
    std::string target;  // dotted qualified name, ".*" suffix kept for wildcards
    bool is_wildcard = false;
    bool is_static = false;
    std::string simple_name;  // last segment; empty for wildcards
};

struct CatchClause {
    std::vector<std::string> exception_types;  // >= 1; multi-catch keeps them all
    std::string variable;
    std::string body;    // block interior, exact substring of the file
    std::string source;  // full `catch (...) {...}` text
};

struct TryCatchRecord {
    std::string id;  // stable hash of (repo_id, path, byte_range)
    std::string repo_id;
    std::string path;
    std::uint32_t begin = 0;  // try statement byte range
    std::uint32_t end = 0;
    std::string try_source;   // try block interior, exact substring
    std::string full_source;  // whole try statement text
    std::vector<CatchClause> catch_clauses;
    std::optional<std::string> enclosing_class;
    std::optional<std::string> enclosing_method;
    std::vector<ApiSignature> api_calls;
    std::shared_ptr<const ExecutionContext> context;
    std::optional<std::set<std::string>> intents;
};

std::string try_catch_record_id(std::string_view repo_id, std::string_view path,
                                std::uint32_t begin, std::uint32_t end);

// One record per try statement with >= 1 catch clause, ordered by byte
// offset. try/finally and try-with-resources without any catch are skipped.
std::vector<TryCatchRecord> extract_try_catch_blocks(const SourceFile& file);

// Invocation and constructor-call signatures in pre-order. Receivers resolve
// to the declared simple type when the variable is declared in the same
// method, else the literal qualifier chain, else empty. this()/super()
// constructor chains are not API calls.
std::vector<ApiSignature> extract_api_calls(const SourceFile& file, std::uint32_t begin,
                                            std::uint32_t end);
std::vector<ApiSignature> extract_api_calls(const CodeSegment& segment);

// Same extraction over a standalone snippet (parsed as a statement sequence).
std::vector<ApiSignature> extract_api_calls_from_snippet(std::string_view snippet);

std::vector<ImportDecl> extract_imports(const SourceFile& file);

struct ScopeInfo {
    std::optional<std::string> class_name;   // "<anonymous>" for anonymous classes
    std::optional<std::string> method_name;
};

ScopeInfo locate_enclosing_scope(const SourceFile& file, std::uint32_t begin, std::uint32_t end);

// Keeps exactly the statements that contain an invocation, one per line, in
// source order. Compound statements are decomposed: header invocations are
// emitted as standalone `call();` lines, then contained statements follow.
std::string filter_to_invocations(const SourceFile& file, const java::Node& body);
std::string filter_to_invocations_snippet(std::string_view body_text);

}  // namespace exkit
