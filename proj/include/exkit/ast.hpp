#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "exkit/util.hpp"

namespace exkit::java {

enum class NodeKind : std::uint8_t {
    CompilationUnit,
    PackageDecl,
    ImportDecl,
    Annotation,
    ClassDecl,
    InterfaceDecl,
    EnumDecl,
    EnumConstant,
    AnonClassBody,
    FieldDecl,
    MethodDecl,
    ConstructorDecl,
    InitializerBlock,
    FormalParams,
    FormalParam,
    TypeNode,
    Block,
    IfStmt,
    ForStmt,
    EnhancedForStmt,
    WhileStmt,
    DoStmt,
    SwitchStmt,
    SwitchCase,
    TryStmt,
    ResourceSpec,
    CatchClause,
    LocalVarDecl,
    VarDeclarator,
    ExprStmt,
    ReturnStmt,
    ThrowStmt,
    BreakStmt,
    ContinueStmt,
    SynchronizedStmt,
    LabeledStmt,
    EmptyStmt,
    AssertStmt,
    YieldStmt,
    Assignment,
    Ternary,
    Binary,
    Unary,
    Cast,
    InstanceOfExpr,
    MethodInvocation,
    ObjectCreation,
    ArrayCreation,
    ArrayInit,
    ArrayAccess,
    FieldAccess,
    Identifier,
    Literal,
    ThisExpr,
    SuperExpr,
    ParenExpr,
    Lambda,
    MethodRef,
    ArgumentList,
};

// Position of a node within its parent, where it matters to consumers.
enum class Role : std::uint8_t {
    None,
    Receiver,
    Header,    // loop/if/switch condition or control clause
    Body,
    ElseBranch,
    Extends,
    Finally,
    Resources,
    Initializer,
};

inline constexpr std::uint8_t kFlagStatic = 1u << 0;
inline constexpr std::uint8_t kFlagWildcardImport = 1u << 1;
inline constexpr std::uint8_t kFlagHasReceiver = 1u << 2;
inline constexpr std::uint8_t kFlagCtorChain = 1u << 3;  // this(...) / super(...) calls
inline constexpr std::uint8_t kFlagAnonymous = 1u << 4;

struct Node {
    NodeKind kind = NodeKind::CompilationUnit;
    Role role = Role::None;
    std::uint8_t flags = 0;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    // Declared/invoked/accessed name; import target; operator spelling for
    // Binary/Unary/Assignment. Qualified names are stored without whitespace.
    std::string name;
    std::vector<Node> children;

    std::string_view text(std::string_view src) const { return src.substr(begin, end - begin); }
    bool has_flag(std::uint8_t f) const { return (flags & f) != 0; }
};

struct Diagnostic {
    std::uint32_t offset = 0;
    int line = 1;
    int column = 1;
    std::string message;
};

struct SyntaxTree {
    Node root;
};

struct ParseResult {
    std::shared_ptr<const SyntaxTree> tree;  // null when the grammar rejects the input
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return tree != nullptr && diagnostics.empty(); }
};

// Parses a whole Java compilation unit. The root node spans exactly the
// input; children are nested and ordered by byte offset. Any syntax error
// rejects the file (callers skip and continue).
ParseResult parse_source(std::string_view content);

// Parses a statement sequence (method-body content), for standalone snippets
// such as generated catch blocks wrapped for validation. Root is a Block
// spanning the input.
ParseResult parse_statements(std::string_view content);

// Depth-first pre-order walk; visitor returns false to prune a subtree.
template <typename F>
void walk(const Node& n, F&& visit) {
    if (!visit(n)) return;
    for (const auto& c : n.children) walk(c, visit);
}

}  // namespace exkit::java
