#include "exkit/code_model.hpp"

#include <algorithm>
#include <functional>

namespace exkit {

using java::Node;
using java::NodeKind;
using java::Role;

std::string ApiSignature::normalized() const {
    std::string out;
    if (!receiver.empty()) {
        out += receiver;
        out += '.';
    }
    out += method;
    out += '/';
    out += std::to_string(arity);
    return out;
}

SourceFile make_source_file(std::string repo_id, std::string path, std::string content,
                            java::Diagnostic* diag) {
    SourceFile f;
    f.repo_id = std::move(repo_id);
    f.path = std::move(path);
    f.content = std::make_shared<const std::string>(std::move(content));
    auto res = java::parse_source(*f.content);
    if (res.ok()) {
        f.tree = res.tree;
    } else if (diag && !res.diagnostics.empty()) {
        *diag = res.diagnostics.front();
    }
    return f;
}

std::string try_catch_record_id(std::string_view repo_id, std::string_view path,
                                std::uint32_t begin, std::uint32_t end) {
    std::string b = std::to_string(begin);
    std::string e = std::to_string(end);
    return hash_hex(stable_hash({repo_id, path, b, e}));
}

namespace {

bool contains_range(const Node& n, std::uint32_t begin, std::uint32_t end) {
    return n.begin <= begin && end <= n.end;
}

bool is_invocation_node(const Node& n) {
    if (n.kind == NodeKind::MethodInvocation) return !n.has_flag(java::kFlagCtorChain);
    return n.kind == NodeKind::ObjectCreation;
}

bool is_class_like(const Node& n) {
    return n.kind == NodeKind::ClassDecl || n.kind == NodeKind::InterfaceDecl ||
           n.kind == NodeKind::EnumDecl || n.kind == NodeKind::AnonClassBody;
}

bool is_method_like(const Node& n) {
    return n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl;
}

// Collects `name -> simple type` for every variable declared in the subtree:
// formal parameters, local declarations, enhanced-for variables, catch
// parameters, resources.
void collect_declared_types(const Node& n, std::string_view src,
                            std::vector<std::pair<std::uint32_t, std::pair<std::string, std::string>>>& out) {
    switch (n.kind) {
        case NodeKind::FormalParam: {
            for (const auto& c : n.children) {
                if (c.kind == NodeKind::TypeNode) {
                    out.push_back({n.begin, {n.name, std::string(simple_name(c.name))}});
                    break;
                }
            }
            break;
        }
        case NodeKind::LocalVarDecl: {
            std::string type;
            for (const auto& c : n.children) {
                if (c.kind == NodeKind::TypeNode) type = std::string(simple_name(c.name));
                if (c.kind == NodeKind::VarDeclarator && !type.empty())
                    out.push_back({c.begin, {c.name, type}});
            }
            break;
        }
        case NodeKind::CatchClause: {
            if (!n.name.empty()) {
                for (const auto& c : n.children) {
                    if (c.kind == NodeKind::TypeNode) {
                        out.push_back({n.begin, {n.name, std::string(simple_name(c.name))}});
                        break;
                    }
                }
            }
            break;
        }
        default:
            break;
    }
    for (const auto& c : n.children) collect_declared_types(c, src, out);
}

// Textual receiver of an invocation: declared simple type for a plain
// identifier, the dotted qualifier chain for pure name chains, else empty.
std::string resolve_receiver(const Node& recv, std::string_view src,
                             const std::vector<std::pair<std::uint32_t, std::pair<std::string, std::string>>>& decls,
                             std::uint32_t use_offset) {
    if (recv.kind == NodeKind::Identifier) {
        std::string best;
        std::uint32_t best_off = 0;
        bool found = false;
        for (const auto& [off, entry] : decls) {
            if (entry.first == recv.name && off < use_offset && (!found || off >= best_off)) {
                best = entry.second;
                best_off = off;
                found = true;
            }
        }
        if (found) return best;
        return recv.name;
    }
    if (recv.kind == NodeKind::FieldAccess) {
        // pure identifier chains only (a.b.c)
        std::vector<std::string> parts;
        const Node* cur = &recv;
        while (cur) {
            if (cur->kind == NodeKind::FieldAccess) {
                parts.push_back(cur->name);
                cur = cur->children.empty() ? nullptr : &cur->children.front();
            } else if (cur->kind == NodeKind::Identifier) {
                parts.push_back(cur->name);
                cur = nullptr;
            } else {
                return {};
            }
        }
        std::string out;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            if (!out.empty()) out += '.';
            out += *it;
        }
        return out;
    }
    return {};
}

void collect_api_calls(const Node& n, std::string_view src, std::uint32_t begin, std::uint32_t end,
                       const std::vector<std::pair<std::uint32_t, std::pair<std::string, std::string>>>& decls,
                       std::vector<ApiSignature>& out) {
    if (n.end <= begin || n.begin >= end) return;
    if (is_invocation_node(n) && n.begin >= begin && n.end <= end) {
        ApiSignature sig;
        if (n.kind == NodeKind::ObjectCreation) {
            sig.receiver = n.name;
            sig.method = "<init>";
            for (const auto& c : n.children) {
                if (c.kind == NodeKind::ArgumentList) {
                    sig.arity = static_cast<int>(c.children.size());
                    break;
                }
            }
        } else {
            sig.method = n.name;
            for (const auto& c : n.children) {
                if (c.kind == NodeKind::ArgumentList) sig.arity = static_cast<int>(c.children.size());
                if (c.role == Role::Receiver) sig.receiver = resolve_receiver(c, src, decls, n.begin);
            }
        }
        out.push_back(std::move(sig));
    }
    for (const auto& c : n.children) collect_api_calls(c, src, begin, end, decls, out);
}

// Innermost method body (or initializer / whole tree) enclosing the range,
// used as the variable-declaration scope.
const Node* enclosing_decl_scope(const Node& root, std::uint32_t begin, std::uint32_t end) {
    const Node* scope = &root;
    const Node* cur = &root;
    while (true) {
        const Node* next = nullptr;
        for (const auto& c : cur->children) {
            if (contains_range(c, begin, end)) {
                next = &c;
                break;
            }
        }
        if (!next) break;
        if (is_method_like(*next) || next->kind == NodeKind::InitializerBlock ||
            next->kind == NodeKind::Lambda) {
            scope = next;
        }
        cur = next;
    }
    return scope;
}

}  // namespace

std::vector<ApiSignature> extract_api_calls(const SourceFile& file, std::uint32_t begin,
                                            std::uint32_t end) {
    std::vector<ApiSignature> out;
    if (!file.parsed()) return out;
    const Node& root = file.tree->root;
    const Node* scope = enclosing_decl_scope(root, begin, end);
    std::vector<std::pair<std::uint32_t, std::pair<std::string, std::string>>> decls;
    collect_declared_types(*scope, file.text(), decls);
    collect_api_calls(root, file.text(), begin, end, decls, out);
    return out;
}

std::vector<ApiSignature> extract_api_calls(const CodeSegment& segment) {
    return extract_api_calls(segment.file, segment.begin, segment.end);
}

std::vector<ApiSignature> extract_api_calls_from_snippet(std::string_view snippet) {
    std::vector<ApiSignature> out;
    auto res = java::parse_statements(snippet);
    if (!res.ok()) return out;
    std::vector<std::pair<std::uint32_t, std::pair<std::string, std::string>>> decls;
    collect_declared_types(res.tree->root, snippet, decls);
    collect_api_calls(res.tree->root, snippet, 0, static_cast<std::uint32_t>(snippet.size()),
                      decls, out);
    return out;
}

std::vector<ImportDecl> extract_imports(const SourceFile& file) {
    std::vector<ImportDecl> out;
    if (!file.parsed()) return out;
    for (const auto& c : file.tree->root.children) {
        if (c.kind != NodeKind::ImportDecl) continue;
        ImportDecl imp;
        imp.raw = std::string(c.text(file.text()));
        imp.target = c.name;
        imp.is_wildcard = c.has_flag(java::kFlagWildcardImport);
        imp.is_static = c.has_flag(java::kFlagStatic);
        if (!imp.is_wildcard) imp.simple_name = std::string(simple_name(imp.target));
        out.push_back(std::move(imp));
    }
    return out;
}

ScopeInfo locate_enclosing_scope(const SourceFile& file, std::uint32_t begin, std::uint32_t end) {
    ScopeInfo info;
    if (!file.parsed()) return info;
    const Node* cur = &file.tree->root;
    while (true) {
        const Node* next = nullptr;
        for (const auto& c : cur->children) {
            if (contains_range(c, begin, end) && !(c.begin == begin && c.end == end)) {
                next = &c;
                break;
            }
            if (contains_range(c, begin, end)) {
                next = &c;
                break;
            }
        }
        if (!next) break;
        if (is_class_like(*next)) {
            info.class_name = next->kind == NodeKind::AnonClassBody ? "<anonymous>" : next->name;
            info.method_name.reset();
        } else if (is_method_like(*next)) {
            info.method_name = next->name;
        } else if (next->kind == NodeKind::InitializerBlock) {
            info.method_name.reset();
        }
        cur = next;
    }
    return info;
}

std::vector<TryCatchRecord> extract_try_catch_blocks(const SourceFile& file) {
    std::vector<TryCatchRecord> out;
    if (!file.parsed()) return out;
    std::string_view src = file.text();
    walk(file.tree->root, [&](const Node& n) {
        if (n.kind != NodeKind::TryStmt) return true;
        std::vector<const Node*> catches;
        const Node* body = nullptr;
        for (const auto& c : n.children) {
            if (c.kind == NodeKind::CatchClause) catches.push_back(&c);
            if (c.kind == NodeKind::Block && c.role == Role::Body) body = &c;
        }
        if (catches.empty() || !body) return true;

        TryCatchRecord rec;
        rec.repo_id = file.repo_id;
        rec.path = file.path;
        rec.begin = n.begin;
        rec.end = n.end;
        rec.id = try_catch_record_id(rec.repo_id, rec.path, rec.begin, rec.end);
        rec.full_source = std::string(n.text(src));
        rec.try_source = std::string(src.substr(body->begin + 1, body->end - body->begin - 2));
        for (const Node* c : catches) {
            CatchClause clause;
            clause.variable = c->name;
            clause.source = std::string(c->text(src));
            for (const auto& t : c->children) {
                if (t.kind == NodeKind::TypeNode) clause.exception_types.push_back(t.name);
                if (t.kind == NodeKind::Block)
                    clause.body = std::string(src.substr(t.begin + 1, t.end - t.begin - 2));
            }
            rec.catch_clauses.push_back(std::move(clause));
        }
        ScopeInfo scope = locate_enclosing_scope(file, n.begin, n.end);
        rec.enclosing_class = scope.class_name;
        rec.enclosing_method = scope.method_name;
        rec.api_calls = extract_api_calls(file, body->begin, body->end);
        out.push_back(std::move(rec));
        return true;  // keep walking: nested try statements yield separate records
    });
    std::sort(out.begin(), out.end(),
              [](const TryCatchRecord& a, const TryCatchRecord& b) { return a.begin < b.begin; });
    return out;
}

namespace {

bool subtree_has_invocation(const Node& n) {
    bool found = false;
    walk(n, [&](const Node& c) {
        if (found) return false;
        if (is_invocation_node(c) ||
            (c.kind == NodeKind::MethodInvocation && c.has_flag(java::kFlagCtorChain))) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

void emit_header_invocations(const Node& n, std::string_view src, std::vector<std::string>& lines) {
    walk(n, [&](const Node& c) {
        if (is_invocation_node(c) ||
            (c.kind == NodeKind::MethodInvocation && c.has_flag(java::kFlagCtorChain))) {
            lines.push_back(collapse_ws(c.text(src)) + ";");
            return false;  // the outermost call line already shows nested calls
        }
        return true;
    });
}

void filter_statement(const Node& stmt, std::string_view src, std::vector<std::string>& lines);

void filter_children(const Node& holder, std::string_view src, std::vector<std::string>& lines) {
    for (const auto& c : holder.children) filter_statement(c, src, lines);
}

void filter_statement(const Node& stmt, std::string_view src, std::vector<std::string>& lines) {
    switch (stmt.kind) {
        case NodeKind::Block:
            filter_children(stmt, src, lines);
            return;
        case NodeKind::ExprStmt:
        case NodeKind::LocalVarDecl:
        case NodeKind::ReturnStmt:
        case NodeKind::ThrowStmt:
        case NodeKind::AssertStmt:
        case NodeKind::YieldStmt: {
            if (subtree_has_invocation(stmt)) lines.push_back(collapse_ws(stmt.text(src)));
            return;
        }
        case NodeKind::IfStmt:
        case NodeKind::ForStmt:
        case NodeKind::EnhancedForStmt:
        case NodeKind::WhileStmt:
        case NodeKind::DoStmt:
        case NodeKind::SwitchStmt:
        case NodeKind::SynchronizedStmt:
        case NodeKind::TryStmt: {
            for (const auto& c : stmt.children) {
                if (c.role == Role::Header) {
                    emit_header_invocations(c, src, lines);
                } else if (c.kind == NodeKind::ResourceSpec) {
                    for (const auto& r : c.children) {
                        if (subtree_has_invocation(r)) lines.push_back(collapse_ws(r.text(src)) + ";");
                    }
                } else if (c.kind == NodeKind::SwitchCase) {
                    filter_children(c, src, lines);
                } else if (c.kind == NodeKind::CatchClause) {
                    for (const auto& b : c.children) {
                        if (b.kind == NodeKind::Block) filter_statement(b, src, lines);
                    }
                } else {
                    filter_statement(c, src, lines);
                }
            }
            return;
        }
        case NodeKind::LabeledStmt:
            filter_children(stmt, src, lines);
            return;
        default:
            // expressions appearing as statement-like children (switch arrows)
            if (stmt.kind == NodeKind::MethodInvocation || stmt.kind == NodeKind::ObjectCreation) {
                lines.push_back(collapse_ws(stmt.text(src)) + ";");
            }
            return;
    }
}

}  // namespace

std::string filter_to_invocations(const SourceFile& file, const Node& body) {
    std::vector<std::string> lines;
    filter_statement(body, file.text(), lines);
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

std::string filter_to_invocations_snippet(std::string_view body_text) {
    auto res = java::parse_statements(body_text);
    if (!res.ok()) return {};
    std::vector<std::string> lines;
    filter_statement(res.tree->root, body_text, lines);
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

}  // namespace exkit
