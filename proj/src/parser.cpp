#include "exkit/ast.hpp"

#include <cstring>
#include <stdexcept>

#include "exkit/lexer.hpp"

namespace exkit::java {

namespace {

struct ParseError {
    std::uint32_t offset;
    std::string message;
};

bool is_primitive_name(std::string_view s) {
    return s == "int" || s == "long" || s == "short" || s == "byte" || s == "char" ||
           s == "boolean" || s == "float" || s == "double" || s == "void";
}

bool is_modifier_name(std::string_view s) {
    return s == "public" || s == "private" || s == "protected" || s == "static" ||
           s == "final" || s == "abstract" || s == "native" || s == "synchronized" ||
           s == "transient" || s == "volatile" || s == "strictfp" || s == "default";
}

class Parser {
public:
    Parser(std::string_view src, std::vector<Token> toks)
        : src_(src), toks_(std::move(toks)) {}

    Node parse_unit() {
        Node unit;
        unit.kind = NodeKind::CompilationUnit;
        unit.begin = 0;
        unit.end = static_cast<std::uint32_t>(src_.size());
        if (is_kw("package")) {
            Node pkg = start(NodeKind::PackageDecl);
            advance();
            pkg.name = parse_qualified_name();
            expect_op(";");
            finish(pkg);
            unit.children.push_back(std::move(pkg));
        }
        while (is_kw("import")) unit.children.push_back(parse_import());
        while (!at_end()) {
            if (is_op(";")) {
                advance();
                continue;
            }
            unit.children.push_back(parse_type_decl());
        }
        return unit;
    }

    Node parse_statement_list() {
        Node block;
        block.kind = NodeKind::Block;
        block.begin = 0;
        block.end = static_cast<std::uint32_t>(src_.size());
        while (!at_end()) block.children.push_back(parse_statement());
        return block;
    }

private:
    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    // --- token access -------------------------------------------------

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t k = 1) const {
        std::size_t i = pos_ + k;
        return toks_[i < toks_.size() ? i : toks_.size() - 1];
    }
    bool at_end() const { return cur().kind == TokKind::EndOfFile; }
    std::string_view text(const Token& t) const { return t.text(src_); }
    void advance() {
        if (!at_end()) ++pos_;
    }

    bool is_op(std::string_view s, std::size_t k = 0) const {
        const Token& t = k == 0 ? cur() : peek(k);
        return t.kind == TokKind::Operator && text(t) == s;
    }
    bool is_kw(std::string_view s, std::size_t k = 0) const {
        const Token& t = k == 0 ? cur() : peek(k);
        return t.kind == TokKind::Keyword && text(t) == s;
    }
    bool is_ident(std::size_t k = 0) const {
        const Token& t = k == 0 ? cur() : peek(k);
        return t.kind == TokKind::Identifier;
    }

    [[noreturn]] void fail(std::string msg) const { throw ParseError{cur().begin, std::move(msg)}; }

    Token expect_op(std::string_view s) {
        if (!is_op(s)) fail("expected '" + std::string(s) + "'");
        Token t = cur();
        advance();
        return t;
    }
    Token expect_kw(std::string_view s) {
        if (!is_kw(s)) fail("expected '" + std::string(s) + "'");
        Token t = cur();
        advance();
        return t;
    }
    Token expect_ident() {
        if (!is_ident()) fail("expected identifier");
        Token t = cur();
        advance();
        return t;
    }

    // --- node helpers --------------------------------------------------

    Node start(NodeKind k) const {
        Node n;
        n.kind = k;
        n.begin = cur().begin;
        n.end = cur().begin;
        return n;
    }
    void finish(Node& n) const {
        std::uint32_t e = pos_ > 0 ? toks_[pos_ - 1].end : n.begin;
        n.end = e > n.begin ? e : n.begin;
        for (const auto& c : n.children) {
            if (c.end > n.end) n.end = c.end;
        }
    }

    // --- scans (no node construction, no side effects) ------------------

    bool scan_type_args(std::size_t& p) const {
        // p at '<'; returns true with p past the matching '>'.
        if (!tok_is_op(p, "<")) return false;
        int depth = 0;
        while (p < toks_.size()) {
            const Token& t = toks_[p];
            if (t.kind == TokKind::Operator) {
                std::string_view s = text(t);
                if (s == "<") {
                    ++depth;
                } else if (s == ">") {
                    --depth;
                } else if (s == ">>") {
                    depth -= 2;
                } else if (s == ">>>") {
                    depth -= 3;
                } else if (s != "," && s != "." && s != "?" && s != "[" && s != "]" &&
                           s != "&" && s != "@") {
                    return false;
                }
                ++p;
                if (depth <= 0) return depth == 0;
                continue;
            }
            if (t.kind == TokKind::Identifier ||
                (t.kind == TokKind::Keyword &&
                 (text(t) == "extends" || text(t) == "super" || is_primitive_name(text(t))))) {
                ++p;
                continue;
            }
            return false;
        }
        return false;
    }

    bool tok_is_op(std::size_t p, std::string_view s) const {
        return p < toks_.size() && toks_[p].kind == TokKind::Operator && text(toks_[p]) == s;
    }
    bool tok_is_ident(std::size_t p) const {
        return p < toks_.size() && toks_[p].kind == TokKind::Identifier;
    }
    bool tok_is_kw(std::size_t p, std::string_view s) const {
        return p < toks_.size() && toks_[p].kind == TokKind::Keyword && text(toks_[p]) == s;
    }

    // Scans a type starting at p. Returns true and advances p past it.
    bool scan_type(std::size_t& p) const {
        if (p >= toks_.size()) return false;
        const Token& t = toks_[p];
        if (t.kind == TokKind::Keyword && (is_primitive_name(text(t)) || text(t) == "var")) {
            ++p;
        } else if (t.kind == TokKind::Identifier) {
            ++p;
            if (tok_is_op(p, "<") && !scan_type_args(p)) return false;
            while (tok_is_op(p, ".") && tok_is_ident(p + 1)) {
                p += 2;
                if (tok_is_op(p, "<") && !scan_type_args(p)) return false;
            }
        } else {
            return false;
        }
        while (tok_is_op(p, "[") && tok_is_op(p + 1, "]")) p += 2;
        return true;
    }

    // Local variable declaration lookahead from the current position.
    bool looks_like_local_decl() const {
        std::size_t p = pos_;
        while (tok_is_kw(p, "final")) ++p;
        while (tok_is_op(p, "@")) {
            ++p;
            if (!tok_is_ident(p)) return false;
            ++p;
            while (tok_is_op(p, ".") && tok_is_ident(p + 1)) p += 2;
            if (tok_is_op(p, "(")) {
                if (!skip_balanced(p, "(", ")")) return false;
            }
        }
        if (!scan_type(p)) return false;
        if (!tok_is_ident(p)) return false;
        ++p;
        while (tok_is_op(p, "[") && tok_is_op(p + 1, "]")) p += 2;
        return tok_is_op(p, "=") || tok_is_op(p, ";") || tok_is_op(p, ",") || tok_is_op(p, ":");
    }

    bool skip_balanced(std::size_t& p, std::string_view open, std::string_view close) const {
        if (!tok_is_op(p, open)) return false;
        int depth = 0;
        while (p < toks_.size() && toks_[p].kind != TokKind::EndOfFile) {
            if (tok_is_op(p, open)) ++depth;
            if (tok_is_op(p, close)) {
                --depth;
                if (depth == 0) {
                    ++p;
                    return true;
                }
            }
            ++p;
        }
        return false;
    }

    // --- names and types -------------------------------------------------

    std::string parse_qualified_name() {
        std::string name(text(expect_ident()));
        while (is_op(".") && (is_ident(1) || is_op("*", 1))) {
            advance();
            if (is_op("*")) {
                name += ".*";
                advance();
                break;
            }
            name += '.';
            name += text(expect_ident());
        }
        return name;
    }

    Node parse_annotation() {
        Node ann = start(NodeKind::Annotation);
        expect_op("@");
        if (is_kw("interface")) fail("annotation type declarations are not supported here");
        ann.name = parse_qualified_name();
        if (is_op("(")) {
            std::size_t p = pos_;
            if (!skip_balanced(p, "(", ")")) fail("unbalanced annotation arguments");
            pos_ = p;
        }
        finish(ann);
        return ann;
    }

    Node parse_type() {
        Node ty = start(NodeKind::TypeNode);
        while (is_op("@")) ty.children.push_back(parse_annotation());
        if (cur().kind == TokKind::Keyword && (is_primitive_name(text(cur())) || text(cur()) == "var")) {
            ty.name = std::string(text(cur()));
            advance();
        } else {
            ty.name = std::string(text(expect_ident()));
            skip_type_args_if_present();
            while (is_op(".") && is_ident(1)) {
                advance();
                ty.name += '.';
                ty.name += text(expect_ident());
                skip_type_args_if_present();
            }
        }
        while (is_op("[") && is_op("]", 1)) {
            advance();
            advance();
        }
        finish(ty);
        return ty;
    }

    void skip_type_args_if_present() {
        if (!is_op("<")) return;
        std::size_t p = pos_;
        if (scan_type_args(p)) pos_ = p;
    }

    // --- declarations ------------------------------------------------------

    Node parse_import() {
        Node imp = start(NodeKind::ImportDecl);
        expect_kw("import");
        if (is_kw("static")) {
            imp.flags |= kFlagStatic;
            advance();
        }
        imp.name = parse_qualified_name();
        if (exkit::ends_with(imp.name, ".*")) imp.flags |= kFlagWildcardImport;
        expect_op(";");
        finish(imp);
        return imp;
    }

    std::uint8_t parse_modifiers(std::vector<Node>& annotations) {
        std::uint8_t flags = 0;
        while (true) {
            if (is_op("@") && !is_kw("interface", 1)) {
                annotations.push_back(parse_annotation());
                continue;
            }
            if (cur().kind == TokKind::Keyword && is_modifier_name(text(cur()))) {
                if (text(cur()) == "static") flags |= kFlagStatic;
                advance();
                continue;
            }
            break;
        }
        return flags;
    }

    Node parse_type_decl() {
        Node decl = start(NodeKind::ClassDecl);
        decl.flags = parse_modifiers(decl.children);
        if (is_kw("class")) {
            decl.kind = NodeKind::ClassDecl;
            advance();
        } else if (is_kw("interface")) {
            decl.kind = NodeKind::InterfaceDecl;
            advance();
        } else if (is_kw("enum")) {
            decl.kind = NodeKind::EnumDecl;
            advance();
        } else if (is_kw("record")) {
            decl.kind = NodeKind::ClassDecl;
            advance();
        } else {
            fail("expected type declaration");
        }
        decl.name = std::string(text(expect_ident()));
        skip_type_args_if_present();
        if (is_op("(")) {  // record components
            std::size_t p = pos_;
            if (!skip_balanced(p, "(", ")")) fail("unbalanced record components");
            pos_ = p;
        }
        if (is_kw("extends")) {
            advance();
            Node base = parse_type();
            base.role = Role::Extends;
            decl.children.push_back(std::move(base));
            // interfaces may extend several types
            while (is_op(",")) {
                advance();
                Node extra = parse_type();
                extra.role = Role::Extends;
                decl.children.push_back(std::move(extra));
            }
        }
        if (is_kw("implements")) {
            advance();
            parse_type();
            while (is_op(",")) {
                advance();
                parse_type();
            }
        }
        parse_class_body(decl);
        finish(decl);
        return decl;
    }

    void parse_class_body(Node& decl) {
        expect_op("{");
        if (decl.kind == NodeKind::EnumDecl) parse_enum_constants(decl);
        while (!is_op("}")) {
            if (at_end()) fail("unterminated class body");
            parse_member(decl);
        }
        expect_op("}");
    }

    void parse_enum_constants(Node& decl) {
        while (is_ident() || is_op("@")) {
            Node c = start(NodeKind::EnumConstant);
            while (is_op("@")) c.children.push_back(parse_annotation());
            if (!is_ident()) break;
            c.name = std::string(text(expect_ident()));
            if (is_op("(")) c.children.push_back(parse_argument_list());
            if (is_op("{")) {
                Node body = start(NodeKind::AnonClassBody);
                parse_class_body_into(body);
                finish(body);
                c.children.push_back(std::move(body));
            }
            finish(c);
            decl.children.push_back(std::move(c));
            if (is_op(",")) {
                advance();
                continue;
            }
            break;
        }
        if (is_op(";")) advance();
    }

    void parse_class_body_into(Node& holder) {
        expect_op("{");
        while (!is_op("}")) {
            if (at_end()) fail("unterminated class body");
            parse_member(holder);
        }
        expect_op("}");
    }

    void parse_member(Node& decl) {
        if (is_op(";")) {
            advance();
            return;
        }
        std::size_t save = pos_;
        std::vector<Node> annotations;
        std::uint8_t flags = parse_modifiers(annotations);

        if (is_kw("class") || is_kw("interface") || is_kw("enum") || is_kw("record")) {
            pos_ = save;
            decl.children.push_back(parse_type_decl());
            return;
        }
        if (is_op("{")) {
            Node init = start(NodeKind::InitializerBlock);
            init.flags = flags;
            init.begin = toks_[save].begin;
            init.children.push_back(parse_block());
            finish(init);
            decl.children.push_back(std::move(init));
            return;
        }
        if (is_op("<")) {  // generic method type parameters
            std::size_t p = pos_;
            if (!scan_type_args(p)) fail("malformed type parameters");
            pos_ = p;
        }
        // constructor: Name '(' where Name matches the enclosing type
        if (is_ident() && is_op("(", 1) && text(cur()) == decl.name) {
            Node ctor = start(NodeKind::ConstructorDecl);
            ctor.begin = toks_[save].begin;
            ctor.flags = flags;
            for (auto& a : annotations) ctor.children.push_back(std::move(a));
            ctor.name = std::string(text(expect_ident()));
            ctor.children.push_back(parse_formal_params());
            parse_throws_clause();
            ctor.children.push_back(parse_block());
            finish(ctor);
            decl.children.push_back(std::move(ctor));
            return;
        }
        Node type = parse_type();
        if (is_ident() && is_op("(", 1)) {
            Node method = start(NodeKind::MethodDecl);
            method.begin = toks_[save].begin;
            method.flags = flags;
            for (auto& a : annotations) method.children.push_back(std::move(a));
            method.children.push_back(std::move(type));
            method.name = std::string(text(expect_ident()));
            method.children.push_back(parse_formal_params());
            while (is_op("[") && is_op("]", 1)) {
                advance();
                advance();
            }
            parse_throws_clause();
            if (is_op("{")) {
                method.children.push_back(parse_block());
            } else {
                expect_op(";");
            }
            finish(method);
            decl.children.push_back(std::move(method));
            return;
        }
        // field declaration
        Node field = start(NodeKind::FieldDecl);
        field.begin = toks_[save].begin;
        field.flags = flags;
        for (auto& a : annotations) field.children.push_back(std::move(a));
        field.children.push_back(std::move(type));
        parse_declarators(field);
        expect_op(";");
        finish(field);
        decl.children.push_back(std::move(field));
    }

    void parse_throws_clause() {
        if (!is_kw("throws")) return;
        advance();
        parse_type();
        while (is_op(",")) {
            advance();
            parse_type();
        }
    }

    Node parse_formal_params() {
        Node params = start(NodeKind::FormalParams);
        expect_op("(");
        if (!is_op(")")) {
            while (true) {
                Node p = start(NodeKind::FormalParam);
                while (is_kw("final") || is_op("@")) {
                    if (is_op("@"))
                        p.children.push_back(parse_annotation());
                    else
                        advance();
                }
                Node ty = parse_type();
                if (is_op("...")) advance();
                p.children.push_back(std::move(ty));
                if (is_kw("this")) {           // receiver parameter
                    p.name = "this";
                    advance();
                } else {
                    p.name = std::string(text(expect_ident()));
                }
                while (is_op("[") && is_op("]", 1)) {
                    advance();
                    advance();
                }
                finish(p);
                params.children.push_back(std::move(p));
                if (is_op(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_op(")");
        finish(params);
        return params;
    }

    void parse_declarators(Node& holder) {
        while (true) {
            Node d = start(NodeKind::VarDeclarator);
            d.name = std::string(text(expect_ident()));
            while (is_op("[") && is_op("]", 1)) {
                advance();
                advance();
            }
            if (is_op("=")) {
                advance();
                Node init = is_op("{") ? parse_array_init() : parse_expression();
                init.role = Role::Initializer;
                d.children.push_back(std::move(init));
            }
            finish(d);
            holder.children.push_back(std::move(d));
            if (is_op(",")) {
                advance();
                continue;
            }
            break;
        }
    }

    Node parse_array_init() {
        Node init = start(NodeKind::ArrayInit);
        expect_op("{");
        while (!is_op("}")) {
            if (at_end()) fail("unterminated array initializer");
            if (is_op("{")) {
                init.children.push_back(parse_array_init());
            } else {
                init.children.push_back(parse_expression());
            }
            if (is_op(",")) advance();
        }
        expect_op("}");
        finish(init);
        return init;
    }

    // --- statements ---------------------------------------------------------

    Node parse_block() {
        Node block = start(NodeKind::Block);
        expect_op("{");
        while (!is_op("}")) {
            if (at_end()) fail("unterminated block");
            block.children.push_back(parse_statement());
        }
        expect_op("}");
        finish(block);
        return block;
    }

    Node parse_statement() {
        if (is_op("{")) return parse_block();
        if (is_op(";")) {
            Node s = start(NodeKind::EmptyStmt);
            advance();
            finish(s);
            return s;
        }
        if (is_kw("if")) return parse_if();
        if (is_kw("for")) return parse_for();
        if (is_kw("while")) return parse_while();
        if (is_kw("do")) return parse_do();
        if (is_kw("switch")) return parse_switch();
        if (is_kw("try")) return parse_try();
        if (is_kw("return")) {
            Node s = start(NodeKind::ReturnStmt);
            advance();
            if (!is_op(";")) s.children.push_back(parse_expression());
            expect_op(";");
            finish(s);
            return s;
        }
        if (is_kw("throw")) {
            Node s = start(NodeKind::ThrowStmt);
            advance();
            s.children.push_back(parse_expression());
            expect_op(";");
            finish(s);
            return s;
        }
        if (is_kw("break") || is_kw("continue")) {
            Node s = start(is_kw("break") ? NodeKind::BreakStmt : NodeKind::ContinueStmt);
            advance();
            if (is_ident()) {
                s.name = std::string(text(cur()));
                advance();
            }
            expect_op(";");
            finish(s);
            return s;
        }
        if (is_kw("yield")) {
            Node s = start(NodeKind::YieldStmt);
            advance();
            s.children.push_back(parse_expression());
            expect_op(";");
            finish(s);
            return s;
        }
        if (is_kw("assert")) {
            Node s = start(NodeKind::AssertStmt);
            advance();
            s.children.push_back(parse_expression());
            if (is_op(":")) {
                advance();
                s.children.push_back(parse_expression());
            }
            expect_op(";");
            finish(s);
            return s;
        }
        if (is_kw("synchronized") && is_op("(", 1)) {
            Node s = start(NodeKind::SynchronizedStmt);
            advance();
            expect_op("(");
            Node h = parse_expression();
            h.role = Role::Header;
            s.children.push_back(std::move(h));
            expect_op(")");
            Node b = parse_block();
            b.role = Role::Body;
            s.children.push_back(std::move(b));
            finish(s);
            return s;
        }
        // local class declarations
        {
            std::size_t p = pos_;
            while (tok_is_kw(p, "final") || tok_is_kw(p, "abstract") || tok_is_kw(p, "static")) ++p;
            if (tok_is_kw(p, "class") || tok_is_kw(p, "enum") || tok_is_kw(p, "interface")) {
                return parse_type_decl();
            }
        }
        if (is_ident() && is_op(":", 1) && !is_op("::", 1)) {
            Node s = start(NodeKind::LabeledStmt);
            s.name = std::string(text(expect_ident()));
            expect_op(":");
            s.children.push_back(parse_statement());
            finish(s);
            return s;
        }
        if (looks_like_local_decl()) return parse_local_var_decl(true);
        Node s = start(NodeKind::ExprStmt);
        s.children.push_back(parse_expression());
        expect_op(";");
        finish(s);
        return s;
    }

    Node parse_local_var_decl(bool want_semi) {
        Node decl = start(NodeKind::LocalVarDecl);
        std::vector<Node> annotations;
        decl.flags = parse_modifiers(annotations);
        for (auto& a : annotations) decl.children.push_back(std::move(a));
        decl.children.push_back(parse_type());
        parse_declarators(decl);
        if (want_semi) expect_op(";");
        finish(decl);
        return decl;
    }

    Node parse_if() {
        Node s = start(NodeKind::IfStmt);
        expect_kw("if");
        expect_op("(");
        Node cond = parse_expression();
        cond.role = Role::Header;
        s.children.push_back(std::move(cond));
        expect_op(")");
        Node then = parse_statement();
        then.role = Role::Body;
        s.children.push_back(std::move(then));
        if (is_kw("else")) {
            advance();
            Node els = parse_statement();
            els.role = Role::ElseBranch;
            s.children.push_back(std::move(els));
        }
        finish(s);
        return s;
    }

    Node parse_while() {
        Node s = start(NodeKind::WhileStmt);
        expect_kw("while");
        expect_op("(");
        Node cond = parse_expression();
        cond.role = Role::Header;
        s.children.push_back(std::move(cond));
        expect_op(")");
        Node body = parse_statement();
        body.role = Role::Body;
        s.children.push_back(std::move(body));
        finish(s);
        return s;
    }

    Node parse_do() {
        Node s = start(NodeKind::DoStmt);
        expect_kw("do");
        Node body = parse_statement();
        body.role = Role::Body;
        s.children.push_back(std::move(body));
        expect_kw("while");
        expect_op("(");
        Node cond = parse_expression();
        cond.role = Role::Header;
        s.children.push_back(std::move(cond));
        expect_op(")");
        expect_op(";");
        finish(s);
        return s;
    }

    Node parse_for() {
        // enhanced for: a ':' at paren depth 1 before any ';'
        std::size_t p = pos_ + 1;
        bool enhanced = false;
        if (tok_is_op(p, "(")) {
            int depth = 0;
            for (std::size_t q = p; q < toks_.size(); ++q) {
                if (tok_is_op(q, "(")) ++depth;
                if (tok_is_op(q, ")")) {
                    if (--depth == 0) break;
                }
                if (depth == 1 && tok_is_op(q, ";")) break;
                if (depth == 1 && tok_is_op(q, ":") && !tok_is_op(q + 1, ":")) {
                    enhanced = true;
                    break;
                }
                if (tok_is_op(q, "?")) break;  // ternary ':' would confuse the scan
            }
        }
        if (enhanced) {
            Node s = start(NodeKind::EnhancedForStmt);
            expect_kw("for");
            expect_op("(");
            Node var = parse_local_var_decl_header();
            var.role = Role::Header;
            s.children.push_back(std::move(var));
            expect_op(":");
            Node iter = parse_expression();
            iter.role = Role::Header;
            s.children.push_back(std::move(iter));
            expect_op(")");
            Node body = parse_statement();
            body.role = Role::Body;
            s.children.push_back(std::move(body));
            finish(s);
            return s;
        }
        Node s = start(NodeKind::ForStmt);
        expect_kw("for");
        expect_op("(");
        if (!is_op(";")) {
            if (looks_like_local_decl()) {
                Node init = parse_local_var_decl(false);
                init.role = Role::Header;
                s.children.push_back(std::move(init));
            } else {
                while (true) {
                    Node e = parse_expression();
                    e.role = Role::Header;
                    s.children.push_back(std::move(e));
                    if (is_op(",")) {
                        advance();
                        continue;
                    }
                    break;
                }
            }
        }
        expect_op(";");
        if (!is_op(";")) {
            Node cond = parse_expression();
            cond.role = Role::Header;
            s.children.push_back(std::move(cond));
        }
        expect_op(";");
        if (!is_op(")")) {
            while (true) {
                Node e = parse_expression();
                e.role = Role::Header;
                s.children.push_back(std::move(e));
                if (is_op(",")) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect_op(")");
        Node body = parse_statement();
        body.role = Role::Body;
        s.children.push_back(std::move(body));
        finish(s);
        return s;
    }

    // "Type name" without initializer, as used by enhanced-for headers.
    Node parse_local_var_decl_header() {
        Node decl = start(NodeKind::LocalVarDecl);
        std::vector<Node> annotations;
        decl.flags = parse_modifiers(annotations);
        for (auto& a : annotations) decl.children.push_back(std::move(a));
        decl.children.push_back(parse_type());
        Node d = start(NodeKind::VarDeclarator);
        d.name = std::string(text(expect_ident()));
        finish(d);
        decl.children.push_back(std::move(d));
        finish(decl);
        return decl;
    }

    Node parse_switch() {
        Node s = start(NodeKind::SwitchStmt);
        expect_kw("switch");
        expect_op("(");
        Node sel = parse_expression();
        sel.role = Role::Header;
        s.children.push_back(std::move(sel));
        expect_op(")");
        expect_op("{");
        while (!is_op("}")) {
            if (at_end()) fail("unterminated switch body");
            Node c = start(NodeKind::SwitchCase);
            if (is_kw("case")) {
                advance();
                c.children.push_back(parse_expression());
                while (is_op(",")) {
                    advance();
                    c.children.push_back(parse_expression());
                }
            } else if (is_kw("default")) {
                advance();
            } else {
                fail("expected 'case' or 'default'");
            }
            if (is_op("->")) {
                advance();
                if (is_op("{")) {
                    c.children.push_back(parse_block());
                } else if (is_kw("throw")) {
                    c.children.push_back(parse_statement());
                } else {
                    Node e = parse_expression();
                    c.children.push_back(std::move(e));
                    expect_op(";");
                }
            } else {
                expect_op(":");
                while (!is_kw("case") && !is_kw("default") && !is_op("}")) {
                    if (at_end()) fail("unterminated switch body");
                    c.children.push_back(parse_statement());
                }
            }
            finish(c);
            s.children.push_back(std::move(c));
        }
        expect_op("}");
        finish(s);
        return s;
    }

    Node parse_try() {
        Node s = start(NodeKind::TryStmt);
        expect_kw("try");
        if (is_op("(")) {
            Node res = start(NodeKind::ResourceSpec);
            res.role = Role::Resources;
            advance();
            while (!is_op(")")) {
                if (at_end()) fail("unterminated resource specification");
                if (looks_like_local_decl()) {
                    res.children.push_back(parse_local_var_decl(false));
                } else {
                    res.children.push_back(parse_expression());
                }
                if (is_op(";")) advance();
            }
            expect_op(")");
            finish(res);
            s.children.push_back(std::move(res));
        }
        Node body = parse_block();
        body.role = Role::Body;
        s.children.push_back(std::move(body));
        bool any_tail = false;
        while (is_kw("catch")) {
            any_tail = true;
            Node c = start(NodeKind::CatchClause);
            advance();
            expect_op("(");
            while (is_kw("final") || is_op("@")) {
                if (is_op("@"))
                    c.children.push_back(parse_annotation());
                else
                    advance();
            }
            c.children.push_back(parse_type());
            while (is_op("|")) {
                advance();
                c.children.push_back(parse_type());
            }
            c.name = std::string(text(expect_ident()));
            expect_op(")");
            c.children.push_back(parse_block());
            finish(c);
            s.children.push_back(std::move(c));
        }
        if (is_kw("finally")) {
            any_tail = true;
            advance();
            Node fin = parse_block();
            fin.role = Role::Finally;
            s.children.push_back(std::move(fin));
        }
        bool has_resources = !s.children.empty() && s.children.front().kind == NodeKind::ResourceSpec;
        if (!any_tail && !has_resources) fail("try statement requires catch, finally, or resources");
        finish(s);
        return s;
    }

    // --- expressions ----------------------------------------------------------

    Node parse_expression() { return parse_assignment(); }

    bool is_assign_op() const {
        if (cur().kind != TokKind::Operator) return false;
        std::string_view s = text(cur());
        return s == "=" || s == "+=" || s == "-=" || s == "*=" || s == "/=" || s == "%=" ||
               s == "&=" || s == "|=" || s == "^=" || s == "<<=" || s == ">>=" || s == ">>>=";
    }

    Node parse_assignment() {
        Node lhs = parse_ternary();
        if (is_assign_op()) {
            Node a = Node{};
            a.kind = NodeKind::Assignment;
            a.begin = lhs.begin;
            a.name = std::string(text(cur()));
            advance();
            Node rhs = is_op("{") ? parse_array_init() : parse_assignment();
            a.children.push_back(std::move(lhs));
            a.children.push_back(std::move(rhs));
            finish(a);
            return a;
        }
        return lhs;
    }

    Node parse_ternary() {
        Node cond = parse_binary(0);
        if (is_op("?")) {
            Node t = Node{};
            t.kind = NodeKind::Ternary;
            t.begin = cond.begin;
            advance();
            Node yes = parse_expression();
            expect_op(":");
            Node no = parse_ternary();
            t.children.push_back(std::move(cond));
            t.children.push_back(std::move(yes));
            t.children.push_back(std::move(no));
            finish(t);
            return t;
        }
        return cond;
    }

    // Binary precedence table, lowest first.
    int binary_level() const {
        if (cur().kind == TokKind::Keyword && text(cur()) == "instanceof") return 5;
        if (cur().kind != TokKind::Operator) return -1;
        std::string_view s = text(cur());
        if (s == "||") return 0;
        if (s == "&&") return 1;
        if (s == "|") return 2;
        if (s == "^") return 2;
        if (s == "&") return 3;
        if (s == "==" || s == "!=") return 4;
        if (s == "<" || s == ">" || s == "<=" || s == ">=") return 5;
        if (s == "<<" || s == ">>" || s == ">>>") return 6;
        if (s == "+" || s == "-") return 7;
        if (s == "*" || s == "/" || s == "%") return 8;
        return -1;
    }

    Node parse_binary(int min_level) {
        Node lhs = parse_unary();
        while (true) {
            int level = binary_level();
            if (level < min_level) return lhs;
            if (cur().kind == TokKind::Keyword && text(cur()) == "instanceof") {
                Node e = Node{};
                e.kind = NodeKind::InstanceOfExpr;
                e.begin = lhs.begin;
                advance();
                e.children.push_back(std::move(lhs));
                e.children.push_back(parse_type());
                if (is_ident()) {  // pattern variable
                    e.name = std::string(text(cur()));
                    advance();
                }
                finish(e);
                lhs = std::move(e);
                continue;
            }
            Node b = Node{};
            b.kind = NodeKind::Binary;
            b.begin = lhs.begin;
            b.name = std::string(text(cur()));
            advance();
            Node rhs = parse_binary(level + 1);
            b.children.push_back(std::move(lhs));
            b.children.push_back(std::move(rhs));
            finish(b);
            lhs = std::move(b);
        }
    }

    bool looks_like_cast() const {
        if (!is_op("(")) return false;
        std::size_t p = pos_ + 1;
        if (!scan_type(p)) return false;
        // intersection casts: (A & B) x
        while (tok_is_op(p, "&")) {
            ++p;
            if (!scan_type(p)) return false;
        }
        if (!tok_is_op(p, ")")) return false;
        std::size_t after = p + 1;
        if (after >= toks_.size()) return false;
        const Token& t = toks_[after];
        bool primitive = toks_[pos_ + 1].kind == TokKind::Keyword &&
                         is_primitive_name(text(toks_[pos_ + 1]));
        switch (t.kind) {
            case TokKind::Identifier:
            case TokKind::IntLit:
            case TokKind::FloatLit:
            case TokKind::CharLit:
            case TokKind::StringLit:
                return true;
            case TokKind::Keyword: {
                std::string_view s = text(t);
                return s == "this" || s == "super" || s == "new" || s == "true" ||
                       s == "false" || s == "null";
            }
            case TokKind::Operator: {
                std::string_view s = text(t);
                if (s == "(" || s == "!" || s == "~") return true;
                if (primitive && (s == "+" || s == "-" || s == "++" || s == "--")) return true;
                return false;
            }
            default:
                return false;
        }
    }

    Node parse_unary() {
        if (cur().kind == TokKind::Operator) {
            std::string_view s = text(cur());
            if (s == "+" || s == "-" || s == "!" || s == "~" || s == "++" || s == "--") {
                Node u = start(NodeKind::Unary);
                u.name = std::string(s);
                advance();
                u.children.push_back(parse_unary());
                finish(u);
                return u;
            }
        }
        if (looks_like_cast()) {
            Node c = start(NodeKind::Cast);
            expect_op("(");
            c.children.push_back(parse_type());
            while (is_op("&")) {
                advance();
                c.children.push_back(parse_type());
            }
            expect_op(")");
            c.children.push_back(parse_unary());
            finish(c);
            return c;
        }
        return parse_postfix();
    }

    bool looks_like_lambda() const {
        if (is_ident() && is_op("->", 1)) return true;
        if (!is_op("(")) return false;
        std::size_t p = pos_;
        Parser* self = const_cast<Parser*>(this);
        if (!self->skip_balanced(p, "(", ")")) return false;
        return tok_is_op(p, "->");
    }

    Node parse_lambda() {
        Node l = start(NodeKind::Lambda);
        if (is_ident()) {
            Node p = start(NodeKind::FormalParam);
            p.name = std::string(text(expect_ident()));
            finish(p);
            l.children.push_back(std::move(p));
        } else {
            expect_op("(");
            while (!is_op(")")) {
                if (at_end()) fail("unterminated lambda parameters");
                Node p = start(NodeKind::FormalParam);
                while (is_kw("final") || is_op("@")) {
                    if (is_op("@"))
                        p.children.push_back(parse_annotation());
                    else
                        advance();
                }
                // typed or untyped parameter
                std::size_t q = pos_;
                if (scan_type(q) && tok_is_ident(q)) {
                    p.children.push_back(parse_type());
                }
                p.name = std::string(text(expect_ident()));
                finish(p);
                l.children.push_back(std::move(p));
                if (is_op(",")) advance();
            }
            expect_op(")");
        }
        expect_op("->");
        Node body = is_op("{") ? parse_block() : parse_expression();
        body.role = Role::Body;
        l.children.push_back(std::move(body));
        finish(l);
        return l;
    }

    Node parse_argument_list() {
        Node args = start(NodeKind::ArgumentList);
        expect_op("(");
        while (!is_op(")")) {
            if (at_end()) fail("unterminated argument list");
            args.children.push_back(parse_expression());
            if (is_op(",")) {
                advance();
                continue;
            }
            if (!is_op(")")) fail("expected ',' or ')'");
        }
        expect_op(")");
        finish(args);
        return args;
    }

    Node parse_creator() {
        // after 'new'
        Node ty = parse_type();
        if (is_op("[")) {
            Node arr = Node{};
            arr.kind = NodeKind::ArrayCreation;
            arr.begin = ty.begin;
            arr.name = ty.name;
            arr.children.push_back(std::move(ty));
            while (is_op("[")) {
                advance();
                if (!is_op("]")) arr.children.push_back(parse_expression());
                expect_op("]");
            }
            if (is_op("{")) arr.children.push_back(parse_array_init());
            finish(arr);
            return arr;
        }
        Node create = Node{};
        create.kind = NodeKind::ObjectCreation;
        create.begin = ty.begin;
        create.name = std::string(simple_name(ty.name));
        create.children.push_back(std::move(ty));
        create.children.push_back(parse_argument_list());
        if (is_op("{")) {
            Node anon = start(NodeKind::AnonClassBody);
            anon.flags |= kFlagAnonymous;
            parse_class_body_into(anon);
            finish(anon);
            create.children.push_back(std::move(anon));
        }
        finish(create);
        return create;
    }

    Node parse_primary() {
        if (looks_like_lambda()) return parse_lambda();
        const Token& t = cur();
        switch (t.kind) {
            case TokKind::IntLit:
            case TokKind::FloatLit:
            case TokKind::CharLit:
            case TokKind::StringLit: {
                Node n = start(NodeKind::Literal);
                advance();
                finish(n);
                return n;
            }
            case TokKind::Identifier: {
                Node n = start(NodeKind::Identifier);
                n.name = std::string(text(t));
                advance();
                if (is_op("(")) {
                    Node call = Node{};
                    call.kind = NodeKind::MethodInvocation;
                    call.begin = n.begin;
                    call.name = n.name;
                    call.children.push_back(parse_argument_list());
                    finish(call);
                    return call;
                }
                finish(n);
                return n;
            }
            case TokKind::Keyword: {
                std::string_view s = text(t);
                if (s == "true" || s == "false" || s == "null") {
                    Node n = start(NodeKind::Literal);
                    advance();
                    finish(n);
                    return n;
                }
                if (s == "this") {
                    Node n = start(NodeKind::ThisExpr);
                    advance();
                    if (is_op("(")) {
                        Node call = Node{};
                        call.kind = NodeKind::MethodInvocation;
                        call.begin = n.begin;
                        call.name = "this";
                        call.flags |= kFlagCtorChain;
                        call.children.push_back(parse_argument_list());
                        finish(call);
                        return call;
                    }
                    finish(n);
                    return n;
                }
                if (s == "super") {
                    Node n = start(NodeKind::SuperExpr);
                    advance();
                    if (is_op("(")) {
                        Node call = Node{};
                        call.kind = NodeKind::MethodInvocation;
                        call.begin = n.begin;
                        call.name = "super";
                        call.flags |= kFlagCtorChain;
                        call.children.push_back(parse_argument_list());
                        finish(call);
                        return call;
                    }
                    finish(n);
                    return n;
                }
                if (s == "new") {
                    std::uint32_t b = cur().begin;
                    advance();
                    Node n = parse_creator();
                    n.begin = b;
                    return n;
                }
                if (is_primitive_name(s) || s == "void" || s == "var") {
                    // primitive class literals: int.class, int[].class
                    Node n = start(NodeKind::Identifier);
                    n.name = std::string(s);
                    advance();
                    while (is_op("[") && is_op("]", 1)) {
                        advance();
                        advance();
                    }
                    finish(n);
                    return n;
                }
                fail("unexpected keyword '" + std::string(s) + "' in expression");
            }
            case TokKind::Operator: {
                if (is_op("(")) {
                    Node n = start(NodeKind::ParenExpr);
                    advance();
                    n.children.push_back(parse_expression());
                    expect_op(")");
                    finish(n);
                    return n;
                }
                fail("unexpected token in expression");
            }
            default:
                fail("unexpected token in expression");
        }
    }

    Node parse_postfix() {
        Node expr = parse_primary();
        while (true) {
            if (is_op(".")) {
                // explicit generic method invocation: x.<T>m()
                std::size_t p = pos_ + 1;
                if (tok_is_op(p, "<")) {
                    std::size_t q = p;
                    if (scan_type_args(q) && tok_is_ident(q)) {
                        advance();
                        pos_ = q;  // at the method name
                        // fall through to identifier handling below with pos at name
                        Node call = Node{};
                        call.kind = NodeKind::MethodInvocation;
                        call.begin = expr.begin;
                        call.name = std::string(text(expect_ident()));
                        call.flags |= kFlagHasReceiver;
                        Node recv = std::move(expr);
                        recv.role = Role::Receiver;
                        call.children.push_back(std::move(recv));
                        call.children.push_back(parse_argument_list());
                        finish(call);
                        expr = std::move(call);
                        continue;
                    }
                }
                advance();
                if (is_kw("class")) {
                    Node fa = Node{};
                    fa.kind = NodeKind::FieldAccess;
                    fa.begin = expr.begin;
                    fa.name = "class";
                    advance();
                    Node recv = std::move(expr);
                    recv.role = Role::Receiver;
                    fa.children.push_back(std::move(recv));
                    finish(fa);
                    expr = std::move(fa);
                    continue;
                }
                if (is_kw("this") || is_kw("super")) {
                    Node fa = Node{};
                    fa.kind = NodeKind::FieldAccess;
                    fa.begin = expr.begin;
                    fa.name = std::string(text(cur()));
                    advance();
                    Node recv = std::move(expr);
                    recv.role = Role::Receiver;
                    fa.children.push_back(std::move(recv));
                    finish(fa);
                    expr = std::move(fa);
                    continue;
                }
                if (is_kw("new")) {
                    // qualified creation: outer.new Inner(...)
                    advance();
                    Node n = parse_creator();
                    Node recv = std::move(expr);
                    recv.role = Role::Receiver;
                    n.children.insert(n.children.begin(), std::move(recv));
                    n.flags |= kFlagHasReceiver;
                    expr = std::move(n);
                    continue;
                }
                std::string member(text(expect_ident()));
                if (is_op("(")) {
                    Node call = Node{};
                    call.kind = NodeKind::MethodInvocation;
                    call.begin = expr.begin;
                    call.name = std::move(member);
                    call.flags |= kFlagHasReceiver;
                    Node recv = std::move(expr);
                    recv.role = Role::Receiver;
                    call.children.push_back(std::move(recv));
                    call.children.push_back(parse_argument_list());
                    finish(call);
                    expr = std::move(call);
                } else {
                    Node fa = Node{};
                    fa.kind = NodeKind::FieldAccess;
                    fa.begin = expr.begin;
                    fa.name = std::move(member);
                    Node recv = std::move(expr);
                    recv.role = Role::Receiver;
                    fa.children.push_back(std::move(recv));
                    finish(fa);
                    expr = std::move(fa);
                }
                continue;
            }
            if (is_op("[")) {
                Node idx = Node{};
                idx.kind = NodeKind::ArrayAccess;
                idx.begin = expr.begin;
                advance();
                Node recv = std::move(expr);
                recv.role = Role::Receiver;
                idx.children.push_back(std::move(recv));
                idx.children.push_back(parse_expression());
                expect_op("]");
                finish(idx);
                expr = std::move(idx);
                continue;
            }
            if (is_op("::")) {
                Node mr = Node{};
                mr.kind = NodeKind::MethodRef;
                mr.begin = expr.begin;
                advance();
                if (is_kw("new")) {
                    mr.name = "new";
                    advance();
                } else {
                    mr.name = std::string(text(expect_ident()));
                }
                Node recv = std::move(expr);
                recv.role = Role::Receiver;
                mr.children.push_back(std::move(recv));
                finish(mr);
                expr = std::move(mr);
                continue;
            }
            if (is_op("++") || is_op("--")) {
                Node u = Node{};
                u.kind = NodeKind::Unary;
                u.begin = expr.begin;
                u.name = std::string(text(cur()));
                advance();
                u.children.push_back(std::move(expr));
                finish(u);
                expr = std::move(u);
                continue;
            }
            return expr;
        }
    }
};

ParseResult run_parser(std::string_view content, bool statements) {
    ParseResult result;
    LexResult lexed = lex_java(content);
    if (!lexed.ok) {
        LineCol lc = line_col_at(content, lexed.error_offset);
        result.diagnostics.push_back({lexed.error_offset, lc.line, lc.column, lexed.error_message});
        return result;
    }
    Parser parser(content, std::move(lexed.tokens));
    try {
        auto tree = std::make_shared<SyntaxTree>();
        tree->root = statements ? parser.parse_statement_list() : parser.parse_unit();
        result.tree = std::move(tree);
    } catch (const ParseError& e) {
        LineCol lc = line_col_at(content, e.offset);
        result.diagnostics.push_back({e.offset, lc.line, lc.column, e.message});
    }
    return result;
}

}  // namespace

ParseResult parse_source(std::string_view content) { return run_parser(content, false); }

ParseResult parse_statements(std::string_view content) { return run_parser(content, true); }

}  // namespace exkit::java
