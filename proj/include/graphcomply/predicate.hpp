#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphcomply/detail/lexer.hpp"
#include "graphcomply/diagnostics.hpp"
#include "graphcomply/regexlite.hpp"
#include "graphcomply/value.hpp"

namespace graphcomply {

class ObjectGraph;
class ClassGraph;

/// Predicate over a single value. And/Or hold any number of children (an
/// empty conjunction is true, an empty disjunction false); Not holds exactly
/// one. InstanceOfRef is internal: it is the endpoint predicate of a class
/// arc ("the value is an object that instantiates class X") and cannot be
/// written in source text.
struct PredicateExpr {
    enum class Kind { Eq, Neq, Lt, Le, Gt, Ge, In, Matches, Exists, InstanceOfRef, And, Or, Not };

    Kind kind = Kind::Exists;
    Value operand;                               // Eq..Ge
    std::vector<Value> elements;                 // In; sorted, deduplicated
    std::string pattern;                         // Matches source text
    std::optional<regexlite::Pattern> compiled;  // Matches, built when parsed
    std::string class_ref;                       // InstanceOfRef
    std::vector<PredicateExpr> children;         // And / Or / Not
};

inline bool operator==(const PredicateExpr& a, const PredicateExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PredicateExpr::Kind::Eq:
        case PredicateExpr::Kind::Neq:
        case PredicateExpr::Kind::Lt:
        case PredicateExpr::Kind::Le:
        case PredicateExpr::Kind::Gt:
        case PredicateExpr::Kind::Ge:
            return a.operand == b.operand;
        case PredicateExpr::Kind::In:
            return a.elements == b.elements;
        case PredicateExpr::Kind::Matches:
            return a.pattern == b.pattern;
        case PredicateExpr::Kind::Exists:
            return true;
        case PredicateExpr::Kind::InstanceOfRef:
            return a.class_ref == b.class_ref;
        case PredicateExpr::Kind::And:
        case PredicateExpr::Kind::Or:
        case PredicateExpr::Kind::Not:
            return a.children == b.children;
    }
    return false;
}

inline bool operator!=(const PredicateExpr& a, const PredicateExpr& b) { return !(a == b); }

/// Ambient state for evaluation. `instance_of` resolves the internal
/// InstanceOfRef predicate against `schema`; membership wires it up (see
/// make_context in membership.hpp). A default-constructed context is valid
/// for any predicate free of InstanceOfRef.
struct EvalContext {
    const ObjectGraph* graph = nullptr;
    const ClassGraph* schema = nullptr;
    std::function<bool(const Value&, const std::string&, const EvalContext&)> instance_of;
};

/// Total: defined for every (predicate, value) pair and never throws.
/// Type-mismatched comparisons are false, not errors; an InstanceOfRef that
/// the context cannot resolve is false.
inline bool eval_predicate(const PredicateExpr& p, const Value& v, const EvalContext& ctx) {
    using K = PredicateExpr::Kind;
    switch (p.kind) {
        case K::Eq: return semantically_equal(v, p.operand);
        case K::Neq: return !semantically_equal(v, p.operand);
        case K::Lt: {
            auto c = numeric_compare(v, p.operand);
            return c && *c < 0;
        }
        case K::Le: {
            auto c = numeric_compare(v, p.operand);
            return c && *c <= 0;
        }
        case K::Gt: {
            auto c = numeric_compare(v, p.operand);
            return c && *c > 0;
        }
        case K::Ge: {
            auto c = numeric_compare(v, p.operand);
            return c && *c >= 0;
        }
        case K::In:
            for (const Value& e : p.elements)
                if (semantically_equal(v, e)) return true;
            return false;
        case K::Matches:
            return v.kind() == Value::Kind::Text && p.compiled && p.compiled->match(v.as_text());
        case K::Exists:
            return true;
        case K::InstanceOfRef:
            return v.kind() == Value::Kind::Obj && ctx.instance_of &&
                   ctx.instance_of(v, p.class_ref, ctx);
        case K::And:
            for (const PredicateExpr& c : p.children)
                if (!eval_predicate(c, v, ctx)) return false;
            return true;
        case K::Or:
            for (const PredicateExpr& c : p.children)
                if (eval_predicate(c, v, ctx)) return true;
            return false;
        case K::Not:
            return p.children.size() == 1 && !eval_predicate(p.children[0], v, ctx);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Construction helpers

namespace pred {

inline PredicateExpr eq(Value v) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::Eq;
    p.operand = std::move(v);
    return p;
}

inline PredicateExpr neq(Value v) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::Neq;
    p.operand = std::move(v);
    return p;
}

inline PredicateExpr cmp(PredicateExpr::Kind k, Value bound) {
    PredicateExpr p;
    p.kind = k;
    p.operand = std::move(bound);
    return p;
}

inline PredicateExpr lt(Value v) { return cmp(PredicateExpr::Kind::Lt, std::move(v)); }
inline PredicateExpr le(Value v) { return cmp(PredicateExpr::Kind::Le, std::move(v)); }
inline PredicateExpr gt(Value v) { return cmp(PredicateExpr::Kind::Gt, std::move(v)); }
inline PredicateExpr ge(Value v) { return cmp(PredicateExpr::Kind::Ge, std::move(v)); }

inline PredicateExpr in_set(std::vector<Value> elems) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::In;
    std::sort(elems.begin(), elems.end(),
              [](const Value& a, const Value& b) { return compare(a, b) < 0; });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    p.elements = std::move(elems);
    return p;
}

inline PredicateExpr exists() { return PredicateExpr{}; }

/// Fails (nullopt) when the pattern does not compile under the matcher's
/// dialect; the error is reported through `err` when given.
inline std::optional<PredicateExpr> matches(std::string pattern,
                                            regexlite::CompileError* err = nullptr) {
    regexlite::CompileError local;
    auto compiled = regexlite::Pattern::compile(pattern, local);
    if (!compiled) {
        if (err) *err = local;
        return std::nullopt;
    }
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::Matches;
    p.pattern = std::move(pattern);
    p.compiled = std::move(compiled);
    return p;
}

inline PredicateExpr instance_of_ref(std::string class_id) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::InstanceOfRef;
    p.class_ref = std::move(class_id);
    return p;
}

inline PredicateExpr and_(std::vector<PredicateExpr> children) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::And;
    p.children = std::move(children);
    return p;
}

inline PredicateExpr or_(std::vector<PredicateExpr> children) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::Or;
    p.children = std::move(children);
    return p;
}

inline PredicateExpr not_(PredicateExpr child) {
    PredicateExpr p;
    p.kind = PredicateExpr::Kind::Not;
    p.children.push_back(std::move(child));
    return p;
}

}  // namespace pred

// ---------------------------------------------------------------------------
// Printing

namespace detail {

// Precedence levels: or = 0, and = 1, unary and atoms = 2. A child is
// parenthesized whenever its own level is below what its position requires,
// so flattened and nested conjunctions print differently and re-parse to
// the same shape they had.
inline int predicate_level(const PredicateExpr& p) {
    switch (p.kind) {
        case PredicateExpr::Kind::Or: return 0;
        case PredicateExpr::Kind::And: return 1;
        default: return 2;
    }
}

inline void print_predicate(const PredicateExpr& p, int min_level, std::string& out) {
    using K = PredicateExpr::Kind;
    const bool parens = predicate_level(p) < min_level;
    if (parens) out += '(';
    switch (p.kind) {
        case K::Eq:
            out += "= ";
            out += print_value(p.operand);
            break;
        case K::Neq:
            out += "!= ";
            out += print_value(p.operand);
            break;
        case K::Lt:
            out += "< ";
            out += print_value(p.operand);
            break;
        case K::Le:
            out += "<= ";
            out += print_value(p.operand);
            break;
        case K::Gt:
            out += "> ";
            out += print_value(p.operand);
            break;
        case K::Ge:
            out += ">= ";
            out += print_value(p.operand);
            break;
        case K::In: {
            out += "in {";
            for (std::size_t i = 0; i < p.elements.size(); ++i) {
                if (i) out += ", ";
                out += print_value(p.elements[i]);
            }
            out += '}';
            break;
        }
        case K::Matches:
            out += "matches ";
            out += quote_text(p.pattern);
            break;
        case K::Exists:
            out += "exists";
            break;
        case K::InstanceOfRef:
            // Internal-only; never produced by the parser. Printed for
            // debugging output, not for re-parsing.
            out += "instanceof ";
            out += p.class_ref;
            break;
        case K::And: {
            for (std::size_t i = 0; i < p.children.size(); ++i) {
                if (i) out += " and ";
                print_predicate(p.children[i], 2, out);
            }
            if (p.children.empty()) out += "exists";  // empty conjunction is true
            break;
        }
        case K::Or: {
            for (std::size_t i = 0; i < p.children.size(); ++i) {
                if (i) out += " or ";
                print_predicate(p.children[i], 1, out);
            }
            if (p.children.empty()) out += "not exists";  // empty disjunction is false
            break;
        }
        case K::Not:
            out += "not ";
            if (p.children.size() == 1)
                print_predicate(p.children[0], 2, out);
            else
                out += "exists";
            break;
    }
    if (parens) out += ')';
}

}  // namespace detail

inline std::string pretty_print(const PredicateExpr& p) {
    std::string out;
    detail::print_predicate(p, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   predicate := or
//   or        := and { "or" and }
//   and       := unary { "and" unary }
//   unary     := "not" unary | "(" predicate ")" | atom
//   atom      := "=" literal | "!=" literal
//             | "<" number | "<=" number | ">" number | ">=" number
//             | "in" "{" literal { "," literal } "}"
//             | "matches" string
//             | "exists"
//   literal   := string | number | "true" | "false" | objliteral
//   objliteral := "{" { ident "=" literal ";" } "}"

namespace detail {

class PredicateParser {
public:
    PredicateParser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

    std::optional<PredicateExpr> parse_whole() {
        PredicateExpr p = parse_or();
        if (failed_) return std::nullopt;
        if (!at_end()) {
            fail("unexpected " + describe(peek()) + " after predicate", {"end of predicate"});
            return std::nullopt;
        }
        return p;
    }

    std::optional<Value> parse_value_whole() {
        Value v = parse_literal();
        if (failed_) return std::nullopt;
        if (!at_end()) {
            fail("unexpected " + describe(peek()) + " after value", {"end of value"});
            return std::nullopt;
        }
        return v;
    }

    PredicateExpr parse_or() {
        PredicateExpr first = parse_and();
        if (failed_ || !is_keyword("or")) return first;
        std::vector<PredicateExpr> kids;
        kids.push_back(std::move(first));
        while (!failed_ && is_keyword("or")) {
            advance();
            kids.push_back(parse_and());
        }
        return pred::or_(std::move(kids));
    }

    bool at_end() const { return peek().type == Token::Type::End; }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool is_keyword(std::string_view kw) const {
        return peek().type == Token::Type::Ident && peek().text == kw;
    }

    bool is_punct(std::string_view p) const {
        return peek().type == Token::Type::Punct && peek().text == p;
    }

    static std::string describe(const Token& t) {
        switch (t.type) {
            case Token::Type::Ident: return "'" + t.text + "'";
            case Token::Type::String: return "string";
            case Token::Type::Int:
            case Token::Type::Dec: return "number";
            case Token::Type::Punct: return "'" + t.text + "'";
            case Token::Type::End: return "end of input";
        }
        return "token";
    }

    void fail(std::string message, std::vector<std::string> expected) {
        if (failed_) return;
        failed_ = true;
        diags_.push_back({Severity::Error, peek().span, std::move(message), std::move(expected)});
    }

    PredicateExpr parse_and() {
        PredicateExpr first = parse_unary();
        if (failed_ || !is_keyword("and")) return first;
        std::vector<PredicateExpr> kids;
        kids.push_back(std::move(first));
        while (!failed_ && is_keyword("and")) {
            advance();
            kids.push_back(parse_unary());
        }
        return pred::and_(std::move(kids));
    }

    PredicateExpr parse_unary() {
        if (failed_) return {};
        if (is_keyword("not")) {
            advance();
            return pred::not_(parse_unary());
        }
        if (is_punct("(")) {
            advance();
            PredicateExpr inner = parse_or();
            if (failed_) return inner;
            if (!is_punct(")")) {
                fail("unbalanced '('", {"')'"});
                return inner;
            }
            advance();
            return inner;
        }
        return parse_atom();
    }

    PredicateExpr parse_atom() {
        using K = PredicateExpr::Kind;
        if (is_punct("=")) {
            advance();
            return pred::eq(parse_literal());
        }
        if (is_punct("!=")) {
            advance();
            return pred::neq(parse_literal());
        }
        if (is_punct("<") || is_punct("<=") || is_punct(">") || is_punct(">=")) {
            const std::string op = advance().text;
            const K k = op == "<" ? K::Lt : op == "<=" ? K::Le : op == ">" ? K::Gt : K::Ge;
            return pred::cmp(k, parse_number());
        }
        if (is_keyword("exists")) {
            advance();
            return pred::exists();
        }
        if (is_keyword("in")) {
            advance();
            return parse_in_set();
        }
        if (is_keyword("matches")) {
            advance();
            return parse_matches();
        }
        fail("expected a predicate, found " + describe(peek()),
             {"'='", "'!='", "'<'", "'<='", "'>'", "'>='", "'in'", "'matches'", "'exists'",
              "'not'", "'('"});
        return {};
    }

    PredicateExpr parse_in_set() {
        if (!is_punct("{")) {
            fail("expected '{' after 'in'", {"'{'"});
            return {};
        }
        advance();
        std::vector<Value> elems;
        elems.push_back(parse_literal());
        while (!failed_ && is_punct(",")) {
            advance();
            elems.push_back(parse_literal());
        }
        if (failed_) return {};
        if (!is_punct("}")) {
            fail("expected '}' to close the set", {"'}'", "','"});
            return {};
        }
        advance();
        return pred::in_set(std::move(elems));
    }

    PredicateExpr parse_matches() {
        if (peek().type != Token::Type::String) {
            fail("expected a pattern string after 'matches'", {"string"});
            return {};
        }
        const Token tok = advance();
        regexlite::CompileError err;
        auto p = pred::matches(tok.value.as_text(), &err);
        if (!p) {
            if (failed_) return {};
            failed_ = true;
            diags_.push_back({Severity::Error, tok.span,
                              "pattern does not compile: " + err.message + " (at pattern offset " +
                                  std::to_string(err.position) + ")",
                              {}});
            return {};
        }
        return std::move(*p);
    }

    Value parse_number() {
        if (peek().type == Token::Type::Int || peek().type == Token::Type::Dec)
            return advance().value;
        fail("expected a number, found " + describe(peek()), {"number"});
        return {};
    }

    Value parse_literal() {
        switch (peek().type) {
            case Token::Type::String:
            case Token::Type::Int:
            case Token::Type::Dec:
                return advance().value;
            case Token::Type::Ident:
                if (peek().text == "true") {
                    advance();
                    return Value(true);
                }
                if (peek().text == "false") {
                    advance();
                    return Value(false);
                }
                break;
            case Token::Type::Punct:
                if (peek().text == "{") return parse_obj_literal();
                break;
            default:
                break;
        }
        fail("expected a literal, found " + describe(peek()),
             {"string", "number", "'true'", "'false'", "'{'"});
        return {};
    }

    Value parse_obj_literal() {
        advance();  // '{'
        std::vector<Property> props;
        while (!failed_ && !is_punct("}")) {
            if (peek().type != Token::Type::Ident) {
                fail("expected a property name or '}'", {"identifier", "'}'"});
                return {};
            }
            const Token name = advance();
            if (is_reserved_name(name.text)) {
                failed_ = true;
                diags_.push_back({Severity::Error, name.span,
                                  "'" + name.text + "' is reserved for arc endpoints", {}});
                return {};
            }
            if (!is_punct("=")) {
                fail("expected '=' after property name", {"'='"});
                return {};
            }
            advance();
            Value v = parse_literal();
            if (failed_) return {};
            if (!is_punct(";")) {
                fail("expected ';' after property value", {"';'"});
                return {};
            }
            advance();
            props.push_back({name.text, std::move(v)});
        }
        if (failed_) return {};
        advance();  // '}'
        return Value(PropertyBag(std::move(props)));
    }

    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    bool failed_ = false;
};

}  // namespace detail

/// Parses a predicate from source text. `base` positions diagnostics when
/// the text is a slice of a larger document.
inline ParseResult<PredicateExpr> parse_predicate(std::string_view source, std::string file = {},
                                                  SourceLocation base = {1, 1}) {
    ParseResult<PredicateExpr> result;
    detail::Lexer lexer(source, std::move(file), base);
    std::vector<detail::Token> tokens = lexer.run(result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    detail::PredicateParser parser(std::move(tokens), result.diagnostics);
    result.value = parser.parse_whole();
    if (has_errors(result.diagnostics)) result.value.reset();
    return result;
}

}  // namespace graphcomply
