#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphcomply/compliance.hpp"
#include "graphcomply/detail/lexer.hpp"
#include "graphcomply/diagnostics.hpp"
#include "graphcomply/model.hpp"
#include "graphcomply/predicate.hpp"

namespace graphcomply {

// File formats:
//   .og   graph g { node id { name = value; ... } arc id: Src -> Dst { ... } }
//   .cg   schema s { class id { name: <predicate>; ... } arc id: Src -> Dst { ... } }
// '#' starts a line comment. The graph/schema name is part of the syntax but
// not of the model; printing always uses g or s.

namespace detail {

class GraphTextParser {
public:
    GraphTextParser(std::vector<Token> tokens, std::vector<Diagnostic>& diags, bool schema)
        : tokens_(std::move(tokens)), diags_(diags), schema_(schema) {}

    struct ArcSpans {
        SourceSpan src, dst;
        std::string src_id, dst_id;
    };

    std::vector<ObjectNode> nodes;
    std::vector<ObjectArc> arcs;
    std::vector<ClassNode> classes;
    std::vector<ClassArc> class_arcs;
    std::vector<std::pair<std::string, SourceSpan>> entity_spans;  // declaration order
    std::map<std::string, ArcSpans> arc_spans;                     // last declaration wins

    void parse() {
        const char* kw = schema_ ? "schema" : "graph";
        if (!is_keyword(kw)) {
            error("expected '" + std::string(kw) + "'", {std::string("'") + kw + "'"});
            return;
        }
        advance();
        if (peek().type != Token::Type::Ident) {
            error("expected a name after '" + std::string(kw) + "'", {"identifier"});
            return;
        }
        advance();  // the name is syntax only
        if (!expect_punct("{")) return;
        while (!at_end() && !is_punct("}")) {
            if (!schema_ && is_keyword("node"))
                parse_node();
            else if (schema_ && is_keyword("class"))
                parse_class();
            else if (is_keyword("arc"))
                parse_arc();
            else {
                error("expected " + std::string(schema_ ? "'class'" : "'node'") +
                          ", 'arc' or '}', found " + describe(peek()),
                      {schema_ ? "'class'" : "'node'", "'arc'", "'}'"});
                advance();  // never resynchronize on the offending token itself
                sync_entity();
            }
        }
        if (!expect_punct("}")) return;
        if (!at_end())
            error("unexpected " + describe(peek()) + " after the closing '}'", {"end of input"});
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().type == Token::Type::End; }

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

    void error(std::string message, std::vector<std::string> expected,
               const SourceSpan* at = nullptr) {
        diags_.push_back(
            {Severity::Error, at ? *at : peek().span, std::move(message), std::move(expected)});
    }

    bool expect_punct(std::string_view p) {
        if (is_punct(p)) {
            advance();
            return true;
        }
        error("expected '" + std::string(p) + "', found " + describe(peek()),
              {"'" + std::string(p) + "'"});
        return false;
    }

    std::optional<Token> expect_ident(const char* what) {
        if (peek().type == Token::Type::Ident) return advance();
        error("expected " + std::string(what) + ", found " + describe(peek()), {"identifier"});
        return std::nullopt;
    }

    // Skip to the next entity keyword or the graph's closing brace.
    void sync_entity() {
        int depth = 0;
        while (!at_end()) {
            if (peek().type == Token::Type::Punct) {
                if (peek().text == "{") ++depth;
                else if (peek().text == "}") {
                    if (depth == 0) return;
                    --depth;
                }
            } else if (depth == 0 && (is_keyword("node") || is_keyword("class") ||
                                      is_keyword("arc"))) {
                return;
            }
            advance();
        }
    }

    // Skip past the current statement: consume through the next ';' at this
    // nesting level, or stop before the enclosing '}'.
    void sync_statement() {
        int depth = 0;
        while (!at_end()) {
            if (peek().type == Token::Type::Punct) {
                if (peek().text == "{" || peek().text == "(") ++depth;
                else if (peek().text == "}") {
                    if (depth == 0) return;
                    --depth;
                } else if (peek().text == ")") {
                    if (depth > 0) --depth;
                } else if (peek().text == ";" && depth == 0) {
                    advance();
                    return;
                }
            }
            advance();
        }
    }

    // Tokens of one statement's right-hand side, up to the ';' or the body's
    // '}' at this nesting level; an End token is appended for the subparser.
    std::vector<Token> slice_statement() {
        std::vector<Token> out;
        int depth = 0;
        while (!at_end()) {
            const Token& t = peek();
            if (t.type == Token::Type::Punct) {
                if (t.text == "{" || t.text == "(") ++depth;
                else if (t.text == "}") {
                    if (depth == 0) break;
                    --depth;
                } else if (t.text == ")") {
                    if (depth > 0) --depth;
                } else if (t.text == ";" && depth == 0) {
                    break;
                }
            }
            out.push_back(advance());
        }
        Token end;
        end.type = Token::Type::End;
        end.span = peek().span;
        out.push_back(end);
        return out;
    }

    bool finish_statement() {
        if (is_punct(";")) {
            advance();
            return true;
        }
        error("expected ';' after the statement", {"';'"});
        sync_statement();
        return false;
    }

    /// `name = value;` entries until the closing '}'.
    std::optional<PropertyBag> parse_property_block() {
        if (!expect_punct("{")) return std::nullopt;
        std::vector<Property> props;
        while (!at_end() && !is_punct("}")) {
            auto name = expect_ident("a property name");
            if (!name) {
                sync_statement();
                continue;
            }
            if (is_reserved_name(name->text)) {
                error("'" + name->text + "' is reserved for arc endpoints", {}, &name->span);
                sync_statement();
                continue;
            }
            if (!expect_punct("=")) {
                sync_statement();
                continue;
            }
            PredicateParser sub(slice_statement(), diags_);
            std::optional<Value> v = sub.parse_value_whole();
            finish_statement();
            if (v) props.push_back({name->text, std::move(*v)});
        }
        if (!expect_punct("}")) return std::nullopt;
        return PropertyBag(std::move(props));
    }

    /// `name: <predicate>;` entries until the closing '}'.
    std::optional<std::vector<PropertyConstraint>> parse_constraint_block() {
        if (!expect_punct("{")) return std::nullopt;
        std::vector<PropertyConstraint> constraints;
        while (!at_end() && !is_punct("}")) {
            auto name = expect_ident("a constraint name");
            if (!name) {
                sync_statement();
                continue;
            }
            if (is_reserved_name(name->text)) {
                error("'" + name->text + "' is reserved for arc endpoints", {}, &name->span);
                sync_statement();
                continue;
            }
            if (!expect_punct(":")) {
                sync_statement();
                continue;
            }
            PredicateParser sub(slice_statement(), diags_);
            std::optional<PredicateExpr> p = sub.parse_whole();
            finish_statement();
            if (p) constraints.push_back({name->text, std::move(*p)});
        }
        if (!expect_punct("}")) return std::nullopt;
        return constraints;
    }

    void parse_node() {
        advance();  // 'node'
        auto name = expect_ident("a node id");
        if (!name) {
            sync_entity();
            return;
        }
        entity_spans.emplace_back(name->text, name->span);
        auto bag = parse_property_block();
        if (!bag) {
            sync_entity();
            return;
        }
        nodes.push_back({name->text, std::move(*bag)});
    }

    void parse_class() {
        advance();  // 'class'
        auto name = expect_ident("a class id");
        if (!name) {
            sync_entity();
            return;
        }
        entity_spans.emplace_back(name->text, name->span);
        auto constraints = parse_constraint_block();
        if (!constraints) {
            sync_entity();
            return;
        }
        classes.push_back({name->text, std::move(*constraints)});
    }

    void parse_arc() {
        advance();  // 'arc'
        auto name = expect_ident("an arc id");
        if (!name || !expect_punct(":")) {
            sync_entity();
            return;
        }
        auto src = expect_ident(schema_ ? "a source class id" : "a source node id");
        if (!src || !expect_punct("->")) {
            sync_entity();
            return;
        }
        auto dst = expect_ident(schema_ ? "a destination class id" : "a destination node id");
        if (!dst) {
            sync_entity();
            return;
        }
        entity_spans.emplace_back(name->text, name->span);
        arc_spans[name->text] = {src->span, dst->span, src->text, dst->text};
        if (schema_) {
            auto constraints = parse_constraint_block();
            if (!constraints) {
                sync_entity();
                return;
            }
            class_arcs.push_back({name->text, src->text, dst->text, std::move(*constraints)});
        } else {
            auto bag = parse_property_block();
            if (!bag) {
                sync_entity();
                return;
            }
            arcs.push_back({name->text, src->text, dst->text, std::move(*bag)});
        }
    }

    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    bool schema_;
    std::size_t pos_ = 0;
};

/// Places each build issue at the span of the entity (or endpoint) that
/// caused it; parser-level checks make most build issues unreachable from
/// text, but duplicates and dangling endpoints surface here.
inline void report_build_issues(const std::vector<BuildIssue>& issues,
                                const GraphTextParser& parser, const std::string& file,
                                std::vector<Diagnostic>& diags) {
    const SourceSpan whole{file, {1, 1}, {1, 1}};
    for (const BuildIssue& issue : issues) {
        SourceSpan at = whole;
        if (issue.kind == BuildErrorKind::DuplicateId) {
            int seen = 0;
            for (const auto& [id, span] : parser.entity_spans)
                if (id == issue.entity && ++seen == 2) {
                    at = span;
                    break;
                }
        } else if (issue.kind == BuildErrorKind::DanglingEndpoint) {
            auto it = parser.arc_spans.find(issue.entity);
            if (it != parser.arc_spans.end()) {
                const bool src_missing =
                    issue.message.find("'" + it->second.src_id + "'") != std::string::npos;
                at = src_missing ? it->second.src : it->second.dst;
            }
        } else {
            for (const auto& [id, span] : parser.entity_spans)
                if (id == issue.entity) {
                    at = span;
                    break;
                }
        }
        diags.push_back({Severity::Error, at, issue.message, {}});
    }
}

}  // namespace detail

inline ParseResult<ObjectGraph> parse_object_graph(std::string_view source, std::string file = {}) {
    ParseResult<ObjectGraph> result;
    detail::Lexer lexer(source, file);
    std::vector<detail::Token> tokens = lexer.run(result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    detail::GraphTextParser parser(std::move(tokens), result.diagnostics, false);
    parser.parse();
    if (has_errors(result.diagnostics)) return result;
    auto built = build_object_graph(std::move(parser.nodes), std::move(parser.arcs));
    if (!built) {
        detail::report_build_issues(built.issues, parser, file, result.diagnostics);
        return result;
    }
    result.value = std::move(*built.graph);
    return result;
}

inline ParseResult<ClassGraph> parse_class_graph(std::string_view source, std::string file = {}) {
    ParseResult<ClassGraph> result;
    detail::Lexer lexer(source, file);
    std::vector<detail::Token> tokens = lexer.run(result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    detail::GraphTextParser parser(std::move(tokens), result.diagnostics, true);
    parser.parse();
    if (has_errors(result.diagnostics)) return result;
    auto built = build_class_graph(std::move(parser.classes), std::move(parser.class_arcs));
    if (!built) {
        detail::report_build_issues(built.issues, parser, file, result.diagnostics);
        return result;
    }
    result.value = std::move(*built.graph);
    return result;
}

// ---------------------------------------------------------------------------
// Canonical printing. parse(print(x)) is structurally the identity; the
// printed form is also the preferred authoring style.

namespace detail {

inline void print_bag_block(const PropertyBag& bag, std::string& out) {
    if (bag.properties().empty()) {
        out += "{}\n";
        return;
    }
    out += "{\n";
    for (const Property& p : bag.properties()) {
        out += "    " + p.name + " = " + print_value(p.value) + ";\n";
    }
    out += "  }\n";
}

inline void print_constraint_block(const std::vector<PropertyConstraint>& constraints,
                                   std::string& out) {
    if (constraints.empty()) {
        out += "{}\n";
        return;
    }
    out += "{\n";
    for (const PropertyConstraint& c : constraints) {
        out += "    " + c.name + ": " + pretty_print(c.predicate) + ";\n";
    }
    out += "  }\n";
}

}  // namespace detail

inline std::string print_object_graph(const ObjectGraph& g) {
    std::string out = "graph g {\n";
    for (const ObjectNode& n : g.nodes()) {
        out += "  node " + n.id + " ";
        detail::print_bag_block(n.bag, out);
    }
    for (const ObjectArc& a : g.arcs()) {
        out += "  arc " + a.id + ": " + a.src + " -> " + a.dst + " ";
        detail::print_bag_block(a.bag, out);
    }
    out += "}\n";
    return out;
}

inline std::string print_class_graph(const ClassGraph& s) {
    std::string out = "schema s {\n";
    for (const ClassNode& c : s.classes()) {
        out += "  class " + c.id + " ";
        detail::print_constraint_block(c.constraints, out);
    }
    for (const ClassArc& a : s.arcs()) {
        out += "  arc " + a.id + ": " + a.src + " -> " + a.dst + " ";
        detail::print_constraint_block(a.constraints, out);
    }
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Report JSON. Keys are emitted in sorted order with two-space indentation
// and a trailing newline, so identical reports are byte-identical.

inline std::string emit_report(const ComplianceReport& r) {
    if (r.outcome == ComplianceOutcome::Undecided)
        throw std::logic_error("an undecided outcome has no report representation");
    nlohmann::json j;
    j["mode"] = std::string(to_string(r.mode));
    j["compliant"] = r.compliant();
    nlohmann::json witness = nlohmann::json::array();
    for (const CandidatePair& p : r.witness)
        witness.push_back({{"node", p.node}, {"class", p.klass}});
    j["witness"] = std::move(witness);
    j["coveredClasses"] = r.covered_classes;
    j["uncoveredClasses"] = r.uncovered_classes;
    j["uncoveredNodes"] = r.uncovered_nodes;
    nlohmann::json conflicts = nlohmann::json::array();
    for (const Conflict& c : r.conflicts)
        conflicts.push_back({{"classArc", c.class_arc},
                             {"srcPair", {{"node", c.src_pair.node}, {"class", c.src_pair.klass}}},
                             {"dstPair", {{"node", c.dst_pair.node}, {"class", c.dst_pair.klass}}},
                             {"reason", c.reason}});
    j["conflicts"] = std::move(conflicts);
    return j.dump(2) + "\n";
}

inline ParseResult<ComplianceReport> parse_report(std::string_view text, std::string file = {}) {
    ParseResult<ComplianceReport> result;
    const SourceSpan whole{file, {1, 1}, {1, 1}};
    auto fail = [&](const std::string& message) {
        result.diagnostics.push_back({Severity::Error, whole, message, {}});
    };
    const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        fail("malformed JSON");
        return result;
    }
    if (!j.is_object()) {
        fail("the report must be a JSON object");
        return result;
    }
    static const std::vector<std::string> keys = {
        "compliant", "conflicts", "coveredClasses", "mode",
        "uncoveredClasses", "uncoveredNodes", "witness"};
    for (const auto& [key, _] : j.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            fail("unknown report key '" + key + "'");
            return result;
        }
    for (const std::string& key : keys)
        if (!j.contains(key)) {
            fail("missing report key '" + key + "'");
            return result;
        }

    ComplianceReport r;
    if (!j["mode"].is_string()) {
        fail("'mode' must be a string");
        return result;
    }
    auto mode = parse_mode(j["mode"].get<std::string>());
    if (!mode) {
        fail("'mode' must be \"partial\", \"normal\" or \"full\"");
        return result;
    }
    r.mode = *mode;
    if (!j["compliant"].is_boolean()) {
        fail("'compliant' must be a boolean");
        return result;
    }
    r.outcome = j["compliant"].get<bool>() ? ComplianceOutcome::Compliant
                                           : ComplianceOutcome::NotCompliant;

    auto read_pair = [&](const nlohmann::json& v, CandidatePair& out) {
        if (!v.is_object() || v.size() != 2 || !v.contains("node") || !v.contains("class") ||
            !v["node"].is_string() || !v["class"].is_string())
            return false;
        out.node = v["node"].get<std::string>();
        out.klass = v["class"].get<std::string>();
        return true;
    };
    auto read_strings = [&](const char* key, std::vector<std::string>& out) {
        if (!j[key].is_array()) return false;
        for (const auto& v : j[key]) {
            if (!v.is_string()) return false;
            out.push_back(v.get<std::string>());
        }
        return true;
    };

    if (!j["witness"].is_array()) {
        fail("'witness' must be an array");
        return result;
    }
    for (const auto& v : j["witness"]) {
        CandidatePair p;
        if (!read_pair(v, p)) {
            fail("each witness entry must be an object with 'node' and 'class' strings");
            return result;
        }
        r.witness.push_back(std::move(p));
    }
    if (!read_strings("coveredClasses", r.covered_classes) ||
        !read_strings("uncoveredClasses", r.uncovered_classes) ||
        !read_strings("uncoveredNodes", r.uncovered_nodes)) {
        fail("class and node lists must be arrays of strings");
        return result;
    }
    if (!j["conflicts"].is_array()) {
        fail("'conflicts' must be an array");
        return result;
    }
    for (const auto& v : j["conflicts"]) {
        Conflict c;
        if (!v.is_object() || v.size() != 4 || !v.contains("classArc") ||
            !v.contains("srcPair") || !v.contains("dstPair") || !v.contains("reason") ||
            !v["classArc"].is_string() || !v["reason"].is_string() ||
            !read_pair(v["srcPair"], c.src_pair) || !read_pair(v["dstPair"], c.dst_pair)) {
            fail("each conflict must carry 'classArc', 'srcPair', 'dstPair' and 'reason'");
            return result;
        }
        c.class_arc = v["classArc"].get<std::string>();
        c.reason = v["reason"].get<std::string>();
        r.conflicts.push_back(std::move(c));
    }
    result.value = std::move(r);
    return result;
}

}  // namespace graphcomply
