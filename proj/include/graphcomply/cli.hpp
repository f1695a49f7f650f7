#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "graphcomply/compliance.hpp"
#include "graphcomply/graphtext.hpp"
#include "graphcomply/membership.hpp"
#include "graphcomply/model.hpp"

namespace graphcomply {

inline constexpr const char* cli_version = "graphcomply 0.1.0";

// Exit statuses: 0 passed, 1 failed (valid inputs, negative verdict),
// 2 input or usage error, 3 undecided (search budget exhausted).

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return std::move(buf).str();
}

inline void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const Diagnostic& d : diags) {
        if (!d.span.file.empty()) err << d.span.file << ":";
        err << d.span.begin.line << ":" << d.span.begin.column << "-" << d.span.end.line << ":"
            << d.span.end.column << ": "
            << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message << "\n";
    }
}

inline std::optional<ObjectGraph> load_object_graph(const std::string& path, std::ostream& err,
                                                    bool& unreadable) {
    auto text = read_file(path);
    if (!text) {
        err << "error: cannot read '" << path << "'\n";
        unreadable = true;
        return std::nullopt;
    }
    auto parsed = parse_object_graph(*text, path);
    if (!parsed) {
        print_diagnostics(parsed.diagnostics, err);
        return std::nullopt;
    }
    return std::move(parsed.value);
}

inline std::optional<ClassGraph> load_class_graph(const std::string& path, std::ostream& err,
                                                  bool& unreadable) {
    auto text = read_file(path);
    if (!text) {
        err << "error: cannot read '" << path << "'\n";
        unreadable = true;
        return std::nullopt;
    }
    auto parsed = parse_class_graph(*text, path);
    if (!parsed) {
        print_diagnostics(parsed.diagnostics, err);
        return std::nullopt;
    }
    return std::move(parsed.value);
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline int cmd_validate(const std::vector<std::string>& paths, std::ostream& out,
                        std::ostream& err) {
    int worst = 0;
    for (const std::string& path : paths) {
        auto text = read_file(path);
        if (!text) {
            err << "error: cannot read '" << path << "'\n";
            worst = std::max(worst, 2);
            continue;
        }
        std::vector<Diagnostic> diags;
        if (ends_with(path, ".og")) {
            diags = parse_object_graph(*text, path).diagnostics;
        } else if (ends_with(path, ".cg")) {
            diags = parse_class_graph(*text, path).diagnostics;
        } else {
            err << "error: '" << path << "' has no recognized extension (expected .og or .cg)\n";
            worst = std::max(worst, 2);
            continue;
        }
        if (has_errors(diags)) {
            print_diagnostics(diags, err);
            worst = std::max(worst, 1);
        } else {
            print_diagnostics(diags, err);  // warnings, if any
            out << path << ": ok\n";
        }
    }
    return worst;
}

struct MemberArgs {
    std::string graph, schema, node, arc, klass, kind;
};

inline int cmd_member(const MemberArgs& a, std::ostream& out, std::ostream& err) {
    if (a.node.empty() == a.arc.empty()) {
        err << "error: exactly one of --node and --arc is required\n";
        return 2;
    }
    const bool node_query = !a.node.empty();
    if (node_query && (a.kind == "left" || a.kind == "right" || a.kind == "full")) {
        err << "error: kind '" << a.kind << "' applies to arcs; use --arc\n";
        return 2;
    }
    if (!node_query && a.kind == "relational") {
        err << "error: kind 'relational' applies to nodes; use --node\n";
        return 2;
    }

    bool unreadable = false;
    auto g = load_object_graph(a.graph, err, unreadable);
    auto s = load_class_graph(a.schema, err, unreadable);
    if (!g || !s) return 2;
    const EvalContext ctx = make_context(*g, *s);

    MembershipVerdict verdict;
    if (node_query) {
        const ObjectNode* n = g->find_node(a.node);
        if (!n) {
            err << "error: unknown node '" << a.node << "'\n";
            return 2;
        }
        const ClassNode* c = s->find_class(a.klass);
        if (!c) {
            err << "error: unknown class '" << a.klass << "'\n";
            return 2;
        }
        verdict = a.kind == "strict" ? explain_node_strict(*n, *c, ctx)
                                     : explain_node_relational(*n, *c, *g, *s, ctx);
    } else {
        const ObjectArc* oa = g->find_arc(a.arc);
        if (!oa) {
            err << "error: unknown arc '" << a.arc << "'\n";
            return 2;
        }
        const ClassArc* ca = s->find_arc(a.klass);
        if (!ca) {
            err << "error: unknown class arc '" << a.klass << "'\n";
            return 2;
        }
        if (a.kind == "strict") verdict = explain_arc_strict(*oa, *ca, ctx);
        else if (a.kind == "left") verdict = explain_arc_left(*oa, *ca, *g, *s, ctx);
        else if (a.kind == "right") verdict = explain_arc_right(*oa, *ca, *g, *s, ctx);
        else verdict = explain_arc_full(*oa, *ca, *g, *s, ctx);
    }
    if (verdict.member) {
        out << "true\n";
        return 0;
    }
    out << "false\n" << verdict.reason << "\n";
    return 1;
}

struct CheckArgs {
    std::string graph, schema, report;
    ComplianceMode mode = ComplianceMode::Normal;
    std::uint64_t budget = default_search_budget;
    bool all = false;
};

inline void print_pairs(const std::vector<CandidatePair>& pairs, std::ostream& out) {
    for (const CandidatePair& p : pairs) out << "  " << p.node << " -> " << p.klass << "\n";
}

inline int cmd_check(const CheckArgs& a, const ClassGraph& s, const ComplianceReport& rep,
                     const std::optional<WitnessEnumeration>& all, std::ostream& out,
                     std::ostream& err) {
    if (!a.report.empty()) {
        std::ofstream file(a.report, std::ios::binary);
        file << emit_report(rep);
        if (!file) {
            err << "error: cannot write '" << a.report << "'\n";
            return 2;
        }
    }
    if (rep.outcome == ComplianceOutcome::Compliant) {
        out << "compliant\n";
        if (all) {
            out << "witnesses: " << all->witnesses.size() << "\n";
            for (const std::vector<CandidatePair>& w : all->witnesses) {
                out << "witness:\n";
                print_pairs(w, out);
            }
        } else if (!rep.witness.empty()) {
            out << "witness:\n";
            print_pairs(rep.witness, out);
        }
        if (rep.mode == ComplianceMode::Partial) {
            out << "covered classes: " << rep.covered_classes.size() << " of "
                << s.classes().size() << "\n";
            for (const std::string& c : rep.uncovered_classes) out << "uncovered class: " << c << "\n";
        }
        return 0;
    }
    out << "not compliant\n";
    for (const std::string& c : rep.uncovered_classes) out << "uncovered class: " << c << "\n";
    for (const std::string& n : rep.uncovered_nodes) out << "uncovered node: " << n << "\n";
    for (const Conflict& c : rep.conflicts)
        out << "conflict: class arc '" << c.class_arc << "' between " << c.src_pair.node << " -> "
            << c.src_pair.klass << " and " << c.dst_pair.node << " -> " << c.dst_pair.klass << " ("
            << c.reason << ")\n";
    if (rep.degenerate_empty_partial)
        out << "note: the empty relation passes the definitional check; a nonempty witness is "
               "required\n";
    return 1;
}

}  // namespace detail

/// Runs the command line given the program arguments (without argv[0]).
/// Returns the process exit status; all output goes to the given streams.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compliance checker for object graphs against class-based schemas"};
    app.name("graphcomply");
    app.set_version_flag("--version", std::string(cli_version));
    app.require_subcommand(1);

    CLI::App* validate =
        app.add_subcommand("validate", "Parse graph (.og) and schema (.cg) files");
    std::vector<std::string> validate_paths;
    validate->add_option("files", validate_paths, "Files to validate")->required();

    CLI::App* member = app.add_subcommand("member", "Test a single membership relation");
    detail::MemberArgs m;
    member->add_option("graph", m.graph, "Object graph file")->required();
    member->add_option("schema", m.schema, "Schema file")->required();
    member->add_option("--node", m.node, "Object node id");
    member->add_option("--arc", m.arc, "Object arc id");
    member->add_option("--class", m.klass, "Class id (with --node) or class arc id (with --arc)")
        ->required();
    member->add_option("--kind", m.kind, "Membership kind")
        ->required()
        ->check(CLI::IsMember({"strict", "left", "right", "full", "relational"}));

    CLI::App* check = app.add_subcommand("check", "Check compliance of a graph with a schema");
    detail::CheckArgs c;
    std::string check_mode = "normal";
    std::uint64_t check_budget = 0;
    check->add_option("graph", c.graph, "Object graph file")->required();
    check->add_option("schema", c.schema, "Schema file")->required();
    check->add_option("--mode", check_mode, "Compliance mode: partial, normal or full")
        ->check(CLI::IsMember({"partial", "normal", "full"}));
    check->add_option("--report", c.report, "Write a JSON report to this path");
    check->add_option("--budget", check_budget, "Search budget in candidate expansions");
    check->add_flag("--all", c.all, "Enumerate every minimal witness");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (validate->parsed()) return detail::cmd_validate(validate_paths, out, err);

    if (member->parsed()) return detail::cmd_member(m, out, err);

    // check
    c.mode = *parse_mode(check_mode);
    if (check->count("--budget") > 0) {
        c.budget = check_budget;
    } else if (const char* env = std::getenv("GRAPHCOMPLY_BUDGET")) {
        const std::string_view text(env);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            err << "error: invalid GRAPHCOMPLY_BUDGET value '" << text << "'\n";
            return 2;
        }
        c.budget = value;
    }
    bool unreadable = false;
    auto g = detail::load_object_graph(c.graph, err, unreadable);
    auto s = detail::load_class_graph(c.schema, err, unreadable);
    if (!g || !s) return 2;

    const ComplianceReport rep = find_compliance(*g, *s, c.mode, c.budget);
    std::optional<WitnessEnumeration> all;
    if (c.all) all = find_all_witnesses(*g, *s, c.mode, c.budget);
    if (rep.outcome == ComplianceOutcome::Undecided ||
        (all && all->outcome == ComplianceOutcome::Undecided)) {
        const std::uint64_t spent = all ? std::max(rep.expansions, all->expansions) : rep.expansions;
        err << "search budget exhausted after " << spent << " expansions; result undecided\n";
        return 3;
    }
    return detail::cmd_check(c, *s, rep, all, out, err);
}

}  // namespace graphcomply
