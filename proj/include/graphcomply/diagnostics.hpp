#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace graphcomply {

/// Half-open region of source text, 1-based lines and columns.
struct SourceLocation {
    int line = 1;
    int column = 1;
};

struct SourceSpan {
    std::string file;  // empty for in-memory sources
    SourceLocation begin;
    SourceLocation end;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected;  // for syntax errors: the acceptable tokens
};

inline std::string to_string(const SourceSpan& s) {
    std::ostringstream out;
    if (!s.file.empty()) out << s.file << ':';
    out << s.begin.line << ':' << s.begin.column;
    if (s.end.line != s.begin.line || s.end.column != s.begin.column)
        out << '-' << s.end.line << ':' << s.end.column;
    return out.str();
}

inline std::string to_string(const Diagnostic& d) {
    std::ostringstream out;
    out << to_string(d.span) << ": "
        << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message;
    if (!d.expected.empty()) {
        out << " (expected ";
        for (std::size_t i = 0; i < d.expected.size(); ++i) {
            if (i) out << (i + 1 == d.expected.size() ? " or " : ", ");
            out << d.expected[i];
        }
        out << ')';
    }
    return out.str();
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

/// Outcome of any parse: a value when parsing succeeded, plus every
/// diagnostic collected along the way. Converts to true only on success.
template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    explicit operator bool() const { return value.has_value() && !has_errors(diagnostics); }
};

}  // namespace graphcomply
