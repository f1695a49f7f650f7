#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphcomply/diagnostics.hpp"
#include "graphcomply/value.hpp"

namespace graphcomply::detail {

// Token stream shared by the predicate and graph text parsers.
// `#` starts a comment running to end of line. Columns count bytes, 1-based.

struct Token {
    enum class Type { Ident, String, Int, Dec, Punct, End };

    Type type = Type::End;
    std::string text;  // identifier, punctuation, or raw number text
    Value value;       // decoded value for String / Int / Dec
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view src, std::string file, SourceLocation base = {1, 1})
        : src_(src), file_(std::move(file)), line_(base.line), col_(base.column) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (at_end()) {
                out.push_back(make(Token::Type::End, "", mark()));
                return out;
            }
            const SourceLocation start = mark();
            const char c = peek();
            if (c == '"') {
                lex_string(out, diags, start);
            } else if (is_digit(c) || (c == '-' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
                lex_number(out, diags, start);
            } else if (is_ident_head(c)) {
                std::string text;
                while (!at_end() && is_ident_tail(peek())) text += take();
                out.push_back(make(Token::Type::Ident, std::move(text), start));
            } else {
                lex_punct(out, diags, start);
            }
        }
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    char take() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    SourceLocation mark() const { return {line_, col_}; }

    Token make(Token::Type type, std::string text, SourceLocation start, Value value = {}) const {
        Token t;
        t.type = type;
        t.text = std::move(text);
        t.value = std::move(value);
        t.span = {file_, start, mark()};
        return t;
    }

    void error(std::vector<Diagnostic>& diags, SourceLocation start, std::string message) const {
        diags.push_back({Severity::Error, {file_, start, mark()}, std::move(message), {}});
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_head(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_tail(char c) { return is_ident_head(c) || is_digit(c); }

    void skip_trivia() {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') take();
            } else {
                return;
            }
        }
    }

    void lex_string(std::vector<Token>& out, std::vector<Diagnostic>& diags,
                    SourceLocation start) {
        take();  // opening quote
        std::string text;
        while (true) {
            if (at_end() || peek() == '\n') {
                error(diags, start, "unterminated string");
                return;
            }
            char c = take();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) {
                    error(diags, start, "unterminated string");
                    return;
                }
                const char e = take();
                switch (e) {
                    case '"': text += '"'; break;
                    case '\\': text += '\\'; break;
                    case 'n': text += '\n'; break;
                    case 't': text += '\t'; break;
                    case 'r': text += '\r'; break;
                    default:
                        error(diags, start, std::string("unknown escape '\\") + e + "' in string");
                        return;
                }
            } else {
                text += c;
            }
        }
        out.push_back(make(Token::Type::String, text, start, Value(text)));
    }

    void lex_number(std::vector<Token>& out, std::vector<Diagnostic>& diags,
                    SourceLocation start) {
        std::string text;
        if (peek() == '-') text += take();
        while (!at_end() && is_digit(peek())) text += take();
        bool decimal = false;
        if (!at_end() && peek() == '.') {
            decimal = true;
            text += take();
            if (at_end() || !is_digit(peek())) {
                error(diags, start, "digits must follow the decimal point");
                return;
            }
            while (!at_end() && is_digit(peek())) text += take();
        }
        if (!at_end() && is_ident_head(peek())) {
            while (!at_end() && is_ident_tail(peek())) text += take();
            error(diags, start, "malformed number '" + text + "'");
            return;
        }
        if (decimal) {
            const std::size_t dot = text.find('.');
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const int scale = static_cast<int>(text.size() - dot - 1);
            out.push_back(make(Token::Type::Dec, text, start, Value(Decimal(Integer(digits), scale))));
        } else {
            out.push_back(make(Token::Type::Int, text, start, Value(Integer(text))));
        }
    }

    void lex_punct(std::vector<Token>& out, std::vector<Diagnostic>& diags,
                   SourceLocation start) {
        const char c = take();
        std::string text(1, c);
        switch (c) {
            case '!':
                if (!at_end() && peek() == '=') {
                    text += take();
                    break;
                }
                error(diags, start, "stray '!' (did you mean '!='?)");
                return;
            case '<':
            case '>':
                if (!at_end() && peek() == '=') text += take();
                break;
            case '-':
                if (!at_end() && peek() == '>') {
                    text += take();
                    break;
                }
                error(diags, start, "stray '-'");
                return;
            case '=':
            case '(':
            case ')':
            case '{':
            case '}':
            case ',':
            case ';':
            case ':':
                break;
            default:
                error(diags, start, std::string("unexpected character '") + c + "'");
                return;
        }
        out.push_back(make(Token::Type::Punct, std::move(text), start));
    }

    std::string_view src_;
    std::string file_;
    int line_, col_;
    std::size_t pos_ = 0;
};

}  // namespace graphcomply::detail
