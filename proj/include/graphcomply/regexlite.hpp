#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphcomply::regexlite {

// Small anchored matcher for the `matches` predicate. Deliberately tiny
// dialect: literals, '.', escapes, character classes with ranges and
// negation, grouping, alternation, and the *, +, ? quantifiers. Compiles to
// a Thompson NFA and simulates it, so matching runs in O(pattern * text)
// with no backtracking; backreferences and counted repetition do not exist.
// '{' and '}' are ordinary characters. The whole text must match (anchored
// at both ends). Text and pattern are treated as UTF-8 code point sequences;
// the shorthand classes \d, \w, \s are ASCII-only.

struct CompileError {
    std::size_t position = 0;  // byte offset into the pattern
    std::string message;
};

namespace detail {

// Invalid UTF-8 bytes map to distinct out-of-range symbols so matching is
// total and deterministic on arbitrary byte strings.
inline std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    auto bad = [&](unsigned char b) { out.push_back(0x110000u + b); };
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        int len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1Fu;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0Fu;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07u;
        } else {
            bad(b0);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            bad(b0);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (bk & 0x3Fu);
        }
        const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                              (len == 4 && cp < 0x10000);
        if (!ok || overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            bad(b0);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

using Ranges = std::vector<std::pair<char32_t, char32_t>>;

struct Inst {
    enum class Op { Char, Class, Any, Split, Jmp, Match };
    Op op = Op::Match;
    char32_t ch = 0;
    bool negated = false;
    Ranges ranges;
    int x = 0, y = 0;
};

struct Node {
    enum class T { Empty, Char, Any, Class, Concat, Alt, Star, Plus, Opt };
    T t = T::Empty;
    char32_t ch = 0;
    bool negated = false;
    Ranges ranges;
    std::vector<Node> kids;
};

class PatternParser {
public:
    PatternParser(std::string_view pattern)
        : bytes_(pattern), cps_(decode_utf8(pattern)) {
        byte_of_.reserve(cps_.size() + 1);
        std::size_t off = 0, ci = 0;
        while (off < bytes_.size() && ci < cps_.size()) {
            byte_of_.push_back(off);
            off += encoded_len(bytes_, off);
            ++ci;
        }
        byte_of_.push_back(bytes_.size());
    }

    std::optional<Node> parse(CompileError& err) {
        err_ = &err;
        failed_ = false;
        Node n = parse_alt();
        if (!failed_ && pos_ < cps_.size()) fail("unexpected ')'");
        if (failed_) return std::nullopt;
        return n;
    }

private:
    static std::size_t encoded_len(std::string_view s, std::size_t off) {
        const unsigned char b = static_cast<unsigned char>(s[off]);
        if (b < 0x80) return 1;
        if ((b & 0xE0) == 0xC0) return off + 2 <= s.size() ? 2 : 1;
        if ((b & 0xF0) == 0xE0) return off + 3 <= s.size() ? 3 : 1;
        if ((b & 0xF8) == 0xF0) return off + 4 <= s.size() ? 4 : 1;
        return 1;
    }

    bool at_end() const { return pos_ >= cps_.size(); }
    char32_t peek() const { return cps_[pos_]; }
    char32_t take() { return cps_[pos_++]; }

    void fail(std::string message) {
        if (failed_) return;
        failed_ = true;
        err_->position = byte_of_[pos_ < byte_of_.size() ? pos_ : byte_of_.size() - 1];
        err_->message = std::move(message);
    }

    Node parse_alt() {
        Node first = parse_concat();
        if (failed_ || at_end() || peek() != U'|') return first;
        Node alt;
        alt.t = Node::T::Alt;
        alt.kids.push_back(std::move(first));
        while (!failed_ && !at_end() && peek() == U'|') {
            take();
            alt.kids.push_back(parse_concat());
        }
        return alt;
    }

    Node parse_concat() {
        Node cat;
        cat.t = Node::T::Concat;
        while (!failed_ && !at_end() && peek() != U'|' && peek() != U')')
            cat.kids.push_back(parse_repeat());
        if (cat.kids.size() == 1) return std::move(cat.kids[0]);
        if (cat.kids.empty()) cat.t = Node::T::Empty;
        return cat;
    }

    Node parse_repeat() {
        Node atom = parse_atom();
        bool quantified = false;
        while (!failed_ && !at_end() && (peek() == U'*' || peek() == U'+' || peek() == U'?')) {
            if (quantified) {
                fail("quantifier follows a quantifier");
                return atom;
            }
            quantified = true;
            const char32_t q = take();
            Node wrap;
            wrap.t = q == U'*' ? Node::T::Star : q == U'+' ? Node::T::Plus : Node::T::Opt;
            wrap.kids.push_back(std::move(atom));
            atom = std::move(wrap);
        }
        return atom;
    }

    Node parse_atom() {
        if (at_end()) {
            fail("pattern ends where a term was expected");
            return {};
        }
        const char32_t c = take();
        Node n;
        switch (c) {
            case U'(': {
                n = parse_alt();
                if (!failed_ && (at_end() || peek() != U')'))
                    fail("unbalanced '('");
                else if (!failed_)
                    take();
                return n;
            }
            case U'*':
            case U'+':
            case U'?':
                --pos_;
                fail("quantifier has nothing to repeat");
                return n;
            case U'[':
                return parse_class();
            case U'.':
                n.t = Node::T::Any;
                return n;
            case U'\\':
                return parse_escape(false);
            default:
                n.t = Node::T::Char;
                n.ch = c;
                return n;
        }
    }

    Node parse_escape(bool in_class) {
        Node n;
        if (at_end()) {
            fail("trailing backslash");
            return n;
        }
        const char32_t c = take();
        auto cls = [&](std::initializer_list<std::pair<char32_t, char32_t>> rs, bool neg) {
            n.t = Node::T::Class;
            n.negated = neg;
            n.ranges.assign(rs);
            return n;
        };
        switch (c) {
            case U'd': return cls({{U'0', U'9'}}, false);
            case U'D': return cls({{U'0', U'9'}}, true);
            case U'w': return cls({{U'0', U'9'}, {U'A', U'Z'}, {U'_', U'_'}, {U'a', U'z'}}, false);
            case U'W': return cls({{U'0', U'9'}, {U'A', U'Z'}, {U'_', U'_'}, {U'a', U'z'}}, true);
            case U's':
                return cls({{U'\t', U'\r'}, {U' ', U' '}}, false);
            case U'S':
                return cls({{U'\t', U'\r'}, {U' ', U' '}}, true);
            case U'n': n.t = Node::T::Char; n.ch = U'\n'; return n;
            case U't': n.t = Node::T::Char; n.ch = U'\t'; return n;
            case U'r': n.t = Node::T::Char; n.ch = U'\r'; return n;
            default:
                if (c >= U'1' && c <= U'9') {
                    pos_ -= 1;
                    fail("backreferences are not supported");
                    return n;
                }
                if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) {
                    pos_ -= 1;
                    fail("unknown escape");
                    return n;
                }
                (void)in_class;
                n.t = Node::T::Char;
                n.ch = c;
                return n;
        }
    }

    Node parse_class() {
        Node n;
        n.t = Node::T::Class;
        if (!at_end() && peek() == U'^') {
            take();
            n.negated = true;
        }
        bool first = true;
        while (true) {
            if (at_end()) {
                fail("unbalanced '['");
                return n;
            }
            if (peek() == U']' && !first) {
                take();
                if (n.ranges.empty()) fail("empty character class");
                return n;
            }
            first = false;
            char32_t lo;
            if (peek() == U'\\') {
                take();
                Node esc = parse_escape(true);
                if (failed_) return n;
                if (esc.t == Node::T::Class) {
                    if (esc.negated) {
                        fail("negated class escape inside a character class");
                        return n;
                    }
                    n.ranges.insert(n.ranges.end(), esc.ranges.begin(), esc.ranges.end());
                    continue;
                }
                lo = esc.ch;
            } else {
                lo = take();
            }
            char32_t hi = lo;
            if (!at_end() && peek() == U'-' && pos_ + 1 < cps_.size() && cps_[pos_ + 1] != U']') {
                take();
                if (peek() == U'\\') {
                    take();
                    Node esc = parse_escape(true);
                    if (failed_) return n;
                    if (esc.t == Node::T::Class) {
                        fail("class escape cannot end a range");
                        return n;
                    }
                    hi = esc.ch;
                } else {
                    hi = take();
                }
                if (hi < lo) {
                    fail("range is out of order");
                    return n;
                }
            }
            n.ranges.emplace_back(lo, hi);
        }
    }

    std::string_view bytes_;
    std::vector<char32_t> cps_;
    std::vector<std::size_t> byte_of_;
    std::size_t pos_ = 0;
    CompileError* err_ = nullptr;
    bool failed_ = false;
};

inline void emit(const Node& n, std::vector<Inst>& prog) {
    auto pc = [&] { return static_cast<int>(prog.size()); };
    switch (n.t) {
        case Node::T::Empty:
            break;
        case Node::T::Char: {
            Inst i;
            i.op = Inst::Op::Char;
            i.ch = n.ch;
            prog.push_back(std::move(i));
            break;
        }
        case Node::T::Any: {
            Inst i;
            i.op = Inst::Op::Any;
            prog.push_back(std::move(i));
            break;
        }
        case Node::T::Class: {
            Inst i;
            i.op = Inst::Op::Class;
            i.negated = n.negated;
            i.ranges = n.ranges;
            prog.push_back(std::move(i));
            break;
        }
        case Node::T::Concat:
            for (const Node& k : n.kids) emit(k, prog);
            break;
        case Node::T::Alt: {
            // split; alt0; jmp end; alt1; ... ; end
            std::vector<int> jumps;
            for (std::size_t k = 0; k < n.kids.size(); ++k) {
                const bool last = k + 1 == n.kids.size();
                int split = -1;
                if (!last) {
                    split = pc();
                    prog.push_back(Inst{Inst::Op::Split, 0, false, {}, 0, 0});
                    prog[split].x = pc();
                }
                emit(n.kids[k], prog);
                if (!last) {
                    jumps.push_back(pc());
                    prog.push_back(Inst{Inst::Op::Jmp, 0, false, {}, 0, 0});
                    prog[split].y = pc();
                }
            }
            for (int j : jumps) prog[j].x = pc();
            break;
        }
        case Node::T::Star: {
            const int split = pc();
            prog.push_back(Inst{Inst::Op::Split, 0, false, {}, 0, 0});
            prog[split].x = pc();
            emit(n.kids[0], prog);
            prog.push_back(Inst{Inst::Op::Jmp, 0, false, {}, split, 0});
            prog[split].y = pc();
            break;
        }
        case Node::T::Plus: {
            const int body = pc();
            emit(n.kids[0], prog);
            const int split = pc();
            prog.push_back(Inst{Inst::Op::Split, 0, false, {}, body, 0});
            prog[split].y = pc();
            break;
        }
        case Node::T::Opt: {
            const int split = pc();
            prog.push_back(Inst{Inst::Op::Split, 0, false, {}, 0, 0});
            prog[split].x = pc();
            emit(n.kids[0], prog);
            prog[split].y = pc();
            break;
        }
    }
}

inline bool in_ranges(const Inst& i, char32_t c) {
    for (const auto& [lo, hi] : i.ranges)
        if (c >= lo && c <= hi) return true;
    return false;
}

}  // namespace detail

class Pattern {
public:
    /// Compiles `pattern`; on failure returns std::nullopt and fills `err`.
    static std::optional<Pattern> compile(std::string_view pattern, CompileError& err) {
        detail::PatternParser parser(pattern);
        std::optional<detail::Node> ast = parser.parse(err);
        if (!ast) return std::nullopt;
        Pattern p;
        p.source_ = std::string(pattern);
        detail::emit(*ast, p.prog_);
        p.prog_.push_back(detail::Inst{});  // Op::Match
        return p;
    }

    const std::string& source() const { return source_; }

    /// Anchored match of the whole text.
    bool match(std::string_view text) const {
        const std::vector<char32_t> input = detail::decode_utf8(text);
        std::vector<int> current, next;
        std::vector<bool> seen(prog_.size(), false);
        add_thread(current, 0, seen);
        for (const char32_t c : input) {
            next.clear();
            std::fill(seen.begin(), seen.end(), false);
            for (const int pc : current) {
                const detail::Inst& i = prog_[pc];
                using Op = detail::Inst::Op;
                const bool ok = (i.op == Op::Char && i.ch == c) || (i.op == Op::Any) ||
                                (i.op == Op::Class && detail::in_ranges(i, c) != i.negated);
                if (ok) add_thread(next, pc + 1, seen);
            }
            current.swap(next);
            if (current.empty()) return false;
        }
        for (const int pc : current)
            if (prog_[pc].op == detail::Inst::Op::Match) return true;
        return false;
    }

private:
    void add_thread(std::vector<int>& list, int pc, std::vector<bool>& seen) const {
        if (seen[pc]) return;
        seen[pc] = true;
        const detail::Inst& i = prog_[pc];
        if (i.op == detail::Inst::Op::Jmp) {
            add_thread(list, i.x, seen);
        } else if (i.op == detail::Inst::Op::Split) {
            add_thread(list, i.x, seen);
            add_thread(list, i.y, seen);
        } else {
            list.push_back(pc);
        }
    }

    std::string source_;
    std::vector<detail::Inst> prog_;
};

}  // namespace graphcomply::regexlite
