#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace graphcomply {

using Integer = boost::multiprecision::cpp_int;

/// Exact decimal number: mantissa * 10^-scale with the smallest possible
/// scale. Kept exact so numeric predicates stay decidable; there is no
/// rounding, infinity, or NaN anywhere in the model.
class Decimal {
public:
    Decimal() : mantissa_(0), scale_(0) {}

    Decimal(Integer mantissa, int scale) : mantissa_(std::move(mantissa)), scale_(scale) {
        while (scale_ > 0 && mantissa_ % 10 == 0) {
            mantissa_ /= 10;
            --scale_;
        }
        if (mantissa_ == 0) scale_ = 0;
    }

    const Integer& mantissa() const { return mantissa_; }
    int scale() const { return scale_; }

    /// Three-way comparison on the number line.
    static int compare(const Decimal& a, const Decimal& b) {
        Integer lhs = a.mantissa_ * pow10(b.scale_);
        Integer rhs = b.mantissa_ * pow10(a.scale_);
        if (lhs < rhs) return -1;
        if (lhs > rhs) return 1;
        return 0;
    }

    static Decimal from_integer(const Integer& n) { return Decimal(n, 0); }

    /// Canonical text form; always contains a decimal point so the printed
    /// form re-parses as a decimal, never as an integer.
    std::string str() const {
        const bool negative = mantissa_ < 0;
        std::string digits = Integer(negative ? -mantissa_ : mantissa_).str();
        if (static_cast<int>(digits.size()) <= scale_)
            digits.insert(digits.begin(), scale_ + 1 - digits.size(), '0');
        std::string out;
        if (negative) out += '-';
        out.append(digits, 0, digits.size() - scale_);
        out += '.';
        if (scale_ == 0)
            out += '0';
        else
            out.append(digits, digits.size() - scale_, std::string::npos);
        return out;
    }

    friend bool operator==(const Decimal& a, const Decimal& b) {
        return a.scale_ == b.scale_ && a.mantissa_ == b.mantissa_;
    }

private:
    static Integer pow10(int n) {
        Integer r = 1;
        for (int i = 0; i < n; ++i) r *= 10;
        return r;
    }

    Integer mantissa_;
    int scale_;
};

class Value;
struct Property;

/// Finite multiset of properties in canonical form: sorted by (name, value),
/// exact duplicates (same name, structurally equal value) collapsed.
/// Several properties may share a name as long as their values differ.
class PropertyBag {
public:
    PropertyBag() = default;
    explicit PropertyBag(std::vector<Property> props);

    const std::vector<Property>& properties() const { return props_; }
    bool empty() const { return props_.empty(); }
    std::size_t size() const { return props_.size(); }

    bool has(std::string_view name) const;

private:
    std::vector<Property> props_;
};

/// A property value: boolean, arbitrary-precision integer, exact decimal,
/// text, or a nested object (a property bag). Values are immutable.
class Value {
public:
    enum class Kind { Bool, Int, Dec, Text, Obj };

    Value() : v_(false) {}
    Value(bool b) : v_(b) {}
    Value(Integer i) : v_(std::move(i)) {}
    Value(Decimal d) : v_(std::move(d)) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(PropertyBag o) : v_(std::move(o)) {}

    static Value integer(long long n) { return Value(Integer(n)); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_numeric() const { return kind() == Kind::Int || kind() == Kind::Dec; }

    bool as_bool() const { return std::get<bool>(v_); }
    const Integer& as_int() const { return std::get<Integer>(v_); }
    const Decimal& as_dec() const { return std::get<Decimal>(v_); }
    const std::string& as_text() const { return std::get<std::string>(v_); }
    const PropertyBag& as_obj() const { return std::get<PropertyBag>(v_); }

private:
    std::variant<bool, Integer, Decimal, std::string, PropertyBag> v_;
};

struct Property {
    std::string name;
    Value value;
};

/// Total order used for canonical forms (printing, sorting). Orders first by
/// kind, then by content; distinct kinds never compare equal even when
/// numerically equal (13 and 13.0 are structurally different values).
inline int compare(const Value& a, const Value& b);

inline int compare_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

inline int compare(const Property& a, const Property& b) {
    if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
    return compare(a.value, b.value);
}

inline int compare(const Value& a, const Value& b) {
    int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
    if (ka != kb) return compare_int(ka, kb);
    switch (a.kind()) {
        case Value::Kind::Bool:
            return compare_int(a.as_bool() ? 1 : 0, b.as_bool() ? 1 : 0);
        case Value::Kind::Int: {
            const Integer &x = a.as_int(), &y = b.as_int();
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        case Value::Kind::Dec:
            // Normal form is unique, so number-line order is total here.
            return Decimal::compare(a.as_dec(), b.as_dec());
        case Value::Kind::Text: {
            int c = a.as_text().compare(b.as_text());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Value::Kind::Obj: {
            const auto &pa = a.as_obj().properties(), &pb = b.as_obj().properties();
            for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i)
                if (int c = compare(pa[i], pb[i]); c != 0) return c;
            return compare_int(static_cast<int>(pa.size()), static_cast<int>(pb.size()));
        }
    }
    return 0;
}

inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
inline bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
inline bool operator==(const Property& a, const Property& b) { return compare(a, b) == 0; }
inline bool operator==(const PropertyBag& a, const PropertyBag& b) {
    return a.properties() == b.properties();
}
inline bool operator!=(const PropertyBag& a, const PropertyBag& b) { return !(a == b); }

inline PropertyBag::PropertyBag(std::vector<Property> props) : props_(std::move(props)) {
    std::sort(props_.begin(), props_.end(),
              [](const Property& a, const Property& b) { return compare(a, b) < 0; });
    props_.erase(std::unique(props_.begin(), props_.end(),
                             [](const Property& a, const Property& b) { return a == b; }),
                 props_.end());
}

inline bool PropertyBag::has(std::string_view name) const {
    return std::any_of(props_.begin(), props_.end(),
                       [&](const Property& p) { return p.name == name; });
}

/// Three-way numeric comparison across Int and Dec; empty unless both
/// values are numeric.
inline std::optional<int> numeric_compare(const Value& a, const Value& b) {
    if (!a.is_numeric() || !b.is_numeric()) return std::nullopt;
    const Decimal da = a.kind() == Value::Kind::Int ? Decimal::from_integer(a.as_int()) : a.as_dec();
    const Decimal db = b.kind() == Value::Kind::Int ? Decimal::from_integer(b.as_int()) : b.as_dec();
    return Decimal::compare(da, db);
}

/// Semantic equality as used by predicates: numeric values compare on the
/// number line regardless of kind (13 equals 13.0); everything else is deep
/// structural equality, and mismatched kinds are simply unequal.
inline bool semantically_equal(const Value& a, const Value& b) {
    if (auto c = numeric_compare(a, b)) return *c == 0;
    if (a.kind() != b.kind()) return false;
    return a == b;
}

/// Reserved property names: arc endpoints live in dedicated fields, never in
/// property bags.
inline bool is_reserved_name(std::string_view name) { return name == "src" || name == "dst"; }

inline std::string quote_text(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

/// Canonical single-line text form of a value, matching the graph text
/// syntax: strings quoted, decimals with a decimal point, nested objects as
/// inline `{ name = value; ... }` blocks.
inline std::string print_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Bool: return v.as_bool() ? "true" : "false";
        case Value::Kind::Int: return v.as_int().str();
        case Value::Kind::Dec: return v.as_dec().str();
        case Value::Kind::Text: return quote_text(v.as_text());
        case Value::Kind::Obj: {
            const auto& props = v.as_obj().properties();
            if (props.empty()) return "{}";
            std::string out = "{ ";
            for (const Property& p : props) {
                out += p.name;
                out += " = ";
                out += print_value(p.value);
                out += "; ";
            }
            out += '}';
            return out;
        }
    }
    return {};
}

/// Identifiers name graph entities and properties: [A-Za-z_][A-Za-z0-9_]*.
inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), tail);
}

}  // namespace graphcomply
