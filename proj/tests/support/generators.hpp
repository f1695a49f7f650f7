#pragma once

#include <random>
#include <string>
#include <vector>

#include "graphcomply/model.hpp"
#include "graphcomply/predicate.hpp"

// Random instance generators for the property suites. Everything is driven
// by an explicitly seeded engine, so failures reproduce. Names and scalar
// values come from small pools to keep the probability of constraints
// actually matching properties (and endpoints resolving) usefully high.

namespace testsupport {

using Rng = std::mt19937_64;
using namespace graphcomply;

inline int roll(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string property_name(Rng& rng) {
    static const char* pool[] = {"p", "q", "r", "t"};
    return pool[roll(rng, 0, 3)];
}

inline Value scalar_value(Rng& rng) {
    switch (roll(rng, 0, 8)) {
        case 0: return Value(Integer(1));
        case 1: return Value(Integer(2));
        case 2: return Value(Integer(13));
        case 3: return Value(Decimal(Integer(25), 1));  // 2.5
        case 4: return Value("x");
        case 5: return Value("y");
        case 6: return Value("Love");
        case 7: return Value(true);
        default: return Value(false);
    }
}

/// Comparison bounds must be numbers; the grammar has no ordering for the
/// other kinds.
inline Value numeric_value(Rng& rng) {
    switch (roll(rng, 0, 3)) {
        case 0: return Value(Integer(1));
        case 1: return Value(Integer(2));
        case 2: return Value(Integer(13));
        default: return Value(Decimal(Integer(25), 1));  // 2.5
    }
}

inline Value value(Rng& rng, int depth = 0) {
    if (depth == 0 && roll(rng, 0, 5) == 0) {
        std::vector<Property> props;
        const int n = roll(rng, 0, 2);
        for (int i = 0; i < n; ++i) props.push_back({property_name(rng), value(rng, depth + 1)});
        return Value(PropertyBag(std::move(props)));
    }
    return scalar_value(rng);
}

inline PropertyBag bag(Rng& rng, int max_props = 3) {
    std::vector<Property> props;
    const int n = roll(rng, 0, max_props);
    for (int i = 0; i < n; ++i) props.push_back({property_name(rng), value(rng)});
    return PropertyBag(std::move(props));
}

inline PredicateExpr predicate(Rng& rng, int depth = 0) {
    const int max_case = depth >= 2 ? 8 : 11;
    switch (roll(rng, 0, max_case)) {
        case 0: return pred::exists();
        case 1: return pred::eq(scalar_value(rng));
        case 2: return pred::neq(scalar_value(rng));
        case 3: return pred::lt(numeric_value(rng));
        case 4: return pred::le(numeric_value(rng));
        case 5: return pred::gt(numeric_value(rng));
        case 6: return pred::ge(numeric_value(rng));
        case 7: return pred::in_set({scalar_value(rng), scalar_value(rng)});
        case 8: return *pred::matches(roll(rng, 0, 1) ? "x*y?" : "Lov.|x");
        case 9: return pred::not_(predicate(rng, depth + 1));
        case 10: return pred::and_({predicate(rng, depth + 1), predicate(rng, depth + 1)});
        default: return pred::or_({predicate(rng, depth + 1), predicate(rng, depth + 1)});
    }
}

inline std::vector<PropertyConstraint> constraints(Rng& rng, int max_count = 2) {
    std::vector<PropertyConstraint> cs;
    const int n = roll(rng, 0, max_count);
    for (int i = 0; i < n; ++i) cs.push_back({property_name(rng), predicate(rng)});
    return cs;
}

/// Up to 4 nodes and 5 arcs; arc endpoints always resolve, loops and
/// parallel arcs occur naturally.
inline ObjectGraph object_graph(Rng& rng) {
    std::vector<ObjectNode> nodes;
    const int nn = roll(rng, 1, 4);
    for (int i = 0; i < nn; ++i) nodes.push_back({"n" + std::to_string(i), bag(rng)});
    std::vector<ObjectArc> arcs;
    const int na = roll(rng, 0, 5);
    for (int i = 0; i < na; ++i) {
        std::string src = "n" + std::to_string(roll(rng, 0, nn - 1));
        std::string dst = "n" + std::to_string(roll(rng, 0, nn - 1));
        arcs.push_back({"e" + std::to_string(i), std::move(src), std::move(dst), bag(rng, 2)});
    }
    auto built = build_object_graph(std::move(nodes), std::move(arcs));
    return *built.graph;
}

/// 1 to 3 classes and up to 4 class arcs.
inline ClassGraph class_graph(Rng& rng) {
    std::vector<ClassNode> classes;
    const int nc = roll(rng, 1, 3);
    for (int i = 0; i < nc; ++i) classes.push_back({"c" + std::to_string(i), constraints(rng)});
    std::vector<ClassArc> arcs;
    const int na = roll(rng, 0, 4);
    for (int i = 0; i < na; ++i) {
        std::string src = "c" + std::to_string(roll(rng, 0, nc - 1));
        std::string dst = "c" + std::to_string(roll(rng, 0, nc - 1));
        arcs.push_back(
            {"a" + std::to_string(i), std::move(src), std::move(dst), constraints(rng, 1)});
    }
    auto built = build_class_graph(std::move(classes), std::move(arcs));
    return *built.graph;
}

}  // namespace testsupport
