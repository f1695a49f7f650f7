#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "graphcomply/model.hpp"
#include "graphcomply/predicate.hpp"

namespace graphcomply {

inline bool satisfies(const Property& p, const PropertyConstraint& c, const EvalContext& ctx) {
    return p.name == c.name && eval_predicate(c.predicate, p.value, ctx);
}

/// Core instance-of check: every constraint is satisfied by at least one
/// property. Extra properties are ignored; an empty constraint list accepts
/// anything.
inline bool instance_of(const std::vector<Property>& props,
                        const std::vector<PropertyConstraint>& constraints,
                        const EvalContext& ctx) {
    for (const PropertyConstraint& c : constraints) {
        if (std::none_of(props.begin(), props.end(),
                         [&](const Property& p) { return satisfies(p, c, ctx); }))
            return false;
    }
    return true;
}

inline bool instance_of(const PropertyBag& bag, const std::vector<PropertyConstraint>& constraints,
                        const EvalContext& ctx) {
    return instance_of(bag.properties(), constraints, ctx);
}

/// Wires InstanceOfRef resolution: an object value instantiates a class when
/// its bag satisfies every constraint of that class. An unknown class
/// accepts nothing.
inline EvalContext make_context(const ObjectGraph& g, const ClassGraph& s) {
    EvalContext ctx;
    ctx.graph = &g;
    ctx.schema = &s;
    ctx.instance_of = [](const Value& v, const std::string& class_ref, const EvalContext& c) {
        if (v.kind() != Value::Kind::Obj || !c.schema) return false;
        const ClassNode* k = c.schema->find_class(class_ref);
        return k && instance_of(v.as_obj(), k->constraints, c);
    };
    return ctx;
}

inline EvalContext make_context(const ClassGraph& s) {
    EvalContext ctx;
    ctx.schema = &s;
    ctx.instance_of = [](const Value& v, const std::string& class_ref, const EvalContext& c) {
        if (v.kind() != Value::Kind::Obj || !c.schema) return false;
        const ClassNode* k = c.schema->find_class(class_ref);
        return k && instance_of(v.as_obj(), k->constraints, c);
    };
    return ctx;
}

inline bool node_instance_of(const ObjectNode& n, const ClassNode& c, const EvalContext& ctx) {
    return instance_of(n.bag, c.constraints, ctx);
}

/// Arc instance-of treats endpoints as two more properties: the arc gets
/// virtual src/dst properties holding the endpoint nodes' bags, the class
/// arc gets virtual src/dst constraints requiring those bags to instantiate
/// the endpoint classes. One uniform check then covers everything.
inline bool arc_instance_of(const ObjectArc& a, const ClassArc& ca, const ObjectGraph& g,
                            const ClassGraph& s, const EvalContext& ctx) {
    const ObjectNode* src = g.find_node(a.src);
    const ObjectNode* dst = g.find_node(a.dst);
    if (!src || !dst || !s.find_class(ca.src) || !s.find_class(ca.dst)) return false;
    std::vector<Property> props(a.bag.properties());
    props.push_back({"src", Value(src->bag)});
    props.push_back({"dst", Value(dst->bag)});
    std::vector<PropertyConstraint> cs(ca.constraints);
    cs.push_back({"src", pred::instance_of_ref(ca.src)});
    cs.push_back({"dst", pred::instance_of_ref(ca.dst)});
    return instance_of(props, cs, ctx);
}

// The membership ladder. Strict looks only at the entity's own properties;
// the directional arc kinds add endpoint checks; relational node membership
// additionally demands counterparts for every incident class arc.

inline bool node_strict_member(const ObjectNode& n, const ClassNode& c, const EvalContext& ctx) {
    return node_instance_of(n, c, ctx);
}

inline bool arc_strict_member(const ObjectArc& a, const ClassArc& ca, const EvalContext& ctx) {
    return instance_of(a.bag, ca.constraints, ctx);
}

inline bool arc_left_member(const ObjectArc& a, const ClassArc& ca, const ObjectGraph& g,
                            const ClassGraph& s, const EvalContext& ctx) {
    if (!arc_strict_member(a, ca, ctx)) return false;
    const ObjectNode* src = g.find_node(a.src);
    const ClassNode* sc = s.find_class(ca.src);
    return src && sc && node_strict_member(*src, *sc, ctx);
}

inline bool arc_right_member(const ObjectArc& a, const ClassArc& ca, const ObjectGraph& g,
                             const ClassGraph& s, const EvalContext& ctx) {
    if (!arc_strict_member(a, ca, ctx)) return false;
    const ObjectNode* dst = g.find_node(a.dst);
    const ClassNode* dc = s.find_class(ca.dst);
    return dst && dc && node_strict_member(*dst, *dc, ctx);
}

inline bool arc_full_member(const ObjectArc& a, const ClassArc& ca, const ObjectGraph& g,
                            const ClassGraph& s, const EvalContext& ctx) {
    return arc_left_member(a, ca, g, s, ctx) && arc_right_member(a, ca, g, s, ctx);
}

/// A node n is a relational member of class c when
///   1. n is a strict member of c,
///   2. every class arc leaving c has a left-member arc leaving n, and
///   3. every class arc entering c has a right-member arc entering n.
/// A loop class arc on c imposes both 2 and 3.
inline bool node_relational_member(const ObjectNode& n, const ClassNode& c, const ObjectGraph& g,
                                   const ClassGraph& s, const EvalContext& ctx) {
    if (!node_strict_member(n, c, ctx)) return false;
    for (const ClassArc& ca : s.arcs()) {
        if (ca.src == c.id &&
            std::none_of(g.arcs().begin(), g.arcs().end(), [&](const ObjectArc& a) {
                return a.src == n.id && arc_left_member(a, ca, g, s, ctx);
            }))
            return false;
        if (ca.dst == c.id &&
            std::none_of(g.arcs().begin(), g.arcs().end(), [&](const ObjectArc& a) {
                return a.dst == n.id && arc_right_member(a, ca, g, s, ctx);
            }))
            return false;
    }
    return true;
}

// Explained variants, for reporting. They recompute the same checks and
// surface the first failure in canonical order.

struct MembershipVerdict {
    bool member = false;
    std::string reason;  // empty when member

    explicit operator bool() const { return member; }
};

namespace detail {

inline std::string describe_constraint(const PropertyConstraint& c) {
    return c.name + ": " + pretty_print(c.predicate);
}

inline MembershipVerdict explain_instance_of(const std::vector<Property>& props,
                                             const std::vector<PropertyConstraint>& constraints,
                                             const EvalContext& ctx) {
    for (const PropertyConstraint& c : constraints) {
        if (std::none_of(props.begin(), props.end(),
                         [&](const Property& p) { return satisfies(p, c, ctx); }))
            return {false, "no property satisfies constraint '" + describe_constraint(c) + "'"};
    }
    return {true, {}};
}

}  // namespace detail

inline MembershipVerdict explain_node_strict(const ObjectNode& n, const ClassNode& c,
                                             const EvalContext& ctx) {
    return detail::explain_instance_of(n.bag.properties(), c.constraints, ctx);
}

inline MembershipVerdict explain_arc_strict(const ObjectArc& a, const ClassArc& ca,
                                            const EvalContext& ctx) {
    return detail::explain_instance_of(a.bag.properties(), ca.constraints, ctx);
}

inline MembershipVerdict explain_arc_left(const ObjectArc& a, const ClassArc& ca,
                                          const ObjectGraph& g, const ClassGraph& s,
                                          const EvalContext& ctx) {
    MembershipVerdict strict = explain_arc_strict(a, ca, ctx);
    if (!strict) return strict;
    const ObjectNode* src = g.find_node(a.src);
    const ClassNode* sc = s.find_class(ca.src);
    if (!src || !sc) return {false, "unresolved endpoint"};
    MembershipVerdict v = explain_node_strict(*src, *sc, ctx);
    if (!v)
        return {false, "source node '" + src->id + "' is not a strict member of class '" +
                           sc->id + "': " + v.reason};
    return {true, {}};
}

inline MembershipVerdict explain_arc_right(const ObjectArc& a, const ClassArc& ca,
                                           const ObjectGraph& g, const ClassGraph& s,
                                           const EvalContext& ctx) {
    MembershipVerdict strict = explain_arc_strict(a, ca, ctx);
    if (!strict) return strict;
    const ObjectNode* dst = g.find_node(a.dst);
    const ClassNode* dc = s.find_class(ca.dst);
    if (!dst || !dc) return {false, "unresolved endpoint"};
    MembershipVerdict v = explain_node_strict(*dst, *dc, ctx);
    if (!v)
        return {false, "destination node '" + dst->id + "' is not a strict member of class '" +
                           dc->id + "': " + v.reason};
    return {true, {}};
}

inline MembershipVerdict explain_arc_full(const ObjectArc& a, const ClassArc& ca,
                                          const ObjectGraph& g, const ClassGraph& s,
                                          const EvalContext& ctx) {
    MembershipVerdict left = explain_arc_left(a, ca, g, s, ctx);
    if (!left) return left;
    return explain_arc_right(a, ca, g, s, ctx);
}

inline MembershipVerdict explain_node_relational(const ObjectNode& n, const ClassNode& c,
                                                 const ObjectGraph& g, const ClassGraph& s,
                                                 const EvalContext& ctx) {
    MembershipVerdict strict = explain_node_strict(n, c, ctx);
    if (!strict) return strict;
    for (const ClassArc& ca : s.arcs()) {
        if (ca.src == c.id &&
            std::none_of(g.arcs().begin(), g.arcs().end(), [&](const ObjectArc& a) {
                return a.src == n.id && arc_left_member(a, ca, g, s, ctx);
            }))
            return {false, "no arc leaving '" + n.id + "' is a left member of class arc '" +
                               ca.id + "' (" + ca.src + " -> " + ca.dst + ")"};
        if (ca.dst == c.id &&
            std::none_of(g.arcs().begin(), g.arcs().end(), [&](const ObjectArc& a) {
                return a.dst == n.id && arc_right_member(a, ca, g, s, ctx);
            }))
            return {false, "no arc entering '" + n.id + "' is a right member of class arc '" +
                               ca.id + "' (" + ca.src + " -> " + ca.dst + ")"};
    }
    return {true, {}};
}

}  // namespace graphcomply
