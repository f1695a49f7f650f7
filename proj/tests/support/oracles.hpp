#pragma once

#include <algorithm>

#include "graphcomply/membership.hpp"
#include "graphcomply/model.hpp"

// Independent re-derivations used to cross-check the library. These are
// written directly from the definitions, with none of the library's
// decomposition into left/right membership or virtual endpoint constraints,
// so a shared bug would have to be shared by two different shapes of code.

namespace testsupport {

using namespace graphcomply;

/// A property bag is an instance of a constraint list when every constraint
/// finds a same-named property whose value satisfies its predicate.
inline bool oracle_instance_of(const std::vector<Property>& props,
                               const std::vector<PropertyConstraint>& cs,
                               const EvalContext& ctx) {
    return std::all_of(cs.begin(), cs.end(), [&](const PropertyConstraint& c) {
        return std::any_of(props.begin(), props.end(), [&](const Property& p) {
            return p.name == c.name && eval_predicate(c.predicate, p.value, ctx);
        });
    });
}

/// An arc is an instance of a class arc when its own properties satisfy the
/// class arc's own constraints and both endpoint nodes are instances of the
/// endpoint classes. Stated in one breath, without the library's membership
/// ladder.
inline bool oracle_arc_instance_of(const ObjectArc& a, const ClassArc& ca, const ObjectGraph& g,
                                   const ClassGraph& s, const EvalContext& ctx) {
    if (!oracle_instance_of(a.bag.properties(), ca.constraints, ctx)) return false;
    const ObjectNode* src = g.find_node(a.src);
    const ObjectNode* dst = g.find_node(a.dst);
    const ClassNode* sc = s.find_class(ca.src);
    const ClassNode* dc = s.find_class(ca.dst);
    if (!src || !dst || !sc || !dc) return false;
    return oracle_instance_of(src->bag.properties(), sc->constraints, ctx) &&
           oracle_instance_of(dst->bag.properties(), dc->constraints, ctx);
}

}  // namespace testsupport
