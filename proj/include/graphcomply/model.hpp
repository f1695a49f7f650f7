#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphcomply/predicate.hpp"
#include "graphcomply/value.hpp"

namespace graphcomply {

// Object-based graphs carry data; class-based graphs (schemas) carry
// constraints. Entities are referenced by explicit ids: ids name things and
// never take part in property satisfaction. Arc endpoints live in the
// dedicated src/dst fields, which is why those names are reserved in bags.

struct ObjectNode {
    std::string id;
    PropertyBag bag;
};

struct ObjectArc {
    std::string id;
    std::string src, dst;  // node ids; loops and parallel arcs are fine
    PropertyBag bag;
};

/// One requirement ⟨name, predicate⟩: some property with this name must
/// satisfy the predicate.
struct PropertyConstraint {
    std::string name;
    PredicateExpr predicate;
};

struct ClassNode {
    std::string id;
    std::vector<PropertyConstraint> constraints;
};

struct ClassArc {
    std::string id;
    std::string src, dst;  // class ids
    std::vector<PropertyConstraint> constraints;
};

inline bool operator==(const ObjectNode& a, const ObjectNode& b) {
    return a.id == b.id && a.bag == b.bag;
}
inline bool operator==(const ObjectArc& a, const ObjectArc& b) {
    return a.id == b.id && a.src == b.src && a.dst == b.dst && a.bag == b.bag;
}
inline bool operator==(const PropertyConstraint& a, const PropertyConstraint& b) {
    return a.name == b.name && a.predicate == b.predicate;
}
inline bool operator==(const ClassNode& a, const ClassNode& b) {
    return a.id == b.id && a.constraints == b.constraints;
}
inline bool operator==(const ClassArc& a, const ClassArc& b) {
    return a.id == b.id && a.src == b.src && a.dst == b.dst && a.constraints == b.constraints;
}

enum class BuildErrorKind {
    DanglingEndpoint,      // arc endpoint names no node/class
    DuplicateId,           // two nodes (or two arcs) share an id
    ReservedPropertyName,  // src/dst used as a property or constraint name
    InvalidIdentifier,     // id or property name is not an identifier
    InternalPredicate,     // instanceof is internal and cannot be a constraint
};

struct BuildIssue {
    BuildErrorKind kind;
    std::string entity;  // id of the offending entity
    std::string message;
};

struct UnknownIdError : std::invalid_argument {
    explicit UnknownIdError(const std::string& id)
        : std::invalid_argument("unknown id '" + id + "'") {}
};

/// Immutable, canonically ordered object-based graph. Construct through
/// build_object_graph.
class ObjectGraph {
public:
    const std::vector<ObjectNode>& nodes() const { return nodes_; }
    const std::vector<ObjectArc>& arcs() const { return arcs_; }

    const ObjectNode* find_node(std::string_view id) const {
        for (const auto& n : nodes_)
            if (n.id == id) return &n;
        return nullptr;
    }

    const ObjectArc* find_arc(std::string_view id) const {
        for (const auto& a : arcs_)
            if (a.id == id) return &a;
        return nullptr;
    }

    friend struct ObjectGraphBuilder;

private:
    std::vector<ObjectNode> nodes_;  // sorted by id
    std::vector<ObjectArc> arcs_;    // sorted by id
};

/// Immutable, canonically ordered class-based graph (schema). Construct
/// through build_class_graph.
class ClassGraph {
public:
    const std::vector<ClassNode>& classes() const { return classes_; }
    const std::vector<ClassArc>& arcs() const { return arcs_; }

    const ClassNode* find_class(std::string_view id) const {
        for (const auto& c : classes_)
            if (c.id == id) return &c;
        return nullptr;
    }

    const ClassArc* find_arc(std::string_view id) const {
        for (const auto& a : arcs_)
            if (a.id == id) return &a;
        return nullptr;
    }

    friend struct ClassGraphBuilder;

private:
    std::vector<ClassNode> classes_;  // sorted by id
    std::vector<ClassArc> arcs_;      // sorted by id
};

inline bool operator==(const ObjectGraph& a, const ObjectGraph& b) {
    return a.nodes() == b.nodes() && a.arcs() == b.arcs();
}
inline bool operator==(const ClassGraph& a, const ClassGraph& b) {
    return a.classes() == b.classes() && a.arcs() == b.arcs();
}

template <typename G>
struct BuildResult {
    std::optional<G> graph;
    std::vector<BuildIssue> issues;

    explicit operator bool() const { return graph.has_value(); }
};

namespace detail {

inline void check_bag(const PropertyBag& bag, const std::string& entity,
                      std::vector<BuildIssue>& issues) {
    for (const Property& p : bag.properties()) {
        if (is_reserved_name(p.name))
            issues.push_back({BuildErrorKind::ReservedPropertyName, entity,
                              "property '" + p.name + "' of '" + entity +
                                  "' uses a name reserved for arc endpoints"});
        else if (!is_identifier(p.name))
            issues.push_back({BuildErrorKind::InvalidIdentifier, entity,
                              "property name '" + p.name + "' of '" + entity +
                                  "' is not an identifier"});
        if (p.value.kind() == Value::Kind::Obj) check_bag(p.value.as_obj(), entity, issues);
    }
}

inline bool contains_instance_of_ref(const PredicateExpr& p) {
    if (p.kind == PredicateExpr::Kind::InstanceOfRef) return true;
    return std::any_of(p.children.begin(), p.children.end(), contains_instance_of_ref);
}

inline void check_constraints(const std::vector<PropertyConstraint>& cs, const std::string& entity,
                              std::vector<BuildIssue>& issues) {
    for (const PropertyConstraint& c : cs) {
        if (is_reserved_name(c.name))
            issues.push_back({BuildErrorKind::ReservedPropertyName, entity,
                              "constraint '" + c.name + "' of '" + entity +
                                  "' uses a name reserved for arc endpoints"});
        else if (!is_identifier(c.name))
            issues.push_back({BuildErrorKind::InvalidIdentifier, entity,
                              "constraint name '" + c.name + "' of '" + entity +
                                  "' is not an identifier"});
        if (contains_instance_of_ref(c.predicate))
            issues.push_back({BuildErrorKind::InternalPredicate, entity,
                              "constraint '" + c.name + "' of '" + entity +
                                  "' uses the internal instanceof predicate"});
    }
}

inline void check_id(const std::string& id, const char* what, std::vector<BuildIssue>& issues) {
    if (!is_identifier(id))
        issues.push_back({BuildErrorKind::InvalidIdentifier, id,
                          std::string(what) + " id '" + id + "' is not an identifier"});
}

template <typename E>
void check_unique_ids(const std::vector<E>& entities, const char* what,
                      std::vector<BuildIssue>& issues) {
    std::vector<std::string_view> ids;
    ids.reserve(entities.size());
    for (const E& e : entities) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i)
        if (ids[i] == ids[i - 1] && (i == 1 || ids[i] != ids[i - 2]))
            issues.push_back({BuildErrorKind::DuplicateId, std::string(ids[i]),
                              std::string(what) + " id '" + std::string(ids[i]) +
                                  "' is used more than once"});
}

inline void canonicalize(std::vector<PropertyConstraint>& cs) {
    std::sort(cs.begin(), cs.end(), [](const PropertyConstraint& a, const PropertyConstraint& b) {
        if (a.name != b.name) return a.name < b.name;
        return pretty_print(a.predicate) < pretty_print(b.predicate);
    });
    cs.erase(std::unique(cs.begin(), cs.end(),
                         [](const PropertyConstraint& a, const PropertyConstraint& b) {
                             return a == b;
                         }),
             cs.end());
}

}  // namespace detail

struct ObjectGraphBuilder {
    static BuildResult<ObjectGraph> build(std::vector<ObjectNode> nodes,
                                          std::vector<ObjectArc> arcs) {
        BuildResult<ObjectGraph> result;
        auto& issues = result.issues;
        for (const auto& n : nodes) {
            detail::check_id(n.id, "node", issues);
            detail::check_bag(n.bag, n.id, issues);
        }
        detail::check_unique_ids(nodes, "node", issues);
        for (const auto& a : arcs) {
            detail::check_id(a.id, "arc", issues);
            detail::check_bag(a.bag, a.id, issues);
            for (const std::string* end : {&a.src, &a.dst}) {
                if (end == &a.dst && a.dst == a.src) continue;  // loop arc: report once
                if (std::none_of(nodes.begin(), nodes.end(),
                                 [&](const ObjectNode& n) { return n.id == *end; }))
                    issues.push_back({BuildErrorKind::DanglingEndpoint, a.id,
                                      "arc '" + a.id + "' references missing node '" + *end +
                                          "'"});
            }
        }
        detail::check_unique_ids(arcs, "arc", issues);
        if (!issues.empty()) return result;
        std::sort(nodes.begin(), nodes.end(),
                  [](const ObjectNode& a, const ObjectNode& b) { return a.id < b.id; });
        std::sort(arcs.begin(), arcs.end(),
                  [](const ObjectArc& a, const ObjectArc& b) { return a.id < b.id; });
        ObjectGraph g;
        g.nodes_ = std::move(nodes);
        g.arcs_ = std::move(arcs);
        result.graph = std::move(g);
        return result;
    }
};

struct ClassGraphBuilder {
    static BuildResult<ClassGraph> build(std::vector<ClassNode> classes,
                                         std::vector<ClassArc> arcs) {
        BuildResult<ClassGraph> result;
        auto& issues = result.issues;
        for (auto& c : classes) {
            detail::check_id(c.id, "class", issues);
            detail::check_constraints(c.constraints, c.id, issues);
        }
        detail::check_unique_ids(classes, "class", issues);
        for (auto& a : arcs) {
            detail::check_id(a.id, "arc", issues);
            detail::check_constraints(a.constraints, a.id, issues);
            for (const std::string* end : {&a.src, &a.dst}) {
                if (end == &a.dst && a.dst == a.src) continue;  // loop arc: report once
                if (std::none_of(classes.begin(), classes.end(),
                                 [&](const ClassNode& c) { return c.id == *end; }))
                    issues.push_back({BuildErrorKind::DanglingEndpoint, a.id,
                                      "arc '" + a.id + "' references missing class '" + *end +
                                          "'"});
            }
        }
        detail::check_unique_ids(arcs, "arc", issues);
        if (!issues.empty()) return result;
        for (auto& c : classes) detail::canonicalize(c.constraints);
        for (auto& a : arcs) detail::canonicalize(a.constraints);
        std::sort(classes.begin(), classes.end(),
                  [](const ClassNode& a, const ClassNode& b) { return a.id < b.id; });
        std::sort(arcs.begin(), arcs.end(),
                  [](const ClassArc& a, const ClassArc& b) { return a.id < b.id; });
        ClassGraph g;
        g.classes_ = std::move(classes);
        g.arcs_ = std::move(arcs);
        result.graph = std::move(g);
        return result;
    }
};

inline BuildResult<ObjectGraph> build_object_graph(std::vector<ObjectNode> nodes,
                                                   std::vector<ObjectArc> arcs) {
    return ObjectGraphBuilder::build(std::move(nodes), std::move(arcs));
}

inline BuildResult<ClassGraph> build_class_graph(std::vector<ClassNode> classes,
                                                 std::vector<ClassArc> arcs) {
    return ClassGraphBuilder::build(std::move(classes), std::move(arcs));
}

/// Arcs leaving `node_id`, in id order; loops count. Throws UnknownIdError
/// for an id that names no node.
inline std::vector<const ObjectArc*> arcs_from(const ObjectGraph& g, std::string_view node_id) {
    if (!g.find_node(node_id)) throw UnknownIdError(std::string(node_id));
    std::vector<const ObjectArc*> out;
    for (const ObjectArc& a : g.arcs())
        if (a.src == node_id) out.push_back(&a);
    return out;
}

/// Arcs entering `node_id`, in id order; loops count.
inline std::vector<const ObjectArc*> arcs_to(const ObjectGraph& g, std::string_view node_id) {
    if (!g.find_node(node_id)) throw UnknownIdError(std::string(node_id));
    std::vector<const ObjectArc*> out;
    for (const ObjectArc& a : g.arcs())
        if (a.dst == node_id) out.push_back(&a);
    return out;
}

inline std::vector<const ClassArc*> arcs_from(const ClassGraph& s, std::string_view class_id) {
    if (!s.find_class(class_id)) throw UnknownIdError(std::string(class_id));
    std::vector<const ClassArc*> out;
    for (const ClassArc& a : s.arcs())
        if (a.src == class_id) out.push_back(&a);
    return out;
}

inline std::vector<const ClassArc*> arcs_to(const ClassGraph& s, std::string_view class_id) {
    if (!s.find_class(class_id)) throw UnknownIdError(std::string(class_id));
    std::vector<const ClassArc*> out;
    for (const ClassArc& a : s.arcs())
        if (a.dst == class_id) out.push_back(&a);
    return out;
}

}  // namespace graphcomply
