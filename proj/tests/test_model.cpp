#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "graphcomply/model.hpp"

using namespace graphcomply;

namespace {

ObjectGraph tiny_graph() {
    auto r = build_object_graph(
        {{"b", PropertyBag({{"p", Value(Integer(1))}})}, {"a", PropertyBag()}},
        {{"e2", "b", "a", PropertyBag()},
         {"e1", "a", "b", PropertyBag({{"q", Value("x")}})},
         {"loop", "a", "a", PropertyBag()}});
    REQUIRE(r);
    return *r.graph;
}

bool has_issue(const std::vector<BuildIssue>& issues, BuildErrorKind kind,
               const std::string& entity) {
    return std::any_of(issues.begin(), issues.end(), [&](const BuildIssue& i) {
        return i.kind == kind && i.entity == entity;
    });
}

}  // namespace

TEST_CASE("builders sort entities by id") {
    ObjectGraph g = tiny_graph();
    REQUIRE(g.nodes().size() == 2);
    CHECK(g.nodes()[0].id == "a");
    CHECK(g.nodes()[1].id == "b");
    REQUIRE(g.arcs().size() == 3);
    CHECK(g.arcs()[0].id == "e1");
    CHECK(g.arcs()[1].id == "e2");
    CHECK(g.arcs()[2].id == "loop");
}

TEST_CASE("lookups") {
    ObjectGraph g = tiny_graph();
    REQUIRE(g.find_node("a") != nullptr);
    CHECK(g.find_node("a")->id == "a");
    CHECK(g.find_node("zz") == nullptr);
    REQUIRE(g.find_arc("e2") != nullptr);
    CHECK(g.find_arc("e2")->src == "b");
    CHECK(g.find_arc("nope") == nullptr);
}

TEST_CASE("arcs_from and arcs_to respect loops and id order") {
    ObjectGraph g = tiny_graph();
    auto from_a = arcs_from(g, "a");
    REQUIRE(from_a.size() == 2);
    CHECK(from_a[0]->id == "e1");
    CHECK(from_a[1]->id == "loop");
    auto to_a = arcs_to(g, "a");
    REQUIRE(to_a.size() == 2);
    CHECK(to_a[0]->id == "e2");
    CHECK(to_a[1]->id == "loop");
    CHECK(arcs_from(g, "b").size() == 1);
    CHECK_THROWS_AS(arcs_from(g, "ghost"), UnknownIdError);
    CHECK_THROWS_AS(arcs_to(g, "ghost"), UnknownIdError);
}

TEST_CASE("parallel arcs are allowed") {
    auto r = build_object_graph({{"a", PropertyBag()}, {"b", PropertyBag()}},
                                {{"e1", "a", "b", PropertyBag()},
                                 {"e2", "a", "b", PropertyBag()}});
    REQUIRE(r);
    CHECK(arcs_from(*r.graph, "a").size() == 2);
}

TEST_CASE("duplicate ids are rejected, one report per id") {
    auto r = build_object_graph({{"a", PropertyBag()}, {"a", PropertyBag()},
                                 {"a", PropertyBag()}, {"b", PropertyBag()}},
                                {});
    REQUIRE_FALSE(r);
    CHECK(r.issues.size() == 1);
    CHECK(has_issue(r.issues, BuildErrorKind::DuplicateId, "a"));
}

TEST_CASE("dangling endpoints are rejected") {
    auto r = build_object_graph({{"a", PropertyBag()}},
                                {{"e", "a", "ghost", PropertyBag()}});
    REQUIRE_FALSE(r);
    CHECK(has_issue(r.issues, BuildErrorKind::DanglingEndpoint, "e"));
    CHECK(r.issues[0].message.find("ghost") != std::string::npos);
}

TEST_CASE("a dangling loop arc reports once") {
    auto r = build_object_graph({}, {{"e", "ghost", "ghost", PropertyBag()}});
    REQUIRE_FALSE(r);
    CHECK(r.issues.size() == 1);
}

TEST_CASE("reserved property names are rejected, including nested ones") {
    auto r = build_object_graph({{"a", PropertyBag({{"src", Value(Integer(1))}})}}, {});
    REQUIRE_FALSE(r);
    CHECK(has_issue(r.issues, BuildErrorKind::ReservedPropertyName, "a"));

    PropertyBag nested({{"ok", Value(PropertyBag({{"dst", Value(true)}}))}});
    auto r2 = build_object_graph({{"a", nested}}, {});
    REQUIRE_FALSE(r2);
    CHECK(has_issue(r2.issues, BuildErrorKind::ReservedPropertyName, "a"));
}

TEST_CASE("invalid identifiers are rejected") {
    auto r = build_object_graph({{"not ok", PropertyBag()}}, {});
    REQUIRE_FALSE(r);
    CHECK(has_issue(r.issues, BuildErrorKind::InvalidIdentifier, "not ok"));

    auto r2 = build_object_graph({{"a", PropertyBag({{"9lives", Value(true)}})}}, {});
    REQUIRE_FALSE(r2);
    CHECK(has_issue(r2.issues, BuildErrorKind::InvalidIdentifier, "a"));
}

TEST_CASE("schemas reject the internal endpoint predicate in user constraints") {
    auto r = build_class_graph({{"C", {{"p", pred::instance_of_ref("C")}}}}, {});
    REQUIRE_FALSE(r);
    CHECK(has_issue(r.issues, BuildErrorKind::InternalPredicate, "C"));

    auto nested = pred::and_({pred::exists(), pred::instance_of_ref("C")});
    auto r2 = build_class_graph({{"C", {}}}, {{"e", "C", "C", {{"p", nested}}}});
    REQUIRE_FALSE(r2);
    CHECK(has_issue(r2.issues, BuildErrorKind::InternalPredicate, "e"));
}

TEST_CASE("class constraints canonicalize: sorted by name then text, deduplicated") {
    auto r = build_class_graph(
        {{"C",
          {{"q", pred::exists()},
           {"p", pred::exists()},
           {"p", pred::eq(Value("x"))},
           {"p", pred::exists()}}}},
        {});
    REQUIRE(r);
    const auto& cs = r.graph->classes()[0].constraints;
    REQUIRE(cs.size() == 3);
    CHECK(cs[0].name == "p");
    CHECK(pretty_print(cs[0].predicate) == "= \"x\"");  // '=' sorts before 'exists'
    CHECK(cs[1].name == "p");
    CHECK(pretty_print(cs[1].predicate) == "exists");
    CHECK(cs[2].name == "q");
}

TEST_CASE("class arcs may form loops and parallels") {
    auto r = build_class_graph({{"A", {}}, {"B", {}}},
                               {{"l", "A", "A", {}},
                                {"e1", "A", "B", {}},
                                {"e2", "A", "B", {}}});
    REQUIRE(r);
    CHECK(r.graph->arcs().size() == 3);
    CHECK(arcs_from(*r.graph, "A").size() == 3);
    CHECK(arcs_to(*r.graph, "A").size() == 1);
}

TEST_CASE("class graph dangling endpoints") {
    auto r = build_class_graph({{"A", {}}}, {{"e", "A", "Z", {}}});
    REQUIRE_FALSE(r);
    CHECK(has_issue(r.issues, BuildErrorKind::DanglingEndpoint, "e"));
}

TEST_CASE("graph equality is structural") {
    ObjectGraph g1 = tiny_graph();
    ObjectGraph g2 = tiny_graph();
    CHECK(g1 == g2);
    auto r = build_object_graph({{"a", PropertyBag()}, {"b", PropertyBag()}}, {});
    CHECK_FALSE(g1 == *r.graph);
}

TEST_CASE("rebuilding from a graph's own parts is the identity") {
    ObjectGraph g = tiny_graph();
    auto r = build_object_graph(g.nodes(), g.arcs());
    REQUIRE(r);
    CHECK(*r.graph == g);
}

TEST_CASE("several issues accumulate in one pass") {
    auto r = build_object_graph(
        {{"a", PropertyBag({{"src", Value(Integer(1))}})}, {"a", PropertyBag()}},
        {{"e", "a", "ghost", PropertyBag()}});
    REQUIRE_FALSE(r);
    CHECK(r.issues.size() == 3);
}
