#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "graphcomply/model.hpp"
#include "graphcomply/predicate.hpp"

// Programmatic copies of the Shakespeare fixtures. The .og/.cg files under
// fixtures/ hold the same graphs in text form; tests cross-check the two.

namespace testsupport {

using namespace graphcomply;

inline std::string fixture_path(const char* name) {
    return std::string(GRAPHCOMPLY_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline PropertyBag bag(std::vector<Property> ps) { return PropertyBag(std::move(ps)); }

/// Star-crossed lovers, a kinsman, and four ways to die.
inline ObjectGraph fig1() {
    auto b = build_object_graph(
        {
            {"Romeo", bag({{"name", Value("Romeo")},
                           {"house", Value("Montague")},
                           {"sex", Value("male")}})},
            {"Tybalt", bag({{"name", Value("Tybalt")},
                            {"house", Value("Capulet")},
                            {"sex", Value("male")}})},
            {"Juliet", bag({{"name", Value("Juliet")},
                            {"house", Value("Capulet")},
                            {"sex", Value("female")},
                            {"age", Value::integer(13)}})},
        },
        {
            {"hasKilled", "Romeo", "Tybalt",
             bag({{"duel", Value("refused")}, {"killing", Value("sword")}})},
            {"cousin", "Tybalt", "Juliet", bag({{"sibling", Value("cousin")}})},
            {"feelingsRJ", "Romeo", "Juliet", bag({{"feels", Value("Love")}})},
            {"feelingsJR", "Juliet", "Romeo", bag({})},
            {"commitSuicide", "Romeo", "Romeo", bag({{"killing", Value("poison")}})},
            {"commitSuicideToo", "Juliet", "Juliet", bag({{"killing", Value("dagger")}})},
        });
    return *b.graph;
}

inline ClassGraph fig2() {
    auto eq = [](const char* s) { return pred::eq(Value(s)); };
    auto b = build_class_graph(
        {
            {"MrMontague", {{"house", eq("Montague")}, {"sex", eq("male")}}},
            {"Capulet", {{"house", eq("Capulet")}}},
            {"MissCapulet", {{"house", eq("Capulet")}, {"sex", eq("female")}}},
        },
        {
            {"hasKilled", "MrMontague", "Capulet", {{"killing", pred::exists()}}},
            {"cousin", "Capulet", "MissCapulet", {{"sibling", eq("cousin")}}},
            {"feelingsMM", "MrMontague", "MissCapulet", {{"feels", eq("Love")}}},
            {"feelingsMC", "MissCapulet", "MrMontague", {}},
            {"commitSuicide", "MrMontague", "MrMontague", {{"killing", pred::exists()}}},
        });
    return *b.graph;
}

inline ObjectGraph fig3() {
    auto b = build_object_graph(
        {
            {"Romeo", bag({{"name", Value("Romeo")},
                           {"house", Value("Montague")},
                           {"sex", Value("male")}})},
            {"Mercutio", bag({{"name", Value("Mercutio")},
                              {"house", Value("Verona")},
                              {"sex", Value("male")}})},
            {"Juliet", bag({{"name", Value("Juliet")},
                            {"house", Value("Capulet")},
                            {"sex", Value("female")},
                            {"age", Value::integer(13)}})},
        },
        {
            {"friend", "Romeo", "Mercutio", bag({{"friend", Value("xxx")}})},
            {"feelingsRJ", "Romeo", "Juliet", bag({{"feels", Value("Love")}})},
            {"feelingsJR", "Juliet", "Romeo", bag({})},
            {"commitSuicide", "Romeo", "Romeo", bag({{"killing", Value("poison")}})},
            {"commitSuicideToo", "Juliet", "Juliet", bag({{"killing", Value("dagger")}})},
        });
    return *b.graph;
}

inline ClassGraph fig4() {
    auto eq = [](const char* s) { return pred::eq(Value(s)); };
    auto b = build_class_graph(
        {
            {"MrMontague", {{"house", eq("Montague")}, {"sex", eq("male")}}},
            {"MissCapulet", {{"house", eq("Capulet")}, {"sex", eq("female")}}},
        },
        {
            {"feelingsMM", "MrMontague", "MissCapulet", {{"feels", eq("Love")}}},
            {"feelingsMC", "MissCapulet", "MrMontague", {}},
            {"commitSuicide", "MrMontague", "MrMontague", {{"killing", pred::exists()}}},
        });
    return *b.graph;
}

}  // namespace testsupport
