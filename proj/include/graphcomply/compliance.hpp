#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphcomply/membership.hpp"
#include "graphcomply/model.hpp"

namespace graphcomply {

enum class ComplianceMode { Partial, Normal, Full };
enum class ComplianceOutcome { Compliant, NotCompliant, Undecided };

inline std::string_view to_string(ComplianceMode m) {
    switch (m) {
        case ComplianceMode::Partial: return "partial";
        case ComplianceMode::Normal: return "normal";
        case ComplianceMode::Full: return "full";
    }
    return "normal";
}

inline std::optional<ComplianceMode> parse_mode(std::string_view text) {
    if (text == "partial") return ComplianceMode::Partial;
    if (text == "normal") return ComplianceMode::Normal;
    if (text == "full") return ComplianceMode::Full;
    return std::nullopt;
}

/// One entry of a compliance relation: this node complies with this class.
struct CandidatePair {
    std::string node;
    std::string klass;
};

inline bool operator==(const CandidatePair& a, const CandidatePair& b) {
    return a.node == b.node && a.klass == b.klass;
}
inline bool operator!=(const CandidatePair& a, const CandidatePair& b) { return !(a == b); }
inline bool operator<(const CandidatePair& a, const CandidatePair& b) {
    if (a.node != b.node) return a.node < b.node;
    return a.klass < b.klass;
}

/// Why two assignments cannot coexist: the class arc demands a full-member
/// arc from the source pair's node to the destination pair's node and the
/// graph has none. A self-conflict has src_pair == dst_pair.
struct Conflict {
    std::string class_arc;
    CandidatePair src_pair;
    CandidatePair dst_pair;
    std::string reason = "no full-member arc";
};

inline bool operator==(const Conflict& a, const Conflict& b) {
    return a.class_arc == b.class_arc && a.src_pair == b.src_pair && a.dst_pair == b.dst_pair &&
           a.reason == b.reason;
}
inline bool operator<(const Conflict& a, const Conflict& b) {
    if (a.class_arc != b.class_arc) return a.class_arc < b.class_arc;
    if (!(a.src_pair == b.src_pair)) return a.src_pair < b.src_pair;
    return a.dst_pair < b.dst_pair;
}

struct VerifyResult {
    bool ok = false;
    std::vector<CandidatePair> non_members;      // pairs whose node is not a relational member
    std::vector<Conflict> conflicts;             // missing full-member arcs between related pairs
    std::vector<std::string> uncovered_classes;  // Normal/Full: classes no pair maps to
    std::vector<std::string> uncovered_nodes;    // Full: nodes no pair maps from
};

struct ComplianceReport {
    ComplianceMode mode = ComplianceMode::Normal;
    ComplianceOutcome outcome = ComplianceOutcome::NotCompliant;
    std::vector<CandidatePair> witness;          // sorted by (node, class)
    std::vector<std::string> covered_classes;    // classes the witness maps onto
    std::vector<std::string> uncovered_classes;
    std::vector<std::string> uncovered_nodes;
    std::vector<Conflict> conflicts;             // explanations when not compliant
    // Partial mode only: the raw definition is satisfied vacuously by the
    // empty relation, which the verdict above deliberately does not count.
    bool degenerate_empty_partial = false;
    std::uint64_t expansions = 0;                // search effort spent

    bool compliant() const { return outcome == ComplianceOutcome::Compliant; }
};

/// Thrown by oracle_compliance when the candidate set is too large to
/// enumerate exhaustively.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("candidate set too large for exhaustive enumeration") {}
};

inline constexpr std::uint64_t default_search_budget = 10'000'000;

/// All pairs (node, class) where the node is a relational member of the
/// class; any compliance relation is a subset of these. Sorted.
inline std::vector<CandidatePair> candidates(const ObjectGraph& g, const ClassGraph& s) {
    EvalContext ctx = make_context(g, s);
    std::vector<CandidatePair> out;
    for (const ObjectNode& n : g.nodes())
        for (const ClassNode& c : s.classes())
            if (node_relational_member(n, c, g, s, ctx)) out.push_back({n.id, c.id});
    return out;
}

/// Checks a relation against the definition, directly: every pair must be a
/// relational membership, every class arc must be realized by a full-member
/// arc between every related pair of endpoints (self-pairs included), and the
/// mode's coverage duties must hold. The empty relation passes Partial; the
/// verdict layer above treats that case separately.
inline VerifyResult verify_relation(std::vector<CandidatePair> relation, const ObjectGraph& g,
                                    const ClassGraph& s, ComplianceMode mode) {
    std::sort(relation.begin(), relation.end());
    relation.erase(std::unique(relation.begin(), relation.end()), relation.end());
    EvalContext ctx = make_context(g, s);
    VerifyResult r;
    for (const CandidatePair& p : relation) {
        const ObjectNode* n = g.find_node(p.node);
        const ClassNode* c = s.find_class(p.klass);
        if (!n || !c || !node_relational_member(*n, *c, g, s, ctx)) r.non_members.push_back(p);
    }
    for (const ClassArc& ca : s.arcs()) {
        for (const CandidatePair& p : relation) {
            if (p.klass != ca.src) continue;
            for (const CandidatePair& q : relation) {
                if (q.klass != ca.dst) continue;
                const bool realized =
                    std::any_of(g.arcs().begin(), g.arcs().end(), [&](const ObjectArc& a) {
                        return a.src == p.node && a.dst == q.node &&
                               arc_full_member(a, ca, g, s, ctx);
                    });
                if (!realized) r.conflicts.push_back({ca.id, p, q});
            }
        }
    }
    if (mode != ComplianceMode::Partial) {
        for (const ClassNode& c : s.classes())
            if (std::none_of(relation.begin(), relation.end(),
                             [&](const CandidatePair& p) { return p.klass == c.id; }))
                r.uncovered_classes.push_back(c.id);
    }
    if (mode == ComplianceMode::Full) {
        for (const ObjectNode& n : g.nodes())
            if (std::none_of(relation.begin(), relation.end(),
                             [&](const CandidatePair& p) { return p.node == n.id; }))
                r.uncovered_nodes.push_back(n.id);
    }
    r.ok = r.non_members.empty() && r.conflicts.empty() && r.uncovered_classes.empty() &&
           r.uncovered_nodes.empty();
    return r;
}

namespace detail {

// The search works on candidate indices. Eq. 5 decomposes exactly into
// self-conflicts (a loop class arc with no full-member loop arc kills the
// candidate outright) and a symmetric binary conflict relation between the
// survivors; nothing about validity depends on more than two pairs at once.
struct SearchSpace {
    std::vector<CandidatePair> cands;          // survivors, sorted by (node, class)
    std::vector<std::vector<bool>> conflict;   // symmetric, indexed by cands
    std::vector<std::size_t> class_of;         // index into s.classes()
    std::vector<std::size_t> node_of;          // index into g.nodes()
    std::size_t num_classes = 0;
    std::size_t num_nodes = 0;
    std::vector<Conflict> self_conflicts;      // why candidates were dropped
    std::vector<Conflict> binary_conflicts;    // all pairwise conflicts among survivors
};

inline SearchSpace build_search_space(const ObjectGraph& g, const ClassGraph& s) {
    EvalContext ctx = make_context(g, s);
    SearchSpace sp;
    sp.num_classes = s.classes().size();
    sp.num_nodes = g.nodes().size();

    std::vector<std::set<std::pair<std::string_view, std::string_view>>> full_pairs;
    full_pairs.reserve(s.arcs().size());
    for (const ClassArc& ca : s.arcs()) {
        std::set<std::pair<std::string_view, std::string_view>> pairs;
        for (const ObjectArc& a : g.arcs())
            if (arc_full_member(a, ca, g, s, ctx)) pairs.insert({a.src, a.dst});
        full_pairs.push_back(std::move(pairs));
    }
    auto realized = [&](std::size_t cai, std::string_view from, std::string_view to) {
        return full_pairs[cai].count({from, to}) != 0;
    };

    for (CandidatePair& p : candidates(g, s)) {
        bool dropped = false;
        for (std::size_t cai = 0; cai < s.arcs().size(); ++cai) {
            const ClassArc& ca = s.arcs()[cai];
            if (ca.src == p.klass && ca.dst == p.klass && !realized(cai, p.node, p.node)) {
                sp.self_conflicts.push_back({ca.id, p, p});
                dropped = true;
            }
        }
        if (!dropped) sp.cands.push_back(std::move(p));
    }

    auto index_of = [](const auto& entities, const std::string& id) {
        std::size_t i = 0;
        while (entities[i].id != id) ++i;
        return i;
    };
    for (const CandidatePair& p : sp.cands) {
        sp.class_of.push_back(index_of(s.classes(), p.klass));
        sp.node_of.push_back(index_of(g.nodes(), p.node));
    }

    const std::size_t k = sp.cands.size();
    sp.conflict.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            bool conf = false;
            for (std::size_t cai = 0; cai < s.arcs().size(); ++cai) {
                const ClassArc& ca = s.arcs()[cai];
                if (sp.cands[i].klass == ca.src && sp.cands[j].klass == ca.dst &&
                    !realized(cai, sp.cands[i].node, sp.cands[j].node)) {
                    sp.binary_conflicts.push_back({ca.id, sp.cands[i], sp.cands[j]});
                    conf = true;
                }
                if (sp.cands[j].klass == ca.src && sp.cands[i].klass == ca.dst &&
                    !realized(cai, sp.cands[j].node, sp.cands[i].node)) {
                    sp.binary_conflicts.push_back({ca.id, sp.cands[j], sp.cands[i]});
                    conf = true;
                }
            }
            sp.conflict[i][j] = sp.conflict[j][i] = conf;
        }
    }
    std::sort(sp.self_conflicts.begin(), sp.self_conflicts.end());
    std::sort(sp.binary_conflicts.begin(), sp.binary_conflicts.end());
    return sp;
}

struct BudgetExhausted {};

// Backtracking over candidate indices. Phase-one searches decide existence
// or maximize coverage with a fail-first target order; phase two re-derives
// the canonical witness by enumerating index combinations in increasing
// order, whose first hit is the lexicographically least sorted pair list.
// Every candidate trial costs one expansion against the budget.
class Search {
public:
    Search(const SearchSpace& sp, std::uint64_t budget) : sp_(sp), budget_(budget) {
        by_class_.assign(sp.num_classes, {});
        by_node_.assign(sp.num_nodes, {});
        last_of_class_.assign(sp.num_classes, -1);
        last_of_node_.assign(sp.num_nodes, -1);
        for (std::size_t i = 0; i < sp.cands.size(); ++i) {
            by_class_[sp.class_of[i]].push_back(i);
            by_node_[sp.node_of[i]].push_back(i);
            last_of_class_[sp.class_of[i]] = static_cast<std::ptrdiff_t>(i);
            last_of_node_[sp.node_of[i]] = static_cast<std::ptrdiff_t>(i);
        }
    }

    std::uint64_t used() const { return used_; }

    bool class_has_candidates(std::size_t ci) const { return !by_class_[ci].empty(); }
    bool node_has_candidates(std::size_t ni) const { return !by_node_[ni].empty(); }

    /// Does any selection cover every class? (Eq. 6 feasibility.)
    bool can_cover_all_classes() {
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (by_class_[ci].empty()) return false;
        std::vector<std::size_t> chosen;
        std::vector<char> covered(sp_.num_classes, 0);
        return cover_classes_dfs(chosen, covered, 0);
    }

    /// Largest number of classes coverable simultaneously.
    std::size_t max_class_coverage() {
        std::vector<std::size_t> order;
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (!by_class_[ci].empty()) order.push_back(ci);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (by_class_[a].size() != by_class_[b].size())
                return by_class_[a].size() < by_class_[b].size();
            return a < b;
        });
        std::size_t best = 0;
        std::vector<std::size_t> chosen;
        max_cover_dfs(order, 0, chosen, 0, best);
        return best;
    }

    /// Does any selection cover every class and every node? (Full mode.)
    bool can_cover_all_targets() {
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (by_class_[ci].empty()) return false;
        for (std::size_t ni = 0; ni < sp_.num_nodes; ++ni)
            if (by_node_[ni].empty()) return false;
        std::vector<std::size_t> chosen;
        std::vector<char> ccov(sp_.num_classes, 0), ncov(sp_.num_nodes, 0);
        return cover_targets_dfs(chosen, ccov, 0, ncov, 0);
    }

    /// Selections of exactly `t` pairs covering `t` distinct classes, in
    /// increasing lexicographic order; stops after the first when asked.
    std::vector<std::vector<std::size_t>> class_covers(std::size_t t, bool first_only) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> chosen;
        std::vector<char> covered(sp_.num_classes, 0);
        class_covers_dfs(0, chosen, covered, 0, t, first_only, out);
        return out;
    }

    /// Selections of exactly `k` pairs covering all classes and all nodes,
    /// in increasing lexicographic order.
    std::vector<std::vector<std::size_t>> full_covers(std::size_t k, bool first_only) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> chosen;
        std::vector<char> ccov(sp_.num_classes, 0), ncov(sp_.num_nodes, 0);
        full_covers_dfs(0, chosen, ccov, 0, ncov, 0, k, first_only, out);
        return out;
    }

private:
    void tick() {
        if (++used_ > budget_) throw BudgetExhausted{};
    }

    bool compatible(std::size_t cand, const std::vector<std::size_t>& chosen) const {
        for (std::size_t c : chosen)
            if (sp_.conflict[cand][c]) return false;
        return true;
    }

    bool cover_classes_dfs(std::vector<std::size_t>& chosen, std::vector<char>& covered,
                           std::size_t num_covered) {
        if (num_covered == sp_.num_classes) return true;
        // Fail-first: branch on the uncovered class with the fewest options.
        std::size_t best_class = 0;
        std::vector<std::size_t> best_opts;
        bool have = false;
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci) {
            if (covered[ci]) continue;
            std::vector<std::size_t> opts;
            for (std::size_t cand : by_class_[ci])
                if (compatible(cand, chosen)) opts.push_back(cand);
            if (opts.empty()) return false;
            if (!have || opts.size() < best_opts.size()) {
                have = true;
                best_class = ci;
                best_opts = std::move(opts);
            }
        }
        for (std::size_t cand : best_opts) {
            tick();
            chosen.push_back(cand);
            covered[best_class] = 1;
            if (cover_classes_dfs(chosen, covered, num_covered + 1)) return true;
            covered[best_class] = 0;
            chosen.pop_back();
        }
        return false;
    }

    void max_cover_dfs(const std::vector<std::size_t>& order, std::size_t pos,
                       std::vector<std::size_t>& chosen, std::size_t covered, std::size_t& best) {
        if (covered + (order.size() - pos) <= best) return;  // bound
        if (pos == order.size()) {
            best = std::max(best, covered);
            return;
        }
        const std::size_t ci = order[pos];
        for (std::size_t cand : by_class_[ci]) {
            if (!compatible(cand, chosen)) continue;
            tick();
            chosen.push_back(cand);
            max_cover_dfs(order, pos + 1, chosen, covered + 1, best);
            chosen.pop_back();
            if (best == order.size()) return;  // cannot improve further
        }
        max_cover_dfs(order, pos + 1, chosen, covered, best);
    }

    bool cover_targets_dfs(std::vector<std::size_t>& chosen, std::vector<char>& ccov,
                           std::size_t cc, std::vector<char>& ncov, std::size_t nc) {
        if (cc == sp_.num_classes && nc == sp_.num_nodes) return true;
        // Most-constrained uncovered target, classes and nodes alike.
        std::vector<std::size_t> best_opts;
        bool have = false;
        auto consider = [&](const std::vector<std::size_t>& cands) {
            std::vector<std::size_t> opts;
            for (std::size_t cand : cands)
                if (compatible(cand, chosen)) opts.push_back(cand);
            if (!have || opts.size() < best_opts.size()) {
                have = true;
                best_opts = std::move(opts);
            }
        };
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (!ccov[ci]) consider(by_class_[ci]);
        for (std::size_t ni = 0; ni < sp_.num_nodes; ++ni)
            if (!ncov[ni]) consider(by_node_[ni]);
        if (best_opts.empty()) return false;
        for (std::size_t cand : best_opts) {
            tick();
            const std::size_t ci = sp_.class_of[cand], ni = sp_.node_of[cand];
            const char pc = ccov[ci], pn = ncov[ni];
            chosen.push_back(cand);
            ccov[ci] = 1;
            ncov[ni] = 1;
            if (cover_targets_dfs(chosen, ccov, cc + (pc ? 0 : 1), ncov, nc + (pn ? 0 : 1)))
                return true;
            ccov[ci] = pc;
            ncov[ni] = pn;
            chosen.pop_back();
        }
        return false;
    }

    bool class_covers_dfs(std::size_t start, std::vector<std::size_t>& chosen,
                          std::vector<char>& covered, std::size_t num_covered, std::size_t t,
                          bool first_only, std::vector<std::vector<std::size_t>>& out) {
        if (num_covered == t) {
            out.push_back(chosen);
            return first_only;
        }
        std::size_t reachable = 0;
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (!covered[ci] && last_of_class_[ci] >= static_cast<std::ptrdiff_t>(start))
                ++reachable;
        if (num_covered + reachable < t) return false;
        for (std::size_t i = start; i < sp_.cands.size(); ++i) {
            const std::size_t ci = sp_.class_of[i];
            if (covered[ci]) continue;
            if (!compatible(i, chosen)) continue;
            tick();
            chosen.push_back(i);
            covered[ci] = 1;
            const bool stop =
                class_covers_dfs(i + 1, chosen, covered, num_covered + 1, t, first_only, out);
            covered[ci] = 0;
            chosen.pop_back();
            if (stop) return true;
        }
        return false;
    }

    bool full_covers_dfs(std::size_t start, std::vector<std::size_t>& chosen,
                         std::vector<char>& ccov, std::size_t cc, std::vector<char>& ncov,
                         std::size_t nc, std::size_t k, bool first_only,
                         std::vector<std::vector<std::size_t>>& out) {
        if (chosen.size() == k) {
            if (cc == sp_.num_classes && nc == sp_.num_nodes) {
                out.push_back(chosen);
                return first_only;
            }
            return false;
        }
        const std::size_t room = k - chosen.size();
        if (sp_.num_classes - cc > room || sp_.num_nodes - nc > room) return false;
        for (std::size_t ci = 0; ci < sp_.num_classes; ++ci)
            if (!ccov[ci] && last_of_class_[ci] < static_cast<std::ptrdiff_t>(start)) return false;
        for (std::size_t ni = 0; ni < sp_.num_nodes; ++ni)
            if (!ncov[ni] && last_of_node_[ni] < static_cast<std::ptrdiff_t>(start)) return false;
        for (std::size_t i = start; i < sp_.cands.size(); ++i) {
            const std::size_t ci = sp_.class_of[i], ni = sp_.node_of[i];
            // A pair adding no coverage would make the witness non-minimal.
            if (ccov[ci] && ncov[ni]) continue;
            if (!compatible(i, chosen)) continue;
            tick();
            const char pc = ccov[ci], pn = ncov[ni];
            chosen.push_back(i);
            ccov[ci] = 1;
            ncov[ni] = 1;
            const bool stop = full_covers_dfs(i + 1, chosen, ccov, cc + (pc ? 0 : 1), ncov,
                                              nc + (pn ? 0 : 1), k, first_only, out);
            ccov[ci] = pc;
            ncov[ni] = pn;
            chosen.pop_back();
            if (stop) return true;
        }
        return false;
    }

    const SearchSpace& sp_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
    std::vector<std::vector<std::size_t>> by_class_;
    std::vector<std::vector<std::size_t>> by_node_;
    std::vector<std::ptrdiff_t> last_of_class_;  // -1 when the class has no candidate
    std::vector<std::ptrdiff_t> last_of_node_;
};

inline std::vector<CandidatePair> pairs_of(const SearchSpace& sp,
                                           const std::vector<std::size_t>& indices) {
    std::vector<CandidatePair> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(sp.cands[i]);
    return out;
}

inline std::vector<std::string> classes_of(const std::vector<CandidatePair>& witness) {
    std::vector<std::string> out;
    for (const CandidatePair& p : witness) out.push_back(p.klass);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Searches for a witness relation of the given mode. The witness returned
/// on success is the lexicographically least among those of minimal
/// cardinality (for Partial: among those covering the most classes). When
/// the expansion budget runs out the outcome is Undecided, never a guess.
inline ComplianceReport find_compliance(const ObjectGraph& g, const ClassGraph& s,
                                        ComplianceMode mode,
                                        std::uint64_t budget = default_search_budget) {
    ComplianceReport rep;
    rep.mode = mode;
    const detail::SearchSpace sp = detail::build_search_space(g, s);
    detail::Search search(sp, budget);

    auto explain_failure = [&] {
        rep.outcome = ComplianceOutcome::NotCompliant;
        for (std::size_t ci = 0; ci < sp.num_classes; ++ci)
            if (!search.class_has_candidates(ci)) rep.uncovered_classes.push_back(s.classes()[ci].id);
        if (mode == ComplianceMode::Full)
            for (std::size_t ni = 0; ni < sp.num_nodes; ++ni)
                if (!search.node_has_candidates(ni)) rep.uncovered_nodes.push_back(g.nodes()[ni].id);
        rep.conflicts = sp.self_conflicts;
        rep.conflicts.insert(rep.conflicts.end(), sp.binary_conflicts.begin(),
                             sp.binary_conflicts.end());
        std::sort(rep.conflicts.begin(), rep.conflicts.end());
    };

    try {
        switch (mode) {
            case ComplianceMode::Normal: {
                if (search.can_cover_all_classes()) {
                    auto covers = search.class_covers(sp.num_classes, true);
                    if (covers.empty())
                        throw std::logic_error("internal error: cover search disagrees with itself");
                    rep.outcome = ComplianceOutcome::Compliant;
                    rep.witness = detail::pairs_of(sp, covers.front());
                    rep.covered_classes = detail::classes_of(rep.witness);
                } else {
                    explain_failure();
                }
                break;
            }
            case ComplianceMode::Full: {
                if (search.can_cover_all_targets()) {
                    const std::size_t lower = std::max(sp.num_classes, sp.num_nodes);
                    for (std::size_t k = lower; k <= sp.cands.size(); ++k) {
                        auto covers = search.full_covers(k, true);
                        if (!covers.empty()) {
                            rep.outcome = ComplianceOutcome::Compliant;
                            rep.witness = detail::pairs_of(sp, covers.front());
                            rep.covered_classes = detail::classes_of(rep.witness);
                            break;
                        }
                    }
                } else {
                    explain_failure();
                }
                break;
            }
            case ComplianceMode::Partial: {
                if (sp.num_classes == 0) {
                    // Nothing to cover: compliant via the empty relation.
                    rep.outcome = ComplianceOutcome::Compliant;
                    break;
                }
                const std::size_t best = search.max_class_coverage();
                if (best == 0) {
                    explain_failure();
                    rep.degenerate_empty_partial = true;
                    break;
                }
                auto covers = search.class_covers(best, true);
                if (covers.empty())
                    throw std::logic_error("internal error: cover search disagrees with itself");
                rep.outcome = ComplianceOutcome::Compliant;
                rep.witness = detail::pairs_of(sp, covers.front());
                rep.covered_classes = detail::classes_of(rep.witness);
                for (const ClassNode& c : s.classes())
                    if (std::find(rep.covered_classes.begin(), rep.covered_classes.end(), c.id) ==
                        rep.covered_classes.end())
                        rep.uncovered_classes.push_back(c.id);
                break;
            }
        }
    } catch (const detail::BudgetExhausted&) {
        ComplianceReport undecided;
        undecided.mode = mode;
        undecided.outcome = ComplianceOutcome::Undecided;
        undecided.expansions = budget;
        return undecided;
    }
    rep.expansions = search.used();
    if (rep.outcome == ComplianceOutcome::Compliant &&
        !verify_relation(rep.witness, g, s, mode).ok)
        throw std::logic_error("internal error: computed witness fails verification");
    return rep;
}

struct WitnessEnumeration {
    ComplianceOutcome outcome = ComplianceOutcome::NotCompliant;
    std::vector<std::vector<CandidatePair>> witnesses;  // lexicographic order
    std::uint64_t expansions = 0;
};

/// All minimal witnesses of the mode (all of minimal cardinality; for
/// Partial, all with maximal class coverage), in lexicographic order.
inline WitnessEnumeration find_all_witnesses(const ObjectGraph& g, const ClassGraph& s,
                                             ComplianceMode mode,
                                             std::uint64_t budget = default_search_budget) {
    WitnessEnumeration result;
    const detail::SearchSpace sp = detail::build_search_space(g, s);
    detail::Search search(sp, budget);
    try {
        switch (mode) {
            case ComplianceMode::Normal: {
                if (sp.num_classes == 0) {
                    result.outcome = ComplianceOutcome::Compliant;
                    result.witnesses.push_back({});
                    break;
                }
                if (!search.can_cover_all_classes()) break;
                result.outcome = ComplianceOutcome::Compliant;
                for (auto& cover : search.class_covers(sp.num_classes, false))
                    result.witnesses.push_back(detail::pairs_of(sp, cover));
                break;
            }
            case ComplianceMode::Full: {
                if (sp.num_classes == 0 && sp.num_nodes == 0) {
                    result.outcome = ComplianceOutcome::Compliant;
                    result.witnesses.push_back({});
                    break;
                }
                if (!search.can_cover_all_targets()) break;
                const std::size_t lower = std::max(sp.num_classes, sp.num_nodes);
                for (std::size_t k = lower; k <= sp.cands.size(); ++k) {
                    auto covers = search.full_covers(k, false);
                    if (!covers.empty()) {
                        result.outcome = ComplianceOutcome::Compliant;
                        for (auto& cover : covers)
                            result.witnesses.push_back(detail::pairs_of(sp, cover));
                        break;
                    }
                }
                break;
            }
            case ComplianceMode::Partial: {
                if (sp.num_classes == 0) {
                    result.outcome = ComplianceOutcome::Compliant;
                    result.witnesses.push_back({});
                    break;
                }
                const std::size_t best = search.max_class_coverage();
                if (best == 0) break;
                result.outcome = ComplianceOutcome::Compliant;
                for (auto& cover : search.class_covers(best, false))
                    result.witnesses.push_back(detail::pairs_of(sp, cover));
                break;
            }
        }
    } catch (const detail::BudgetExhausted&) {
        result = {};
        result.outcome = ComplianceOutcome::Undecided;
        result.expansions = budget;
        return result;
    }
    result.expansions = search.used();
    return result;
}

/// Reference implementation: tries every subset of the candidate pairs.
/// The verdict matches find_compliance; only the cost differs. Partial asks
/// for a nonempty subset (or an empty class set, where the hierarchy with
/// Normal forces a positive answer).
inline bool oracle_compliance(const ObjectGraph& g, const ClassGraph& s, ComplianceMode mode) {
    const std::vector<CandidatePair> cands = candidates(g, s);
    if (cands.size() > 20) throw BudgetExceeded();
    if (mode == ComplianceMode::Partial && s.classes().empty()) return true;
    const std::uint32_t n = static_cast<std::uint32_t>(cands.size());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (mode == ComplianceMode::Partial && mask == 0) continue;
        std::vector<CandidatePair> subset;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(cands[i]);
        if (verify_relation(std::move(subset), g, s, mode).ok) return true;
    }
    return false;
}

}  // namespace graphcomply
