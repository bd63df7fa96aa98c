#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccc/blocks.hpp"
#include "ccc/drawing.hpp"
#include "ccc/multigraph.hpp"
#include "ccc/planarity.hpp"

namespace ccc {

// Exact solver outcome. When conclusive, value = cr and witness is an
// optimal drawing. Otherwise every k <= budget was refuted, so
// cr >= lower_bound = budget + 1; this is an explicit answer, never a guess.
struct CrossingResult {
    bool conclusive = false;
    int value = -1;
    int lower_bound = 0;
    std::optional<Drawing> witness;
};

namespace detail {

// Unordered pairs of edges allowed to cross under the good-drawing policy:
// distinct, loop-free, no shared endpoint (parallel edges share two).
inline std::vector<std::pair<int, int>> independent_edge_pairs(const Multigraph& g) {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const auto& a = g.edges[i];
        if (a.u == a.v) continue;
        for (size_t j = i + 1; j < g.edges.size(); ++j) {
            const auto& b = g.edges[j];
            if (b.u == b.v) continue;
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            out.push_back({a.id, b.id});
        }
    }
    return out;
}

// Enumerates per-edge crossing orders for a fixed set of crossing pairs;
// calls fn for each completed pattern until fn returns true.
inline bool enumerate_orders(const Multigraph& g, const std::vector<std::pair<int, int>>& chosen,
                             const std::function<bool(const CrossingPattern&)>& fn) {
    std::map<int, std::vector<int>> incidence;
    for (int i = 0; i < (int)chosen.size(); ++i) {
        incidence[chosen[i].first].push_back(i);
        incidence[chosen[i].second].push_back(i);
    }
    std::vector<int> multi;  // edges with >= 2 crossings, needing an order
    for (auto& [e, idxs] : incidence)
        if (idxs.size() >= 2) multi.push_back(e);
    CrossingPattern pat;
    pat.pairs = chosen;
    for (auto& [e, idxs] : incidence) pat.edge_order[e] = idxs;
    std::function<bool(size_t)> rec = [&](size_t mi) -> bool {
        if (mi == multi.size()) return fn(pat);
        std::vector<int> perm = incidence[multi[mi]];
        std::sort(perm.begin(), perm.end());
        do {
            pat.edge_order[multi[mi]] = perm;
            if (rec(mi + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    return rec(0);
}

// Enumerates all k-subsets of candidate pairs together with per-edge orders.
inline bool enumerate_patterns(const Multigraph& g,
                               const std::vector<std::pair<int, int>>& pairs, int k,
                               const std::function<bool(const CrossingPattern&)>& fn) {
    std::vector<std::pair<int, int>> chosen;
    std::function<bool(size_t)> rec = [&](size_t from) -> bool {
        if ((int)chosen.size() == k) return enumerate_orders(g, chosen, fn);
        if (pairs.size() - from < k - chosen.size()) return false;
        for (size_t i = from; i < pairs.size(); ++i) {
            chosen.push_back(pairs[i]);
            if (rec(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

// At the first accepted level of the deepening loop, every crossing vertex
// must interleave its two edges' segments; a touching pattern would imply a
// cheaper drawing, contradicting the refutation of the previous level.
inline void assert_alternation(const Drawing& d) {
    std::map<int, int> owner;  // planarization edge -> original edge
    for (const auto& [oe, chain] : d.segment_map)
        for (int s : chain) owner[s] = oe;
    for (int y : d.crossing_vertices) {
        const auto& rot = d.planarization.rotation.at(y);
        ensure(rot.size() == 4, "crossing vertex degree != 4");
        ensure(owner.at(rot[0].edge) == owner.at(rot[2].edge) &&
                   owner.at(rot[1].edge) == owner.at(rot[3].edge) &&
                   owner.at(rot[0].edge) != owner.at(rot[1].edge),
               "optimal drawing has a non-alternating crossing vertex");
    }
}

}  // namespace detail

// Euler-formula lower bound on the simple underlying graph; crossing number
// is additive over components, so component bounds add up.
inline int crossing_lower_bound(const Multigraph& g) {
    Multigraph s = g.underlying_simple();
    int total = 0;
    for (const auto& comp : s.components()) {
        if (comp.size() < 3) continue;
        Multigraph cs = s.induced(comp);
        int b = (int)cs.edge_count() - 3 * (int)cs.vertex_count() + 6;
        if (b > 0) total += b;
    }
    return total;
}

// Exact crossing number by iterative deepening over crossing patterns,
// accepting the first pattern whose planarization embeds in the plane.
// budget < 0 means unbounded.
inline CrossingResult crossing_number(const Multigraph& g, int budget = -1) {
    auto pairs = detail::independent_edge_pairs(g);
    int lb = crossing_lower_bound(g);
    CrossingResult res;
    for (int k = lb;; ++k) {
        if (budget >= 0 && k > budget) {
            res.conclusive = false;
            res.lower_bound = budget + 1;
            return res;
        }
        if (k > (int)pairs.size()) {
            // No candidate patterns left: every drawing uses at most
            // |pairs| crossings, so planarity must have been found earlier.
            ensure(false, "deepening exhausted the pattern space");
        }
        std::optional<Drawing> found;
        detail::enumerate_patterns(g, pairs, k, [&](const CrossingPattern& pat) {
            auto build = detail::build_planarization(g, pat);
            auto emb = planarity_embed(build.graph);
            if (!emb) return false;
            found = try_planarize(g, pat);
            ensure(found.has_value(), "embedding vanished on rebuild");
            return true;
        });
        if (found) {
            detail::assert_alternation(*found);
            res.conclusive = true;
            res.value = k;
            res.lower_bound = k;
            res.witness = std::move(found);
            return res;
        }
    }
}

// Decision form: is cr(g) <= k?
inline bool crossing_number_at_most(const Multigraph& g, int k) {
    auto r = crossing_number(g, k);
    return r.conclusive;
}

enum class Verdict { critical, not_critical, inconclusive };

struct CriticalityReport {
    Multigraph graph;
    int c = 0;
    std::optional<int> cr_value;          // exact when known
    int cr_lower_bound = 0;               // always valid
    std::map<int, std::optional<int>> per_edge;  // edge -> cr(g-e) when known
    Verdict verdict = Verdict::inconclusive;
    std::string reason;
};

// c-crossing-criticality: cr(g) >= c and cr(g-e) < c for every edge e.
// Single-edge deletions suffice by subgraph monotonicity of cr.
// budget < 0 lets subcalls run exactly as deep as the verdict requires.
inline CriticalityReport is_crossing_critical(const Multigraph& g, int c,
                                              int budget = -1) {
    require(c >= 1, "criticality threshold must be >= 1");
    CriticalityReport rep;
    rep.graph = g;
    rep.c = c;
    int main_budget = budget < 0 ? c : std::min(budget, c);
    auto whole = crossing_number(g, main_budget);
    bool cr_ge_c;
    if (whole.conclusive) {
        rep.cr_value = whole.value;
        rep.cr_lower_bound = whole.value;
        cr_ge_c = whole.value >= c;
    } else {
        rep.cr_lower_bound = whole.lower_bound;
        cr_ge_c = whole.lower_bound >= c;
        if (!cr_ge_c) {
            rep.verdict = Verdict::inconclusive;
            rep.reason = "budget too small to decide cr >= c";
            return rep;
        }
    }
    if (!cr_ge_c) {
        rep.verdict = Verdict::not_critical;
        rep.reason = "cr(g) = " + std::to_string(whole.value) + " < c";
        return rep;
    }
    int edge_budget = budget < 0 ? c - 1 : std::min(budget, c - 1);
    for (const auto& e : g.edges) {
        auto sub = crossing_number(g.without_edge(e.id), edge_budget);
        if (sub.conclusive) {
            rep.per_edge[e.id] = sub.value;  // < c since edge_budget <= c-1
        } else if (sub.lower_bound >= c) {
            rep.per_edge[e.id] = std::nullopt;
            rep.verdict = Verdict::not_critical;
            rep.reason = "deleting edge " + std::to_string(e.id) + " keeps cr >= c";
            return rep;
        } else {
            rep.per_edge[e.id] = std::nullopt;
            rep.verdict = Verdict::inconclusive;
            rep.reason = "budget exhausted on edge " + std::to_string(e.id);
            return rep;
        }
    }
    rep.verdict = Verdict::critical;
    return rep;
}

// (c,delta)-criticality: cr(g) = c exactly and cr(g-e) <= c - delta for all e.
// nullopt = budget too small to decide.
inline std::optional<bool> is_cd_critical(const Multigraph& g, int c, int delta,
                                          int budget = -1) {
    require(c >= 1 && delta >= 1, "need c >= 1 and delta >= 1");
    int main_budget = budget < 0 ? c : std::min(budget, c);
    auto whole = crossing_number(g, main_budget);
    if (whole.conclusive) {
        if (whole.value != c) return false;
    } else {
        if (whole.lower_bound > c) return false;  // cr > c
        return std::nullopt;                      // cannot certify cr == c
    }
    int edge_budget = budget < 0 ? c - delta : std::min(budget, c - delta);
    for (const auto& e : g.edges) {
        auto sub = crossing_number(g.without_edge(e.id), edge_budget);
        if (sub.conclusive) {
            if (sub.value > c - delta) return false;
        } else if (sub.lower_bound > c - delta) {
            return false;
        } else {
            return std::nullopt;
        }
    }
    return true;
}

struct BlockCriticality {
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::vector<int>> blocks;  // edge-id sets, as in blocks()
    std::vector<int> block_c;              // c_i per block when assigned
    int delta = 0;
    std::string reason;
};

// Searches (c_1..c_b, delta) with c <= sum c_i <= c + delta - 1 and every
// block (c_i,delta)-critical. Each c_i is forced to cr(block); the maximal
// usable delta per block is cr(block) - max_e cr(block - e). The assignment
// exists iff the whole graph is c-crossing-critical; both sides are computed
// and compared here.
inline BlockCriticality check_block_criticality(const Multigraph& h, int c,
                                                int budget = -1) {
    require(c >= 1, "criticality threshold must be >= 1");
    BlockCriticality out;
    auto bd = blocks(h);
    out.blocks = bd.blocks;
    int sum_c = 0;
    int min_delta = -1;
    for (const auto& blk : bd.blocks) {
        Multigraph bg = h.edge_subgraph(blk);
        auto rb = crossing_number(bg, budget);
        if (!rb.conclusive) {
            out.verdict = Verdict::inconclusive;
            out.reason = "budget exhausted on a block";
            return out;
        }
        int ci = rb.value;
        int worst = 0;
        for (const auto& e : bg.edges) {
            auto re = crossing_number(bg.without_edge(e.id), budget);
            if (!re.conclusive) {
                out.verdict = Verdict::inconclusive;
                out.reason = "budget exhausted on a block edge deletion";
                return out;
            }
            worst = std::max(worst, re.value);
        }
        int delta_i = ci - worst;
        out.block_c.push_back(ci);
        if (delta_i <= 0) {
            // Cross-check against the direct definition before returning.
            auto direct = is_crossing_critical(h, c, budget);
            if (direct.verdict == Verdict::inconclusive) {
                out.verdict = Verdict::inconclusive;
                out.reason = "direct criticality check ran out of budget";
                return out;
            }
            ensure(direct.verdict == Verdict::not_critical,
                   "block refutation disagrees with direct criticality");
            out.verdict = Verdict::not_critical;
            out.reason = "a block is not criticality-capable (delta <= 0)";
            return out;
        }
        sum_c += ci;
        min_delta = min_delta < 0 ? delta_i : std::min(min_delta, delta_i);
    }
    bool assigned = sum_c >= c && sum_c <= c + (min_delta < 0 ? 0 : min_delta) - 1;
    auto direct = is_crossing_critical(h, c, budget);
    if (direct.verdict == Verdict::inconclusive) {
        out.verdict = Verdict::inconclusive;
        out.reason = "direct criticality check ran out of budget";
        return out;
    }
    ensure(assigned == (direct.verdict == Verdict::critical),
           "block assignment disagrees with direct criticality");
    if (assigned) {
        out.verdict = Verdict::critical;
        out.delta = min_delta;
    } else {
        out.verdict = Verdict::not_critical;
        out.reason = "no (c_1..c_b, delta) satisfies the sum constraints";
        out.block_c.clear();
    }
    return out;
}

// Closed-form constants, kept exact; the path-width bound is a big integer.
struct PaperConstants {
    int c = 0;
    int rt_bound = 0;                      // ceil(5c/2) + 16
    int nest_bound = 0;                    // 15c^2 + 105c + 16
    boost::multiprecision::cpp_int pathwidth_bound;  // 2^(1488c^3+1) * c^(432c^3)
};

inline PaperConstants paper_constants(int c) {
    require(c >= 1, "constants defined for c >= 1");
    PaperConstants pc;
    pc.c = c;
    pc.rt_bound = (5 * c + 1) / 2 + 16;
    pc.nest_bound = 15 * c * c + 105 * c + 16;
    long long c3 = (long long)c * c * c;
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::pow;
    pc.pathwidth_bound =
        pow(cpp_int(2), (unsigned)(1488 * c3 + 1)) * pow(cpp_int(c), (unsigned)(432 * c3));
    return pc;
}

}  // namespace ccc
