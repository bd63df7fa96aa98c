#pragma once

// Brute-force crossing number, written independently of the main solver:
// candidate crossings are enumerated with a different recursion, the
// planarized graph is rebuilt from scratch, and planarity is decided by
// Kuratowski subdivision search instead of the embedding machinery. The two
// paths cross-check each other; this one is also reachable via the CLI's
// --oracle flag.

#include <map>
#include <optional>
#include <vector>

#include "ccc/kuratowski.hpp"
#include "ccc/multigraph.hpp"

namespace ccc {

namespace oracle_detail {

struct Candidate {
    std::vector<std::pair<int, int>> picks;     // crossing pairs (edge, edge)
    std::map<int, std::vector<int>> along;      // edge -> picks indices in order
};

inline Multigraph planarize_naive(const Multigraph& g, const Candidate& cand) {
    Multigraph p;
    for (int v : g.vertices) p.add_vertex_id(v);
    std::vector<int> yv;
    for (size_t i = 0; i < cand.picks.size(); ++i) yv.push_back(p.add_vertex());
    for (const auto& e : g.edges) {
        auto it = cand.along.find(e.id);
        if (it == cand.along.end()) {
            p.add_edge(e.u, e.v);
            continue;
        }
        int at = e.u;
        for (int pick : it->second) {
            p.add_edge(at, yv[pick]);
            at = yv[pick];
        }
        p.add_edge(at, e.v);
    }
    return p;
}

inline bool orders_then_test(const Multigraph& g, Candidate& cand,
                             std::vector<int>& multi, size_t mi) {
    if (mi == multi.size()) return kuratowski_planar(planarize_naive(g, cand));
    std::vector<int> base = cand.along[multi[mi]];
    std::sort(base.begin(), base.end());
    do {
        cand.along[multi[mi]] = base;
        if (orders_then_test(g, cand, multi, mi + 1)) return true;
    } while (std::next_permutation(base.begin(), base.end()));
    return false;
}

inline bool pick_pairs(const Multigraph& g,
                       const std::vector<std::pair<int, int>>& allowed, size_t from,
                       int remaining, Candidate& cand) {
    if (remaining == 0) {
        std::map<int, std::vector<int>> along;
        for (size_t i = 0; i < cand.picks.size(); ++i) {
            along[cand.picks[i].first].push_back((int)i);
            along[cand.picks[i].second].push_back((int)i);
        }
        cand.along = along;
        std::vector<int> multi;
        for (auto& [e, l] : along)
            if (l.size() >= 2) multi.push_back(e);
        return orders_then_test(g, cand, multi, 0);
    }
    for (size_t i = from; i + remaining <= allowed.size() + 0; ++i) {
        if (allowed.size() - i < (size_t)remaining) break;
        cand.picks.push_back(allowed[i]);
        if (pick_pairs(g, allowed, i + 1, remaining - 1, cand)) return true;
        cand.picks.pop_back();
    }
    return false;
}

}  // namespace oracle_detail

// cr(g) by exhaustive deepening, or nullopt if it exceeds the budget.
inline std::optional<int> oracle_crossing_number(const Multigraph& g, int budget) {
    std::vector<std::pair<int, int>> allowed;
    for (size_t i = 0; i < g.edges.size(); ++i)
        for (size_t j = i + 1; j < g.edges.size(); ++j) {
            const auto& a = g.edges[i];
            const auto& b = g.edges[j];
            if (a.u == a.v || b.u == b.v) continue;  // loops never cross
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
            allowed.push_back({a.id, b.id});
        }
    for (int k = 0; k <= budget; ++k) {
        if ((size_t)k > allowed.size()) break;
        oracle_detail::Candidate cand;
        if (oracle_detail::pick_pairs(g, allowed, 0, k, cand)) return k;
    }
    return std::nullopt;
}

}  // namespace ccc
