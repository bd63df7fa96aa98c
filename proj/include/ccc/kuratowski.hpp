#pragma once

#include <map>
#include <set>
#include <vector>

#include "ccc/multigraph.hpp"

namespace ccc {

namespace detail {

// Backtracking router: pairwise internally disjoint paths between already
// fixed branch vertices. `used` marks vertices unavailable as interiors
// (all branch vertices plus interiors of committed paths).
struct SubdivRouter {
    const std::map<int, std::vector<int>>* adj;  // simple adjacency
    std::vector<std::pair<int, int>> pairs;
    std::set<int> used;

    bool route(size_t i) {
        if (i == pairs.size()) return true;
        auto [s, t] = pairs[i];
        std::vector<int> path{s};
        std::set<int> onpath{s};
        return extend(s, t, i, path, onpath);
    }

    bool extend(int x, int t, size_t i, std::vector<int>& path, std::set<int>& onpath) {
        for (int y : adj->at(x)) {
            if (y == t) {
                std::vector<int> interior(path.begin() + 1, path.end());
                for (int v : interior) used.insert(v);
                if (route(i + 1)) return true;
                for (int v : interior) used.erase(v);
                continue;
            }
            if (used.count(y) || onpath.count(y)) continue;
            path.push_back(y);
            onpath.insert(y);
            if (extend(y, t, i, path, onpath)) return true;
            path.pop_back();
            onpath.erase(y);
        }
        return false;
    }
};

inline bool assign_branches(const std::map<int, std::vector<int>>& adj,
                            const std::vector<int>& verts,
                            const std::vector<int>& target_deg,
                            const std::vector<std::pair<int, int>>& target_pairs,
                            std::vector<int>& slot, std::set<int>& taken, size_t k) {
    if (k == slot.size()) {
        SubdivRouter r;
        r.adj = &adj;
        for (auto [a, b] : target_pairs) r.pairs.push_back({slot[a], slot[b]});
        r.used = taken;
        return r.route(0);
    }
    for (int v : verts) {
        if (taken.count(v)) continue;
        if ((int)adj.at(v).size() < target_deg[k]) continue;
        slot[k] = v;
        taken.insert(v);
        if (assign_branches(adj, verts, target_deg, target_pairs, slot, taken, k + 1))
            return true;
        taken.erase(v);
    }
    return false;
}

}  // namespace detail

// Does g contain a subdivision of the simple graph `target`? Branch vertices
// are mapped injectively; connection paths are internally disjoint and avoid
// all branch vertices. Loops and parallel edges of g are irrelevant and
// ignored.
inline bool has_subdivision(const Multigraph& g, const Multigraph& target) {
    Multigraph s = g.underlying_simple();
    Multigraph t = target.underlying_simple();
    if (s.edge_count() < t.edge_count() || s.vertex_count() < t.vertex_count())
        return false;
    auto adjp = s.adjacency();
    std::map<int, std::vector<int>> adj;
    for (auto& [v, nb] : adjp) {
        for (auto [w, eid] : nb) {
            (void)eid;
            adj[v].push_back(w);
        }
        if (!adj.count(v)) adj[v] = {};
    }
    // Target slots ordered by decreasing degree for early pruning.
    std::vector<int> tverts = t.vertices;
    std::sort(tverts.begin(), tverts.end(), [&](int a, int b) {
        return t.degree(a) > t.degree(b) || (t.degree(a) == t.degree(b) && a < b);
    });
    std::map<int, int> tslot;
    for (size_t i = 0; i < tverts.size(); ++i) tslot[tverts[i]] = (int)i;
    std::vector<int> tdeg;
    for (int v : tverts) tdeg.push_back(t.degree(v));
    std::vector<std::pair<int, int>> tpairs;
    for (const auto& e : t.edges) tpairs.push_back({tslot[e.u], tslot[e.v]});
    std::vector<int> slot(tverts.size(), -1);
    std::set<int> taken;
    return detail::assign_branches(adj, s.vertices, tdeg, tpairs, slot, taken, 0);
}

inline bool has_k5_subdivision(const Multigraph& g) {
    return has_subdivision(g, complete_graph(5));
}

inline bool has_k33_subdivision(const Multigraph& g) {
    return has_subdivision(g, complete_bipartite(3, 3));
}

// Planarity by Kuratowski's criterion alone; independent of the embedding
// machinery, so the two can cross-check each other.
inline bool kuratowski_planar(const Multigraph& g) {
    return !has_k5_subdivision(g) && !has_k33_subdivision(g);
}

}  // namespace ccc
