#pragma once

// Brute-force reference implementations used only by tests. Deliberately
// naive and independent of the library's algorithms.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ccc/canonical.hpp"
#include "ccc/multigraph.hpp"
#include "ccc/util.hpp"

namespace oracle {

using ccc::Multigraph;

// Multiplicity fingerprint under a given vertex relabelling.
inline std::map<std::pair<int, int>, int> mult_map(const Multigraph& g,
                                                   const std::map<int, int>& relab) {
    std::map<std::pair<int, int>, int> m;
    for (const auto& e : g.edges) {
        int a = relab.at(e.u), b = relab.at(e.v);
        if (a > b) std::swap(a, b);
        ++m[{a, b}];
    }
    return m;
}

// Exhaustive bijection search.
inline bool isomorphic(const Multigraph& g, const Multigraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
        return false;
    std::vector<int> dg, dh;
    for (int v : g.vertices) dg.push_back(g.degree(v));
    for (int v : h.vertices) dh.push_back(h.degree(v));
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    std::map<int, int> idg;
    for (int i = 0; i < (int)g.vertices.size(); ++i) idg[g.vertices[i]] = i;
    auto gm = mult_map(g, idg);
    std::vector<int> perm = h.vertices;
    std::sort(perm.begin(), perm.end());
    do {
        std::map<int, int> relab;
        bool degree_ok = true;
        for (int i = 0; i < (int)perm.size(); ++i) {
            relab[perm[i]] = i;
            if (h.degree(perm[i]) != g.degree(g.vertices[i])) {
                degree_ok = false;
                break;
            }
        }
        if (!degree_ok) continue;
        if (mult_map(h, relab) == gm) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// All simple graphs on exactly n vertices up to isomorphism, generated by
// edge augmentation with canonical-code deduplication. Totals are asserted
// against the known sequence by the caller, which certifies the codes too.
inline std::vector<Multigraph> all_simple_graphs(int n) {
    std::vector<Multigraph> out;
    std::set<std::string> seen;
    std::vector<Multigraph> level{Multigraph::with_vertices(n)};
    seen.insert(ccc::canonical_code(level[0]));
    out.push_back(level[0]);
    while (!level.empty()) {
        std::vector<Multigraph> next;
        for (const auto& g : level) {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    bool present = false;
                    for (const auto& e : g.edges)
                        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
                            present = true;
                            break;
                        }
                    if (present) continue;
                    Multigraph h = g;
                    h.add_edge(u, v);
                    std::string code = ccc::canonical_code(h);
                    if (seen.insert(code).second) {
                        next.push_back(h);
                        out.push_back(h);
                    }
                }
        }
        level = std::move(next);
    }
    return out;
}

namespace detail {

inline void all_paths_from(const std::map<int, std::vector<std::pair<int, int>>>& adj,
                           int x, const std::set<int>& sinks,
                           const std::set<int>& banned, std::vector<int>& evs,
                           std::set<int>& onpath, std::vector<std::vector<int>>& out) {
    for (auto [y, eid] : adj.at(x)) {
        if (banned.count(y)) continue;
        evs.push_back(eid);
        if (sinks.count(y)) {
            out.push_back(evs);
        } else if (!onpath.count(y)) {
            onpath.insert(y);
            all_paths_from(adj, y, sinks, banned, evs, onpath, out);
            onpath.erase(y);
        }
        evs.pop_back();
    }
}

inline int max_packing(const std::vector<std::vector<int>>& paths, size_t i,
                       std::set<int>& used_edges) {
    if (i == paths.size()) return 0;
    int best = max_packing(paths, i + 1, used_edges);  // skip paths[i]
    bool free_path = true;
    for (int e : paths[i])
        if (used_edges.count(e)) {
            free_path = false;
            break;
        }
    if (free_path) {
        for (int e : paths[i]) used_edges.insert(e);
        best = std::max(best, 1 + max_packing(paths, i + 1, used_edges));
        for (int e : paths[i]) used_edges.erase(e);
    }
    return best;
}

}  // namespace detail

// Maximum number of pairwise edge-disjoint source→sink paths avoiding
// forbidden vertices, by exhaustive path-set branching. Tiny fixtures only.
inline int max_edge_disjoint_count(const Multigraph& g, const std::vector<int>& sources,
                                   const std::vector<int>& sinks,
                                   const std::vector<int>& forbidden = {}) {
    auto adj = g.adjacency();
    std::set<int> sinkset(sinks.begin(), sinks.end());
    std::set<int> banned(forbidden.begin(), forbidden.end());
    std::vector<std::vector<int>> paths;  // as edge-id sequences
    for (int s : sources) {
        if (banned.count(s)) continue;
        std::vector<int> evs;
        std::set<int> onpath{s};
        detail::all_paths_from(adj, s, sinkset, banned, evs, onpath, paths);
    }
    // Walks that revisit edges are not simple paths; drop duplicates inside one walk.
    std::vector<std::vector<int>> clean;
    for (auto& p : paths) {
        std::set<int> es(p.begin(), p.end());
        if (es.size() == p.size()) clean.push_back(p);
    }
    std::set<int> used;
    return detail::max_packing(clean, 0, used);
}

// Is every sink separated from every source after deleting the given edges?
inline bool edge_cut_separates(const Multigraph& g, const std::vector<int>& sources,
                               const std::vector<int>& sinks,
                               const std::vector<int>& cut_edges,
                               const std::vector<int>& forbidden = {}) {
    std::set<int> dead(cut_edges.begin(), cut_edges.end());
    std::set<int> banned(forbidden.begin(), forbidden.end());
    std::set<int> reach;
    std::vector<int> stack;
    for (int s : sources)
        if (!banned.count(s)) {
            reach.insert(s);
            stack.push_back(s);
        }
    auto adj = g.adjacency();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, eid] : adj.at(v)) {
            if (dead.count(eid) || banned.count(w) || reach.count(w)) continue;
            reach.insert(w);
            stack.push_back(w);
        }
    }
    for (int t : sinks)
        if (reach.count(t)) return false;
    return true;
}

// Same for vertex cuts: delete cut vertices, then no source reaches a sink.
// A source or sink inside the cut is itself deleted.
inline bool vertex_cut_separates(const Multigraph& g, const std::vector<int>& sources,
                                 const std::vector<int>& sinks,
                                 const std::vector<int>& cut_vertices,
                                 const std::vector<int>& forbidden = {}) {
    std::set<int> dead(cut_vertices.begin(), cut_vertices.end());
    for (int v : forbidden) dead.insert(v);
    std::set<int> reach;
    std::vector<int> stack;
    for (int s : sources)
        if (!dead.count(s)) {
            reach.insert(s);
            stack.push_back(s);
        }
    auto adj = g.adjacency();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, eid] : adj.at(v)) {
            (void)eid;
            if (dead.count(w) || reach.count(w)) continue;
            reach.insert(w);
            stack.push_back(w);
        }
    }
    for (int t : sinks)
        if (reach.count(t)) return false;
    return true;
}

// Deterministic random simple graph on n vertices, edge probability num/den.
inline Multigraph random_simple_graph(int n, int num, int den, ccc::rng64& rng) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((int)rng.below((uint64_t)den) < num) g.add_edge(u, v);
    return g;
}

// Random multigraph: random simple base plus random parallel copies/loops.
inline Multigraph random_multigraph(int n, int extra, ccc::rng64& rng) {
    Multigraph g = random_simple_graph(n, 1, 2, rng);
    for (int i = 0; i < extra; ++i) {
        int u = (int)rng.below((uint64_t)n);
        int v = (int)rng.below((uint64_t)n);
        g.add_edge(u, v);  // may duplicate or loop
    }
    return g;
}

// Minimum over all vertex orderings of the largest "boundary" any prefix
// shows (vertices inside with a neighbour outside); equals the path-width.
inline int pathwidth_bruteforce(const Multigraph& g) {
    auto s = g.underlying_simple();
    std::vector<int> verts(s.vertices.begin(), s.vertices.end());
    int n = (int)verts.size();
    if (n == 0) return -1;
    std::map<int, std::set<int>> nbr;
    for (const auto& e : s.edges) {
        nbr[e.u].insert(e.v);
        nbr[e.v].insert(e.u);
    }
    std::sort(verts.begin(), verts.end());
    int best = n;
    do {
        int w = 0;
        std::set<int> prefix;
        for (int i = 0; i < n - 1 && w < best; ++i) {
            prefix.insert(verts[i]);
            int b = 0;
            for (int u : prefix)
                for (int x : nbr[u])
                    if (!prefix.count(x)) {
                        ++b;
                        break;
                    }
            w = std::max(w, b);
        }
        best = std::min(best, w);
    } while (std::next_permutation(verts.begin(), verts.end()));
    return best;
}

}  // namespace oracle
