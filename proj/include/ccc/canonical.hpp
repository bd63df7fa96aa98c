#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ccc/embedding.hpp"
#include "ccc/multigraph.hpp"

namespace ccc {

using VertexLabels = std::map<int, std::string>;  // absent key = unlabelled

namespace detail {

// Invariant-preserving colour refinement: colours become ranks of sorted
// (old colour, loop count, sorted neighbour-colour multiset) signatures.
inline std::map<int, int> refine_colors(const Multigraph& g, std::map<int, int> color) {
    auto adj = g.adjacency();
    while (true) {
        std::map<int, std::vector<int>> sig;
        for (int v : g.vertices) {
            std::vector<int> s{color[v]};
            int loops = 0;
            std::vector<int> ncol;
            for (auto [w, eid] : adj[v]) {
                (void)eid;
                if (w == v) {
                    ++loops;
                    continue;
                }
                ncol.push_back(color[w]);
            }
            std::sort(ncol.begin(), ncol.end());
            s.push_back(loops / 2);
            s.insert(s.end(), ncol.begin(), ncol.end());
            sig[v] = s;
        }
        std::vector<std::vector<int>> distinct;
        for (auto& [v, s] : sig) distinct.push_back(s);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::map<int, int> next;
        for (int v : g.vertices) {
            auto it = std::lower_bound(distinct.begin(), distinct.end(), sig[v]);
            next[v] = (int)(it - distinct.begin());
        }
        if (next == color) return color;
        color = std::move(next);
    }
}

inline std::string code_for_order(const Multigraph& g, const VertexLabels& labels,
                                  const std::vector<int>& order) {
    std::map<int, int> pos;
    for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
    std::string code;
    code += std::to_string(order.size());
    code += '|';
    for (int v : order) {
        auto it = labels.find(v);
        code += it == labels.end() ? std::string("_") : it->second;
        code += ',';
    }
    code += '|';
    // Upper triangle with multiplicities; diagonal counts loops.
    int n = (int)order.size();
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges) {
        int a = pos.at(e.u), b = pos.at(e.v);
        if (a > b) std::swap(a, b);
        ++mult[a][b];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (mult[i][j]) {
                code += std::to_string(i) + ":" + std::to_string(j) + ":" +
                        std::to_string(mult[i][j]) + ";";
            }
    return code;
}

inline void canon_search(const Multigraph& g, const VertexLabels& labels,
                         std::map<int, int> color, std::string& best, bool& have_best) {
    color = refine_colors(g, std::move(color));
    // First colour class with >= 2 vertices, by colour id.
    int target = -1;
    std::map<int, std::vector<int>> classes;
    for (auto& [v, c] : color) classes[c].push_back(v);
    for (auto& [c, vs] : classes)
        if (vs.size() >= 2) {
            target = c;
            break;
        }
    if (target < 0) {
        std::vector<int> order(g.vertices.begin(), g.vertices.end());
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return color.at(a) < color.at(b); });
        std::string code = code_for_order(g, labels, order);
        if (!have_best || code < best) {
            best = code;
            have_best = true;
        }
        return;
    }
    int fresh = (int)g.vertices.size() + 1;
    for (int v : classes[target]) {
        std::map<int, int> c2 = color;
        c2[v] = fresh;
        canon_search(g, labels, std::move(c2), best, have_best);
    }
}

}  // namespace detail

// Canonical code of an abstract multigraph with optional vertex labels.
// Equal codes iff label-preserving isomorphic.
inline std::string canonical_code(const Multigraph& g, const VertexLabels& labels = {}) {
    // Seed colours from labels so labelled vertices separate immediately.
    std::vector<std::string> distinct;
    for (int v : g.vertices) {
        auto it = labels.find(v);
        distinct.push_back(it == labels.end() ? std::string() : it->second);
    }
    sort_unique(distinct);
    std::map<int, int> color;
    for (int v : g.vertices) {
        auto it = labels.find(v);
        std::string key = it == labels.end() ? std::string() : it->second;
        color[v] = (int)(std::lower_bound(distinct.begin(), distinct.end(), key) -
                         distinct.begin());
    }
    std::string best;
    bool have = false;
    detail::canon_search(g, labels, std::move(color), best, have);
    if (!have) return "0||";  // empty graph
    return best;
}

namespace detail {

// Traversal code of a connected embedded component from a start dart. The
// rotation direction is fixed by `reflect`. Equal strings over equal start
// choices iff there is a label- and rotation-preserving isomorphism.
inline std::string embedded_code_from(const EmbeddedMultigraph& emb,
                                      const VertexLabels& labels, Dart d0, bool reflect) {
    const Multigraph& g = emb.graph;
    auto idx = emb.dart_index();
    auto rot_dir = [&](const Dart& d) {
        return reflect ? emb.rot_prev(d, idx) : emb.rot_next(d, idx);
    };
    std::map<int, int> vnum;
    std::map<int, int> enum_;
    int nextv = 0, nexte = 0;
    std::string out;
    std::vector<Dart> queue{d0};
    vnum[g.endpoint(d0)] = nextv++;
    std::set<int> emitted;  // vertices whose rotation has been written
    while (!queue.empty()) {
        Dart entry = queue.front();
        queue.erase(queue.begin());
        int v = g.endpoint(entry);
        if (emitted.count(v)) continue;
        emitted.insert(v);
        auto lit = labels.find(v);
        out += '[';
        out += lit == labels.end() ? std::string("_") : lit->second;
        // Walk the full rotation starting at the entry dart.
        Dart d = entry;
        do {
            int w = g.other_endpoint(d);
            if (!vnum.count(w)) {
                vnum[w] = nextv++;
                queue.push_back(Multigraph::twin(d));
            }
            if (!enum_.count(d.edge)) enum_[d.edge] = nexte++;
            out += ' ' + std::to_string(vnum[w]) + '.' + std::to_string(enum_[d.edge]);
            d = rot_dir(d);
        } while (!(d == entry));
        out += ']';
    }
    return out;
}

inline std::vector<Dart> component_darts(const EmbeddedMultigraph& emb, int v0) {
    // All darts of the component containing v0, in deterministic order.
    std::set<int> seen{v0};
    std::vector<int> stack{v0};
    std::vector<Dart> out;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const Dart& d : emb.rotation.at(v)) {
            out.push_back(d);
            int w = emb.graph.other_endpoint(d);
            if (!seen.count(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string embedded_component_code(const EmbeddedMultigraph& emb,
                                           const VertexLabels& labels, int v0,
                                           bool reflect) {
    if (emb.rotation.at(v0).empty()) {
        auto it = labels.find(v0);
        return "[" + (it == labels.end() ? std::string("_") : it->second) + "]";
    }
    std::string best;
    bool have = false;
    for (const Dart& d : component_darts(emb, v0)) {
        std::string c = embedded_code_from(emb, labels, d, reflect);
        if (!have || c < best) {
            best = c;
            have = true;
        }
    }
    return best;
}

}  // namespace detail

// Canonical code of an embedded multigraph up to orientation-preserving
// sphere homeomorphism and, when quantify_reflection is set, mirror images.
// Components are treated as drawn side by side.
inline std::string embedded_canonical_code(const EmbeddedMultigraph& emb,
                                           const VertexLabels& labels = {},
                                           bool quantify_reflection = false) {
    auto comps = emb.graph.components();
    std::string best;
    for (int pass = 0; pass < (quantify_reflection ? 2 : 1); ++pass) {
        std::vector<std::string> codes;
        for (const auto& comp : comps)
            codes.push_back(detail::embedded_component_code(emb, labels, comp.front(),
                                                            pass == 1));
        std::sort(codes.begin(), codes.end());
        std::string joined;
        for (const auto& c : codes) joined += c + "\n";
        if (pass == 0 || joined < best) best = joined;
    }
    return best;
}

// Suppresses unlabelled degree-2 vertices whose two darts belong to distinct
// edges, preserving the embedding. A cycle of unlabelled vertices collapses
// to a single vertex carrying a loop.
inline EmbeddedMultigraph suppress_degree_two(EmbeddedMultigraph emb,
                                              const VertexLabels& labels = {}) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : emb.graph.vertices) {
            if (labels.count(v)) continue;
            const auto& rot = emb.rotation.at(v);
            if (rot.size() != 2 || rot[0].edge == rot[1].edge) continue;
            Dart d1 = rot[0], d2 = rot[1];
            int a = emb.graph.other_endpoint(d1);
            int b = emb.graph.other_endpoint(d2);
            Dart far1 = Multigraph::twin(d1);  // dart of edge1 at a
            Dart far2 = Multigraph::twin(d2);  // dart of edge2 at b
            int nid = emb.graph.next_edge_id();
            emb.graph.add_edge_id(nid, a, b);
            Dart na{nid, 0}, nb{nid, 1};
            auto replace = [&](int at, Dart from, Dart to) {
                auto& r = emb.rotation.at(at);
                auto it = std::find(r.begin(), r.end(), from);
                ensure(it != r.end(), "suppression: dart missing");
                *it = to;
            };
            replace(a, far1, na);
            replace(b, far2, nb);
            emb.graph.erase_edge(d1.edge);
            emb.graph.erase_edge(d2.edge);
            emb.graph.erase_vertex(v);
            emb.rotation.erase(v);
            changed = true;
            break;
        }
    }
    return emb;
}

inline std::string canonical_code(const EmbeddedMultigraph& emb,
                                  const VertexLabels& labels = {}) {
    return embedded_canonical_code(emb, labels, false);
}

// Combinatorial homeomorphism of embedded multigraphs: equality of embedded
// canonical codes after suppression, quantified over reflection; the sphere
// viewpoint quantifies over the outer face implicitly.
inline bool is_homeomorphic(const EmbeddedMultigraph& a, const EmbeddedMultigraph& b,
                            const VertexLabels& la = {}, const VertexLabels& lb = {}) {
    EmbeddedMultigraph sa = suppress_degree_two(a, la);
    EmbeddedMultigraph sb = suppress_degree_two(b, lb);
    std::string ca0 = embedded_canonical_code(sa, la, false);
    std::string cb0 = embedded_canonical_code(sb, lb, false);
    if (ca0 == cb0) return true;
    std::string cb1 = embedded_canonical_code(sb.reflected(), lb, false);
    return ca0 == cb1;
}

}  // namespace ccc
