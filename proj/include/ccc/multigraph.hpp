#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ccc/util.hpp"

namespace ccc {

// A dart is one of the two ends of an edge. Loops contribute two darts at the
// same vertex.
struct Dart {
    int edge = -1;
    int end = 0;  // 0 or 1
    friend bool operator==(const Dart&, const Dart&) = default;
    friend auto operator<=>(const Dart&, const Dart&) = default;
};

// Undirected multigraph with stable integer ids. Vertex and edge ids survive
// deletions, so derived reports can refer back to the original graph.
struct Multigraph {
    struct Edge {
        int id = -1;
        int u = -1;
        int v = -1;
    };

    std::vector<int> vertices;  // sorted, unique
    std::vector<Edge> edges;    // sorted by id, unique ids

    Multigraph() = default;

    static Multigraph with_vertices(int n) {
        Multigraph g;
        g.vertices.resize(n);
        for (int i = 0; i < n; ++i) g.vertices[i] = i;
        return g;
    }

    int vertex_count() const { return (int)vertices.size(); }
    int edge_count() const { return (int)edges.size(); }

    bool has_vertex(int v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }

    const Edge* find_edge(int id) const {
        auto it = std::lower_bound(edges.begin(), edges.end(), id,
                                   [](const Edge& e, int key) { return e.id < key; });
        if (it == edges.end() || it->id != id) return nullptr;
        return &*it;
    }

    const Edge& edge(int id) const {
        const Edge* e = find_edge(id);
        require(e != nullptr, "unknown edge id " + std::to_string(id));
        return *e;
    }

    int endpoint(const Dart& d) const {
        const Edge& e = edge(d.edge);
        return d.end == 0 ? e.u : e.v;
    }
    int other_endpoint(const Dart& d) const {
        const Edge& e = edge(d.edge);
        return d.end == 0 ? e.v : e.u;
    }
    static Dart twin(const Dart& d) { return Dart{d.edge, 1 - d.end}; }

    int next_vertex_id() const { return vertices.empty() ? 0 : vertices.back() + 1; }
    int next_edge_id() const { return edges.empty() ? 0 : edges.back().id + 1; }

    int add_vertex() {
        int v = next_vertex_id();
        vertices.push_back(v);
        return v;
    }

    void add_vertex_id(int v) {
        require(!has_vertex(v), "duplicate vertex id");
        vertices.insert(std::upper_bound(vertices.begin(), vertices.end(), v), v);
    }

    int add_edge(int u, int v) { return add_edge_id(next_edge_id(), u, v); }

    int add_edge_id(int id, int u, int v) {
        require(has_vertex(u) && has_vertex(v), "edge endpoint not a vertex");
        require(find_edge(id) == nullptr, "duplicate edge id");
        Edge e{id, u, v};
        auto it = std::lower_bound(edges.begin(), edges.end(), id,
                                   [](const Edge& a, int key) { return a.id < key; });
        edges.insert(it, e);
        return id;
    }

    void erase_edge(int id) {
        auto it = std::lower_bound(edges.begin(), edges.end(), id,
                                   [](const Edge& e, int key) { return e.id < key; });
        require(it != edges.end() && it->id == id, "unknown edge id");
        edges.erase(it);
    }

    // Removes the vertex and every incident edge.
    void erase_vertex(int v) {
        require(has_vertex(v), "unknown vertex id");
        vertices.erase(std::lower_bound(vertices.begin(), vertices.end(), v));
        std::erase_if(edges, [v](const Edge& e) { return e.u == v || e.v == v; });
    }

    // Loops count twice.
    int degree(int v) const {
        int d = 0;
        for (const Edge& e : edges) {
            if (e.u == v) ++d;
            if (e.v == v) ++d;
        }
        return d;
    }

    std::vector<Dart> darts_at(int v) const {
        std::vector<Dart> out;
        for (const Edge& e : edges) {
            if (e.u == v) out.push_back(Dart{e.id, 0});
            if (e.v == v) out.push_back(Dart{e.id, 1});
        }
        return out;
    }

    std::vector<int> incident_edges(int v) const {
        std::vector<int> out;
        for (const Edge& e : edges)
            if (e.u == v || e.v == v) out.push_back(e.id);
        return out;
    }

    // Adjacency map vertex -> (neighbor, edge id) pairs; loops appear twice.
    std::map<int, std::vector<std::pair<int, int>>> adjacency() const {
        std::map<int, std::vector<std::pair<int, int>>> adj;
        for (int v : vertices) adj[v];
        for (const Edge& e : edges) {
            adj[e.u].push_back({e.v, e.id});
            adj[e.v].push_back({e.u, e.id});
        }
        return adj;
    }

    Multigraph induced(const std::vector<int>& verts) const {
        std::vector<int> vs = verts;
        sort_unique(vs);
        Multigraph g;
        g.vertices = vs;
        for (const Edge& e : edges)
            if (std::binary_search(vs.begin(), vs.end(), e.u) &&
                std::binary_search(vs.begin(), vs.end(), e.v))
                g.edges.push_back(e);
        return g;
    }

    // Subgraph spanned by the given edge ids plus any extra isolated vertices.
    Multigraph edge_subgraph(const std::vector<int>& edge_ids,
                             const std::vector<int>& extra_vertices = {}) const {
        Multigraph g;
        std::vector<int> vs = extra_vertices;
        std::vector<int> ids = edge_ids;
        sort_unique(ids);
        for (int id : ids) {
            const Edge& e = edge(id);
            g.edges.push_back(e);
            vs.push_back(e.u);
            vs.push_back(e.v);
        }
        sort_unique(vs);
        g.vertices = vs;
        return g;
    }

    Multigraph without_edge(int id) const {
        Multigraph g = *this;
        g.erase_edge(id);
        return g;
    }

    Multigraph without_vertex(int v) const {
        Multigraph g = *this;
        g.erase_vertex(v);
        return g;
    }

    // Replaces edge id by a path through a fresh vertex; returns the new
    // vertex id. The two path edges get fresh ids.
    int subdivide_edge(int id) {
        Edge e = edge(id);
        erase_edge(id);
        int w = add_vertex();
        add_edge(e.u, w);
        add_edge(w, e.v);
        return w;
    }

    // Keeps one edge per endpoint pair, drops loops.
    Multigraph underlying_simple() const {
        Multigraph g;
        g.vertices = vertices;
        std::set<std::pair<int, int>> seen;
        for (const Edge& e : edges) {
            if (e.u == e.v) continue;
            auto key = std::minmax(e.u, e.v);
            if (seen.insert(key).second) g.edges.push_back(e);
        }
        return g;
    }

    std::vector<std::vector<int>> components() const {
        std::map<int, int> comp;
        auto adj = adjacency();
        int nc = 0;
        for (int s : vertices) {
            if (comp.count(s)) continue;
            std::vector<int> stack{s};
            comp[s] = nc;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [w, eid] : adj[v]) {
                    (void)eid;
                    if (!comp.count(w)) {
                        comp[w] = nc;
                        stack.push_back(w);
                    }
                }
            }
            ++nc;
        }
        std::vector<std::vector<int>> out(nc);
        for (int v : vertices) out[comp[v]].push_back(v);
        return out;
    }

    bool is_connected() const { return vertex_count() <= 1 || components().size() == 1; }

    // Renumbers vertices to 0..n-1 and edges to 0..m-1 preserving order;
    // returns the old->new vertex map.
    std::map<int, int> normalize() {
        std::map<int, int> vmap;
        for (int i = 0; i < (int)vertices.size(); ++i) vmap[vertices[i]] = i;
        for (auto& v : vertices) v = vmap[v];
        for (int i = 0; i < (int)edges.size(); ++i) {
            edges[i].id = i;
            edges[i].u = vmap[edges[i].u];
            edges[i].v = vmap[edges[i].v];
        }
        return vmap;
    }
};

inline Multigraph complete_graph(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Multigraph complete_bipartite(int a, int b) {
    Multigraph g = Multigraph::with_vertices(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

inline Multigraph cycle_graph(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Multigraph path_graph(int n) {
    Multigraph g = Multigraph::with_vertices(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

// Circular ladder: inner cycle 0..m-1, outer cycle m..2m-1, spokes i -- m+i.
// Edge ids: inner cycle 0..m-1, outer cycle m..2m-1, spokes 2m..3m-1.
inline Multigraph circular_ladder(int m) {
    Multigraph g = Multigraph::with_vertices(2 * m);
    for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
    for (int i = 0; i < m; ++i) g.add_edge(m + i, m + (i + 1) % m);
    for (int i = 0; i < m; ++i) g.add_edge(i, m + i);
    return g;
}

inline Multigraph petersen_graph() {
    Multigraph g = Multigraph::with_vertices(10);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);        // outer C5
    for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner star
    for (int i = 0; i < 5; ++i) g.add_edge(i, 5 + i);              // spokes
    return g;
}

}  // namespace ccc
