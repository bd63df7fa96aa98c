#pragma once

#include <map>
#include <queue>
#include <vector>

#include "ccc/multigraph.hpp"

namespace ccc {

// Unit-capacity max-flow network used for Menger computations. Arc pairs are
// stored adjacently so arc^1 is the reverse arc.
struct FlowNetwork {
    struct Arc {
        int to;
        int cap;
        int tag;  // caller payload: edge id or vertex id, -1 otherwise
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> head;  // node -> arc indices

    explicit FlowNetwork(int nodes) : head(nodes) {}

    int add_arc(int from, int to, int cap, int tag = -1) {
        int a = (int)arcs.size();
        arcs.push_back({to, cap, tag});
        arcs.push_back({from, 0, tag});
        head[from].push_back(a);
        head[to].push_back(a + 1);
        return a;
    }

    // BFS augmenting paths; fine at unit capacities and desk scale.
    int max_flow(int s, int t, int limit = INT32_MAX) {
        int total = 0;
        while (total < limit) {
            std::vector<int> pred_arc(head.size(), -1);
            std::vector<bool> seen(head.size(), false);
            std::queue<int> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty() && !seen[t]) {
                int v = q.front();
                q.pop();
                for (int a : head[v]) {
                    if (arcs[a].cap <= 0) continue;
                    int w = arcs[a].to;
                    if (seen[w]) continue;
                    seen[w] = true;
                    pred_arc[w] = a;
                    q.push(w);
                }
            }
            if (!seen[t]) break;
            for (int v = t; v != s;) {
                int a = pred_arc[v];
                arcs[a].cap -= 1;
                arcs[a ^ 1].cap += 1;
                v = arcs[a ^ 1].to;
            }
            ++total;
        }
        return total;
    }

    // Nodes reachable from s in the residual graph.
    std::vector<bool> residual_reachable(int s) const {
        std::vector<bool> seen(head.size(), false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a : head[v]) {
                if (arcs[a].cap <= 0) continue;
                if (!seen[arcs[a].to]) {
                    seen[arcs[a].to] = true;
                    stack.push_back(arcs[a].to);
                }
            }
        }
        return seen;
    }
};

struct PathFamily {
    int count = 0;
    std::vector<std::vector<int>> paths;       // vertex id sequences
    std::vector<std::vector<int>> path_edges;  // matching edge id sequences
    std::vector<int> cut;                      // edge ids or vertex ids, size == count
};

namespace detail {

// Walks net-positive unit flow from each source to extract concrete paths.
// Flow conservation guarantees every walk reaches a sink.
inline void extract_paths(const Multigraph& g, PathFamily& out,
                          std::map<std::pair<int, int>, int>& net_by_dart,
                          const std::vector<int>& sources,
                          const std::vector<int>& sinks) {
    std::vector<int> sink_sorted = sinks;
    sort_unique(sink_sorted);
    auto is_sink = [&](int v) {
        return std::binary_search(sink_sorted.begin(), sink_sorted.end(), v);
    };
    for (int s : sources) {
        while (true) {
            std::vector<int> pv{s};
            std::vector<int> pe;
            int v = s;
            while (pv.size() == 1 || !is_sink(v)) {
                int chosen = -1;
                for (const auto& e : g.edges) {
                    if (e.u == e.v || (e.u != v && e.v != v)) continue;
                    auto it = net_by_dart.find({e.id, v});
                    if (it != net_by_dart.end() && it->second > 0) {
                        chosen = e.id;
                        break;
                    }
                }
                if (chosen < 0) break;
                const auto& e = g.edge(chosen);
                net_by_dart[{chosen, v}] -= 1;
                v = (e.u == v) ? e.v : e.u;
                pv.push_back(v);
                pe.push_back(chosen);
                if (is_sink(v)) break;
            }
            if (pv.size() == 1 || !is_sink(v)) break;
            out.paths.push_back(pv);
            out.path_edges.push_back(pe);
        }
    }
}

}  // namespace detail

// Maximum family of pairwise edge-disjoint paths from `sources` to `sinks`
// avoiding `forbidden` vertices, with a matching minimum edge cut. Source and
// sink sets must be disjoint.
inline PathFamily max_edge_disjoint_paths(const Multigraph& g,
                                          std::vector<int> sources,
                                          std::vector<int> sinks,
                                          std::vector<int> forbidden = {}) {
    sort_unique(sources);
    sort_unique(sinks);
    sort_unique(forbidden);
    for (int s : sources)
        require(!std::binary_search(sinks.begin(), sinks.end(), s),
                "source and sink sets must be disjoint");

    // Node numbering: position in the vertex list, plus super source/sink.
    std::map<int, int> node;
    for (int v : g.vertices)
        if (!std::binary_search(forbidden.begin(), forbidden.end(), v))
            node[v] = (int)node.size();
    int S = (int)node.size(), T = S + 1;
    FlowNetwork net(T + 1);
    std::vector<int> uv_arc;  // arc index of u->v per edge, -1 if skipped
    for (const auto& e : g.edges) {
        if (e.u == e.v || !node.count(e.u) || !node.count(e.v)) {
            uv_arc.push_back(-1);
            continue;
        }
        uv_arc.push_back(net.add_arc(node[e.u], node[e.v], 1, e.id));
        net.add_arc(node[e.v], node[e.u], 1, e.id);
    }
    int big = g.edge_count() + 1;
    for (int s : sources)
        if (node.count(s)) net.add_arc(S, node[s], big);
    for (int t : sinks)
        if (node.count(t)) net.add_arc(node[t], T, big);

    PathFamily out;
    out.count = net.max_flow(S, T);

    // Net flow per (edge, tail-vertex).
    std::map<std::pair<int, int>, int> net_by_dart;
    int ai = 0;
    for (int ei = 0; ei < (int)g.edges.size(); ++ei) {
        if (uv_arc[ei] < 0) continue;
        const auto& e = g.edges[ei];
        int f_uv = 1 - net.arcs[uv_arc[ei]].cap;
        int f_vu = 1 - net.arcs[uv_arc[ei] + 2].cap;
        int nf = f_uv - f_vu;
        if (nf > 0) net_by_dart[{e.id, e.u}] = nf;
        if (nf < 0) net_by_dart[{e.id, e.v}] = -nf;
        (void)ai;
    }
    detail::extract_paths(g, out, net_by_dart, sources, sinks);
    ensure((int)out.paths.size() == out.count, "flow path extraction mismatch");

    // Min cut: saturated edges crossing the residual reachability boundary.
    std::vector<bool> reach = net.residual_reachable(S);
    for (int ei = 0; ei < (int)g.edges.size(); ++ei) {
        if (uv_arc[ei] < 0) continue;
        const auto& e = g.edges[ei];
        bool ru = reach[node[e.u]], rv = reach[node[e.v]];
        if (ru != rv) out.cut.push_back(e.id);
    }
    sort_unique(out.cut);
    ensure((int)out.cut.size() == out.count, "edge cut certificate size mismatch");
    return out;
}

// Maximum family of pairwise vertex-disjoint paths from `sources` to `sinks`
// avoiding `forbidden`, with a matching vertex cut. The sets may intersect:
// a vertex in both yields a zero-length path (and sits in every cut), which
// matches separator conventions for path decompositions.
inline PathFamily max_vertex_disjoint_paths(const Multigraph& g,
                                            std::vector<int> sources,
                                            std::vector<int> sinks,
                                            std::vector<int> forbidden = {}) {
    sort_unique(sources);
    sort_unique(sinks);
    sort_unique(forbidden);

    std::vector<int> shared;
    for (int s : sources)
        if (std::binary_search(sinks.begin(), sinks.end(), s) &&
            !std::binary_search(forbidden.begin(), forbidden.end(), s))
            shared.push_back(s);

    PathFamily out;
    for (int s : shared) {
        out.paths.push_back({s});
        out.path_edges.push_back({});
        out.cut.push_back(s);
        ++out.count;
    }
    // Shared vertices are spent: no other path may touch them.
    std::vector<int> forb2 = forbidden;
    forb2.insert(forb2.end(), shared.begin(), shared.end());
    sort_unique(forb2);

    std::map<int, int> in_node, out_node;
    int next = 0;
    for (int v : g.vertices) {
        if (std::binary_search(forb2.begin(), forb2.end(), v)) continue;
        in_node[v] = next++;
        out_node[v] = next++;
    }
    int S = next, T = next + 1;
    FlowNetwork net(T + 1);
    int big = g.vertex_count() + 1;
    std::map<int, int> split_arc;
    for (int v : g.vertices)
        if (in_node.count(v)) split_arc[v] = net.add_arc(in_node[v], out_node[v], 1, v);
    std::vector<int> uv_arc;
    for (const auto& e : g.edges) {
        if (e.u == e.v || !in_node.count(e.u) || !in_node.count(e.v)) {
            uv_arc.push_back(-1);
            continue;
        }
        // Edge arcs are uncapped so the minimum cut consists of split arcs
        // only, i.e. it is a vertex cut.
        uv_arc.push_back(net.add_arc(out_node[e.u], in_node[e.v], big, e.id));
        net.add_arc(out_node[e.v], in_node[e.u], big, e.id);
    }
    for (int s : sources)
        if (in_node.count(s)) net.add_arc(S, in_node[s], big);
    for (int t : sinks)
        if (out_node.count(t)) net.add_arc(out_node[t], T, big);

    int flow = net.max_flow(S, T);
    out.count += flow;

    std::map<std::pair<int, int>, int> net_by_dart;
    for (int ei = 0; ei < (int)g.edges.size(); ++ei) {
        if (uv_arc[ei] < 0) continue;
        const auto& e = g.edges[ei];
        int f_uv = big - net.arcs[uv_arc[ei]].cap;
        int f_vu = big - net.arcs[uv_arc[ei] + 2].cap;
        int nf = f_uv - f_vu;
        if (nf > 0) net_by_dart[{e.id, e.u}] = nf;
        if (nf < 0) net_by_dart[{e.id, e.v}] = -nf;
    }
    std::vector<int> src2, snk2;
    for (int s : sources)
        if (in_node.count(s)) src2.push_back(s);
    for (int t : sinks)
        if (out_node.count(t)) snk2.push_back(t);
    detail::extract_paths(g, out, net_by_dart, src2, snk2);
    ensure((int)out.paths.size() == out.count, "flow path extraction mismatch");

    std::vector<bool> reach = net.residual_reachable(S);
    for (int v : g.vertices) {
        auto it = split_arc.find(v);
        if (it == split_arc.end()) continue;
        if (reach[in_node[v]] && !reach[out_node[v]]) out.cut.push_back(v);
    }
    sort_unique(out.cut);
    ensure((int)out.cut.size() == out.count, "vertex cut certificate size mismatch");
    return out;
}

}  // namespace ccc
