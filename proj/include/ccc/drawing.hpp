#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccc/embedding.hpp"
#include "ccc/io.hpp"
#include "ccc/multigraph.hpp"
#include "ccc/planarity.hpp"

namespace ccc {

// One crossing point: edges a and b cross at planarization vertex y;
// pos_a/pos_b are 0-based indices in each edge's crossing order (oriented
// from the edge's u endpoint to its v endpoint).
struct CrossingInfo {
    int y = -1;
    int edge_a = -1;
    int edge_b = -1;
    int pos_a = 0;
    int pos_b = 0;
};

// A drawing of `original` given combinatorially: a plane embedding of its
// planarization, where each crossing has been replaced by a degree-4 vertex.
struct Drawing {
    Multigraph original;
    EmbeddedMultigraph planarization;
    std::vector<int> crossing_vertices;                // Y, sorted
    std::map<int, std::vector<int>> segment_map;       // original edge -> chain
    std::vector<CrossingInfo> crossings;

    int crossing_count() const { return (int)crossing_vertices.size(); }

    // Structural invariants: Y vertices have degree 4, the planarization is
    // plane, and contracting every segment chain and deleting Y recovers the
    // original graph exactly.
    void validate() const {
        planarization.validate();
        ensure(planarization.is_plane(), "planarization is not plane");
        std::set<int> yset(crossing_vertices.begin(), crossing_vertices.end());
        for (int y : yset)
            ensure(planarization.graph.degree(y) == 4, "crossing vertex degree != 4");
        ensure((int)yset.size() == (int)crossing_vertices.size(),
               "duplicate crossing vertices");
        // Vertex sets: planarization vertices = original vertices + Y.
        std::vector<int> expect = original.vertices;
        expect.insert(expect.end(), yset.begin(), yset.end());
        sort_unique(expect);
        ensure(expect == planarization.graph.vertices,
               "planarization vertex set mismatch");
        // Segment chains partition the planarization's edges and trace each
        // original edge through crossing vertices only.
        std::set<int> used;
        for (const auto& e : original.edges) {
            auto it = segment_map.find(e.id);
            ensure(it != segment_map.end(), "original edge missing from segment map");
            const auto& chain = it->second;
            ensure(!chain.empty(), "empty segment chain");
            int at = e.u;
            for (size_t i = 0; i < chain.size(); ++i) {
                const auto& s = planarization.graph.edge(chain[i]);
                ensure(s.u == at || s.v == at, "segment chain is not a path");
                at = s.u == at ? s.v : s.u;
                if (i + 1 < chain.size())
                    ensure(yset.count(at), "interior segment vertex is not a crossing");
                ensure(used.insert(chain[i]).second, "segment used twice");
            }
            ensure(at == e.v, "segment chain ends at the wrong vertex");
        }
        ensure(used.size() == planarization.graph.edges.size(),
               "planarization has extra edges");
        ensure((int)crossings.size() == (int)yset.size(), "crossing list mismatch");
        for (const auto& ci : crossings) {
            ensure(yset.count(ci.y), "crossing record names a non-Y vertex");
            ensure(original.find_edge(ci.edge_a) && original.find_edge(ci.edge_b),
                   "crossing record names unknown edges");
        }
    }
};

// Crossing pattern: unordered edge pairs plus, per edge, the order in which
// its crossings occur along the edge (oriented u -> v).
struct CrossingPattern {
    std::vector<std::pair<int, int>> pairs;       // (edge_a, edge_b) per crossing
    std::map<int, std::vector<int>> edge_order;   // edge -> crossing indices, in order

    // Fills implied orders for edges crossed at most once, and validates that
    // provided orders name exactly this edge's crossings.
    void complete(const Multigraph& g) {
        std::map<int, std::vector<int>> incidence;
        for (int i = 0; i < (int)pairs.size(); ++i) {
            incidence[pairs[i].first].push_back(i);
            incidence[pairs[i].second].push_back(i);
        }
        for (auto& [e, idxs] : incidence) {
            require(g.find_edge(e) != nullptr, "crossing names unknown edge");
            auto it = edge_order.find(e);
            if (it == edge_order.end()) {
                require(idxs.size() <= 1, "edge crossed twice needs an explicit order");
                edge_order[e] = idxs;
            } else {
                std::vector<int> sorted_given = it->second;
                sort_unique(sorted_given);
                require(sorted_given == idxs, "edge order names wrong crossings");
                require(sorted_given.size() == it->second.size(),
                        "edge order repeats a crossing");
            }
        }
        for (auto it = edge_order.begin(); it != edge_order.end();) {
            if (!incidence.count(it->first))
                it = edge_order.erase(it);
            else
                ++it;
        }
    }
};

namespace detail {

// Builds the planarized multigraph without embedding it. Crossing index i
// becomes vertex ybase + i.
struct PlanarizationBuild {
    Multigraph graph;
    int ybase = 0;
    std::map<int, std::vector<int>> segment_map;
};

inline PlanarizationBuild build_planarization(const Multigraph& g,
                                              const CrossingPattern& pat) {
    for (auto [a, b] : pat.pairs) {
        require(a != b, "an edge cannot cross itself");
        const auto& ea = g.edge(a);
        const auto& eb = g.edge(b);
        require(ea.u != ea.v && eb.u != eb.v, "loops cannot carry crossings");
        bool adjacent = ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
        require(!adjacent, "adjacent edges never cross in a good drawing");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : pat.pairs) {
        auto key = std::pair{std::min(a, b), std::max(a, b)};
        require(seen.insert(key).second, "two edges cross at most once");
    }
    PlanarizationBuild out;
    out.graph = g;
    out.ybase = g.next_vertex_id();
    for (int i = 0; i < (int)pat.pairs.size(); ++i) out.graph.add_vertex_id(out.ybase + i);
    int next_eid = g.next_edge_id();
    for (const auto& e : g.edges) {
        auto it = pat.edge_order.find(e.id);
        if (it == pat.edge_order.end() || it->second.empty()) {
            out.segment_map[e.id] = {e.id};
            continue;
        }
        out.graph.erase_edge(e.id);
        int at = e.u;
        std::vector<int> chain;
        for (int ci : it->second) {
            int y = out.ybase + ci;
            out.graph.add_edge_id(next_eid, at, y);
            chain.push_back(next_eid++);
            at = y;
        }
        out.graph.add_edge_id(next_eid, at, e.v);
        chain.push_back(next_eid++);
        out.segment_map[e.id] = chain;
    }
    return out;
}

// Canonical renumbering of a pattern: crossings sorted by (min edge, max
// edge); per-edge orders rewritten accordingly. Keeps output files stable.
inline CrossingPattern canonicalize_pattern(CrossingPattern pat) {
    std::vector<int> idx(pat.pairs.size());
    for (int i = 0; i < (int)idx.size(); ++i) idx[i] = i;
    auto key = [&](int i) {
        auto [a, b] = pat.pairs[i];
        return std::pair{std::min(a, b), std::max(a, b)};
    };
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return key(i) < key(j); });
    std::vector<int> where(idx.size());
    for (int p = 0; p < (int)idx.size(); ++p) where[idx[p]] = p;
    CrossingPattern out;
    for (int p = 0; p < (int)idx.size(); ++p) {
        auto [a, b] = pat.pairs[idx[p]];
        out.pairs.push_back({std::min(a, b), std::max(a, b)});
    }
    for (auto& [e, ord] : pat.edge_order) {
        std::vector<int> no;
        for (int ci : ord) no.push_back(where[ci]);
        out.edge_order[e] = no;
    }
    return out;
}

}  // namespace detail

// Planarizes a crossing pattern if it is realizable: returns the Drawing
// whose planarization is plane, or nothing when the pattern cannot be drawn.
inline std::optional<Drawing> try_planarize(const Multigraph& g, CrossingPattern pat) {
    pat.complete(g);
    pat = detail::canonicalize_pattern(pat);
    auto build = detail::build_planarization(g, pat);
    auto emb = planarity_embed(build.graph);
    if (!emb) return std::nullopt;
    Drawing d;
    d.original = g;
    d.planarization = *emb;
    d.segment_map = build.segment_map;
    for (int i = 0; i < (int)pat.pairs.size(); ++i)
        d.crossing_vertices.push_back(build.ybase + i);
    for (int i = 0; i < (int)pat.pairs.size(); ++i) {
        auto [a, b] = pat.pairs[i];
        CrossingInfo ci;
        ci.y = build.ybase + i;
        ci.edge_a = a;
        ci.edge_b = b;
        const auto& oa = pat.edge_order.at(a);
        const auto& ob = pat.edge_order.at(b);
        ci.pos_a = (int)(std::find(oa.begin(), oa.end(), i) - oa.begin());
        ci.pos_b = (int)(std::find(ob.begin(), ob.end(), i) - ob.begin());
        d.crossings.push_back(ci);
    }
    d.validate();
    return d;
}

// As try_planarize but an unrealizable pattern is an input error.
inline Drawing planarize(const Multigraph& g, const CrossingPattern& pat) {
    auto d = try_planarize(g, pat);
    require(d.has_value(), "crossing pattern is not realizable in the plane");
    return *d;
}

inline Drawing plane_drawing(const Multigraph& g) { return planarize(g, {}); }

// Drawing file: graph section, then `crossings:` with one line per crossing.
inline void write_drawing(std::ostream& out, const Drawing& d) {
    write_graph(out, d.original);
    out << "crossings:\n";
    for (const auto& ci : d.crossings)
        out << ci.y << ' ' << ci.edge_a << ' ' << ci.edge_b << ' ' << ci.pos_a << ' '
            << ci.pos_b << '\n';
}

inline std::string drawing_to_string(const Drawing& d) {
    std::ostringstream out;
    write_drawing(out, d);
    return out.str();
}

inline Drawing read_drawing(std::istream& in) {
    detail::LineReader r(in);
    r.skip_blank_and_comments();
    GraphRecord rec = read_graph_record(r);
    r.skip_blank_and_comments();
    if (r.eof()) return plane_drawing(rec.graph);
    int hl = r.lineno();
    auto head = detail::split_ws(r.take());
    if (head.size() != 1 || head[0] != "crossings:")
        throw parse_error(hl, "expected 'crossings:' section");
    struct Row {
        int y, ea, eb, pa, pb;
    };
    std::vector<Row> rows;
    while (!r.eof()) {
        auto toks = detail::split_ws(r.peek());
        if (toks.empty()) break;
        if (toks[0][0] == '#') {
            r.take();
            continue;
        }
        int ln = r.lineno();
        r.take();
        if (toks.size() != 5)
            throw parse_error(ln, "expected 'y-id edge-a edge-b pos-a pos-b'");
        rows.push_back(Row{(int)detail::parse_int(toks[0], ln),
                           (int)detail::parse_int(toks[1], ln),
                           (int)detail::parse_int(toks[2], ln),
                           (int)detail::parse_int(toks[3], ln),
                           (int)detail::parse_int(toks[4], ln)});
    }
    CrossingPattern pat;
    std::map<int, std::map<int, int>> order_pos;  // edge -> pos -> crossing idx
    for (int i = 0; i < (int)rows.size(); ++i) {
        pat.pairs.push_back({rows[i].ea, rows[i].eb});
        order_pos[rows[i].ea][rows[i].pa] = i;
        order_pos[rows[i].eb][rows[i].pb] = i;
    }
    for (auto& [e, pos_map] : order_pos) {
        std::vector<int> ord;
        int expect = 0;
        for (auto& [pos, ci] : pos_map) {
            if (pos != expect++) throw parse_error(hl, "crossing positions not contiguous");
            ord.push_back(ci);
        }
        pat.edge_order[e] = ord;
    }
    try {
        return planarize(rec.graph, pat);
    } catch (const bad_input& e) {
        throw parse_error(hl, e.what());
    }
}

inline Drawing read_drawing(const std::string& text) {
    std::istringstream in(text);
    return read_drawing(in);
}

}  // namespace ccc
