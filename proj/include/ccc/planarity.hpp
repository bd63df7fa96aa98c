#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ccc/blocks.hpp"
#include "ccc/embedding.hpp"
#include "ccc/multigraph.hpp"

namespace ccc {

namespace detail {

// Incremental face-based planarity embedding of a simple 2-connected graph:
// start from a cycle, then repeatedly route a path of an unembedded fragment
// through an admissible face, preferring fragments with the fewest admissible
// faces. Returns the face walks, or nullopt when some fragment has none.
inline std::optional<std::vector<std::vector<Dart>>> embed_biconnected_simple(
    const Multigraph& g) {
    if (g.edge_count() == 0) return std::vector<std::vector<Dart>>{};
    if (g.edge_count() == 1) {
        Dart d{g.edges[0].id, 0};
        return std::vector<std::vector<Dart>>{{d, Multigraph::twin(d)}};
    }

    auto adj = g.adjacency();

    // Initial cycle: endpoints of the first edge are joined by a second path
    // in a 2-connected graph.
    std::vector<int> cyc_v;
    {
        const auto& e0 = g.edges.front();
        std::map<int, std::pair<int, int>> pred;
        std::vector<int> q{e0.u};
        std::set<int> seen{e0.u};
        for (size_t qi = 0; qi < q.size() && !seen.count(e0.v); ++qi) {
            int v = q[qi];
            for (auto [w, eid] : adj[v]) {
                if (eid == e0.id || seen.count(w)) continue;
                seen.insert(w);
                pred[w] = {v, eid};
                q.push_back(w);
            }
        }
        ensure(seen.count(e0.v), "2-connected graph must close a cycle over any edge");
        for (int x = e0.v; x != e0.u; x = pred[x].first) cyc_v.push_back(x);
        cyc_v.push_back(e0.u);
        std::reverse(cyc_v.begin(), cyc_v.end());
    }
    ensure(cyc_v.size() >= 3, "simple cycle must have length >= 3");

    std::set<int> embedded_v(cyc_v.begin(), cyc_v.end());
    std::set<int> embedded_e;

    auto edge_between = [&](int u, int v) -> int {
        for (auto [w, eid] : adj[u])
            if (w == v) return eid;
        return -1;
    };
    auto dart_from = [&](int u, int eid) -> Dart {
        return g.edge(eid).u == u ? Dart{eid, 0} : Dart{eid, 1};
    };

    std::vector<std::vector<Dart>> faces;
    {
        std::vector<Dart> fwd, bwd;
        for (size_t i = 0; i < cyc_v.size(); ++i) {
            int u = cyc_v[i], v = cyc_v[(i + 1) % cyc_v.size()];
            int eid = edge_between(u, v);
            ensure(eid >= 0, "cycle edge missing");
            embedded_e.insert(eid);
            fwd.push_back(dart_from(u, eid));
        }
        for (size_t i = cyc_v.size(); i-- > 0;)
            bwd.push_back(Multigraph::twin(fwd[i]));
        faces.push_back(fwd);
        faces.push_back(bwd);
    }

    while ((int)embedded_e.size() < g.edge_count()) {
        // Fragments: components of unembedded edges glued at unembedded
        // vertices; attachments are embedded vertices they touch.
        std::map<int, int> frag_of_edge;
        std::vector<std::vector<int>> frag_edges;
        for (const auto& e : g.edges) {
            if (embedded_e.count(e.id) || frag_of_edge.count(e.id)) continue;
            int fi = (int)frag_edges.size();
            frag_edges.push_back({});
            std::vector<int> stack{e.id};
            frag_of_edge[e.id] = fi;
            while (!stack.empty()) {
                int eid = stack.back();
                stack.pop_back();
                frag_edges[fi].push_back(eid);
                for (int x : {g.edge(eid).u, g.edge(eid).v}) {
                    if (embedded_v.count(x)) continue;
                    for (auto [w, eid2] : adj[x]) {
                        (void)w;
                        if (embedded_e.count(eid2) || frag_of_edge.count(eid2)) continue;
                        frag_of_edge[eid2] = fi;
                        stack.push_back(eid2);
                    }
                }
            }
        }

        std::vector<std::vector<int>> face_verts;
        for (const auto& f : faces) {
            std::vector<int> vs;
            for (const Dart& d : f) vs.push_back(g.endpoint(d));
            sort_unique(vs);
            face_verts.push_back(vs);
        }

        int best_frag = -1, best_count = INT32_MAX, best_face = -1;
        std::vector<int> best_att;
        for (int fi = 0; fi < (int)frag_edges.size(); ++fi) {
            std::vector<int> att;
            for (int eid : frag_edges[fi])
                for (int x : {g.edge(eid).u, g.edge(eid).v})
                    if (embedded_v.count(x)) att.push_back(x);
            sort_unique(att);
            ensure(att.size() >= 2, "fragment of a 2-connected graph has >=2 attachments");
            int cnt = 0, last = -1;
            for (int f = 0; f < (int)faces.size(); ++f) {
                bool ok = std::includes(face_verts[f].begin(), face_verts[f].end(),
                                        att.begin(), att.end());
                if (ok) {
                    ++cnt;
                    last = f;
                }
            }
            if (cnt == 0) return std::nullopt;  // nonplanar
            if (cnt < best_count) {
                best_count = cnt;
                best_frag = fi;
                best_face = last;
                best_att = att;
            }
        }

        // Route a path between two attachments through the fragment.
        int a = best_att[0], b = best_att[1];
        std::vector<int> pv;  // path vertices a..b
        std::vector<int> pe;  // path edges
        {
            std::set<int> frag(frag_edges[best_frag].begin(), frag_edges[best_frag].end());
            std::map<int, std::pair<int, int>> pred;  // vertex -> (prev vertex, edge)
            std::vector<int> q{a};
            std::set<int> seen{a};
            bool found = false;
            for (size_t qi = 0; qi < q.size() && !found; ++qi) {
                int v = q[qi];
                if (v != a && embedded_v.count(v)) continue;  // may not pass through
                for (auto [w, eid] : adj[v]) {
                    if (!frag.count(eid) || seen.count(w)) continue;
                    seen.insert(w);
                    pred[w] = {v, eid};
                    if (w == b) {
                        found = true;
                        break;
                    }
                    q.push_back(w);
                }
            }
            ensure(found, "fragment path routing failed");
            for (int x = b; x != a; x = pred[x].first) {
                pv.push_back(x);
                pe.push_back(pred[x].second);
            }
            pv.push_back(a);
            std::reverse(pv.begin(), pv.end());
            std::reverse(pe.begin(), pe.end());
        }

        // Split the chosen face along the path.
        std::vector<Dart>& fw = faces[best_face];
        int ia = -1, ib = -1;
        for (int i = 0; i < (int)fw.size(); ++i) {
            int tv = g.endpoint(fw[i]);
            if (tv == a) ia = i;
            if (tv == b) ib = i;
        }
        ensure(ia >= 0 && ib >= 0, "attachments not on chosen face");
        std::vector<Dart> fdarts, bdarts;
        for (size_t i = 0; i + 1 < pv.size(); ++i)
            fdarts.push_back(dart_from(pv[i], pe[i]));
        for (size_t i = pv.size() - 1; i-- > 0;)
            bdarts.push_back(Multigraph::twin(fdarts[i]));

        std::vector<Dart> nf1 = fdarts;  // a -> b, then walk b .. a
        for (int i = ib; i != ia; i = (i + 1) % fw.size()) nf1.push_back(fw[i]);
        std::vector<Dart> nf2 = bdarts;  // b -> a, then walk a .. b
        for (int i = ia; i != ib; i = (i + 1) % fw.size()) nf2.push_back(fw[i]);

        faces[best_face] = nf1;
        faces.push_back(nf2);
        for (int x : pv) embedded_v.insert(x);
        for (int eid : pe) embedded_e.insert(eid);
    }
    return faces;
}

// Rebuilds rotation lists from a complete set of face walks.
inline std::map<int, std::vector<Dart>> rotations_from_faces(
    const Multigraph& g, const std::vector<std::vector<Dart>>& faces) {
    std::map<Dart, Dart> sigma;  // rot_next
    for (const auto& f : faces)
        for (size_t i = 0; i < f.size(); ++i) {
            const Dart& d1 = f[i];
            const Dart& d2 = f[(i + 1) % f.size()];
            sigma[Multigraph::twin(d1)] = d2;
        }
    std::map<int, std::vector<Dart>> rot;
    for (int v : g.vertices) rot[v];
    std::set<Dart> done;
    for (const auto& [d, _] : sigma) {
        if (done.count(d)) continue;
        int v = g.endpoint(d);
        std::vector<Dart>& r = rot[v];
        ensure(r.empty(), "face walks give disconnected rotation at a vertex");
        Dart x = d;
        do {
            r.push_back(x);
            done.insert(x);
            x = sigma.at(x);
        } while (!(x == d));
    }
    return rot;
}

}  // namespace detail

// Computes a plane (spherical) embedding, or nullopt iff the graph is
// nonplanar. Handles multigraphs: parallel edges are nested beside a
// representative and loops occupy an empty corner.
inline std::optional<EmbeddedMultigraph> planarity_embed(const Multigraph& g) {
    EmbeddedMultigraph out;
    out.graph = g;
    for (int v : g.vertices) out.rotation[v] = {};

    BlockDecomposition bd = blocks(g);
    for (const auto& blk : bd.blocks) {
        Multigraph bg = g.edge_subgraph(blk);
        if (bg.edge_count() == 1 && bg.edges[0].u == bg.edges[0].v) {
            // Loop block.
            int v = bg.edges[0].u;
            out.rotation[v].push_back(Dart{bg.edges[0].id, 0});
            out.rotation[v].push_back(Dart{bg.edges[0].id, 1});
            continue;
        }
        Multigraph skel = bg.underlying_simple();
        auto faces = detail::embed_biconnected_simple(skel);
        if (!faces) return std::nullopt;
        auto rot = detail::rotations_from_faces(skel, *faces);
        // Reinsert parallel copies right after their representative at one
        // end and right before it at the other: empty lenses, still plane.
        std::map<std::pair<int, int>, std::vector<int>> extras;
        std::set<int> kept;
        for (const auto& e : skel.edges) kept.insert(e.id);
        for (const auto& e : bg.edges)
            if (e.u != e.v && !kept.count(e.id))
                extras[std::pair{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.id);
        for (auto& [key, ids] : extras) {
            int rep = -1;
            for (const auto& e : skel.edges)
                if (std::pair{std::min(e.u, e.v), std::max(e.u, e.v)} == key) rep = e.id;
            ensure(rep >= 0, "parallel class lost its representative");
            for (int side = 0; side < 2; ++side) {
                int v = side == 0 ? key.first : key.second;
                auto& r = rot.at(v);
                Dart repd{rep, g.edge(rep).u == v ? 0 : 1};
                auto it = std::find(r.begin(), r.end(), repd);
                ensure(it != r.end(), "representative dart missing from rotation");
                std::vector<Dart> ins;
                for (int id : ids) ins.push_back(Dart{id, g.edge(id).u == v ? 0 : 1});
                if (side == 1) {
                    // Nest consistently: reversed order before the
                    // representative at the second endpoint.
                    std::reverse(ins.begin(), ins.end());
                    r.insert(it, ins.begin(), ins.end());
                } else {
                    r.insert(std::next(it), ins.begin(), ins.end());
                }
            }
        }
        for (auto& [v, r] : rot) {
            auto& target = out.rotation[v];
            target.insert(target.end(), r.begin(), r.end());
        }
    }

    out.validate();
    ensure(out.is_plane(), "constructed embedding fails the face count check");
    return out;
}

inline bool is_planar(const Multigraph& g) { return planarity_embed(g).has_value(); }

}  // namespace ccc
