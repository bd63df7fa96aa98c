#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ccc/canonical.hpp"
#include "ccc/embedding.hpp"
#include "ccc/multigraph.hpp"
#include "ccc/util.hpp"

// Labelled multigraphs drawn in the plane.  A rotation system fixes each
// connected component's drawing on its own sphere; to pin down one drawing of
// the whole (possibly disconnected) graph we also record, for every component,
// which face of which other component it sits inside.  That nesting data is
// exactly what a list of per-component rotation systems cannot express: a
// cycle drawn around a vertex and a cycle drawn beside it have identical
// rotations but different drawings.
//
// Components are identified by their smallest vertex id.  Faces are referred
// to by index into EmbeddedMultigraph::trace_faces(), which is deterministic.

namespace ccc {

// Where one component sits in the drawing.
//   host      component id of the enclosing component, or -1 when the
//             component lies in the unbounded region
//   host_face local face index (into trace_faces()) of the host's face that
//             contains this component; -1 when host == -1
//   own_face  local face index of this component's face that faces outward,
//             toward the host; -1 for a component with no darts (an isolated
//             vertex has a single "face" that is not traced)
struct ComponentPlacement {
    int host = -1;
    int host_face = -1;
    int own_face = -1;

    bool operator==(const ComponentPlacement&) const = default;
};

struct LabelledPlaneMultigraph {
    EmbeddedMultigraph emb;
    VertexLabels labels;                       // partial, injective
    std::map<int, ComponentPlacement> placement;  // one entry per component
};

namespace plane_detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// vertex -> component id (= smallest vertex of its component).
inline std::map<int, int> component_ids(const Multigraph& g) {
    std::map<int, int> out;
    for (const auto& comp : g.components()) {
        int id = *std::min_element(comp.begin(), comp.end());
        for (int v : comp) out[v] = id;
    }
    return out;
}

}  // namespace plane_detail

// The faces of the whole drawing.  Each local face (a rotation-system face of
// one component) belongs to a global face; a global face may also hold
// isolated vertices.  `outer` is the global face of the unbounded region.
struct PlaneFaces {
    std::vector<Face> local;                 // trace_faces() of the embedding
    std::map<Dart, int> local_of_dart;       // dart -> local face index
    std::vector<int> comp_of_local;          // local face -> component id
    std::vector<int> cls;                    // local face -> global face id
    int outer = -1;                          // global face id
    int count = 0;                           // number of global faces
    std::vector<std::vector<int>> members;   // global face -> local faces
    std::vector<std::vector<int>> isolated;  // global face -> dartless comps
};

inline void validate_drawing(const LabelledPlaneMultigraph& m) {
    m.emb.validate();
    require(m.emb.is_plane(), "drawing is not plane");
    std::set<std::string> seen;
    for (const auto& [v, lab] : m.labels) {
        require(std::find(m.emb.graph.vertices.begin(), m.emb.graph.vertices.end(), v) !=
                    m.emb.graph.vertices.end(),
                "label on missing vertex");
        require(seen.insert(lab).second, "duplicate label");
    }
    auto comp_of = plane_detail::component_ids(m.emb.graph);
    std::set<int> comps;
    for (auto& [v, c] : comp_of) comps.insert(c);
    require(m.placement.size() == comps.size(), "placement must cover every component exactly once");
    auto faces = m.emb.trace_faces();
    std::map<Dart, int> fod;
    for (int i = 0; i < (int)faces.size(); ++i)
        for (const Dart& d : faces[i].walk) fod[d] = i;
    auto face_comp = [&](int fi) {
        return comp_of.at(m.emb.graph.endpoint(faces[fi].walk.front()));
    };
    for (const auto& [c, pl] : m.placement) {
        require(comps.count(c), "placement key is not a component id");
        bool has_darts = false;
        for (const auto& [v, cc] : comp_of)
            if (cc == c && !m.emb.rotation.at(v).empty()) has_darts = true;
        if (pl.host == -1) {
            require(pl.host_face == -1, "top-level component must have host_face == -1");
        } else {
            require(comps.count(pl.host) && pl.host != c, "host must be a different component");
            require(pl.host_face >= 0 && pl.host_face < (int)faces.size() &&
                        face_comp(pl.host_face) == pl.host,
                    "host_face must be a face of the host component");
        }
        if (has_darts) {
            require(pl.own_face >= 0 && pl.own_face < (int)faces.size() &&
                        face_comp(pl.own_face) == c,
                    "own_face must be a face of the component");
        } else {
            require(pl.own_face == -1, "dartless component has no own_face");
        }
    }
    // hosts must form a forest
    for (const auto& [c, pl] : m.placement) {
        std::set<int> chain{c};
        int cur = pl.host;
        while (cur != -1) {
            require(chain.insert(cur).second, "placement nesting contains a cycle");
            cur = m.placement.at(cur).host;
        }
    }
}

inline PlaneFaces plane_faces(const LabelledPlaneMultigraph& m) {
    PlaneFaces out;
    out.local = m.emb.trace_faces();
    for (int i = 0; i < (int)out.local.size(); ++i)
        for (const Dart& d : out.local[i].walk) out.local_of_dart[d] = i;
    auto comp_of = plane_detail::component_ids(m.emb.graph);
    out.comp_of_local.resize(out.local.size());
    for (int i = 0; i < (int)out.local.size(); ++i)
        out.comp_of_local[i] = comp_of.at(m.emb.graph.endpoint(out.local[i].walk.front()));

    int n = (int)out.local.size();
    plane_detail::UnionFind uf(n + 1);  // element n = the unbounded region
    std::vector<std::pair<int, int>> dartless;  // (comp, up-element)
    for (const auto& [c, pl] : m.placement) {
        int up = pl.host == -1 ? n : pl.host_face;
        if (pl.own_face >= 0)
            uf.unite(pl.own_face, up);
        else
            dartless.push_back({c, up});
    }
    std::map<int, int> cls_of_root;
    auto cls_id = [&](int elem) {
        int r = uf.find(elem);
        auto it = cls_of_root.find(r);
        if (it != cls_of_root.end()) return it->second;
        int id = (int)cls_of_root.size();
        cls_of_root[r] = id;
        return id;
    };
    out.outer = cls_id(n);
    out.cls.resize(n);
    for (int i = 0; i < n; ++i) out.cls[i] = cls_id(i);
    out.count = (int)cls_of_root.size();
    out.members.resize(out.count);
    out.isolated.resize(out.count);
    for (int i = 0; i < n; ++i) out.members[out.cls[i]].push_back(i);
    for (auto [c, up] : dartless) out.isolated[cls_id(up)].push_back(c);
    return out;
}

// Convenience: wraps an embedding whose components all sit side by side in
// the unbounded region (for a connected graph this is the only drawing).
inline LabelledPlaneMultigraph plain_drawing(EmbeddedMultigraph emb, VertexLabels labels = {}) {
    LabelledPlaneMultigraph m;
    m.emb = std::move(emb);
    m.labels = std::move(labels);
    auto comp_of = plane_detail::component_ids(m.emb.graph);
    std::map<int, int> own;  // comp -> own_face or -1
    for (auto& [v, c] : comp_of)
        if (!own.count(c)) own[c] = -1;
    auto faces = m.emb.trace_faces();
    for (int i = 0; i < (int)faces.size(); ++i) {
        int c = comp_of.at(m.emb.graph.endpoint(faces[i].walk.front()));
        if (own[c] == -1) own[c] = i;  // outward face: first traced face
    }
    for (auto& [c, f] : own) m.placement[c] = ComponentPlacement{-1, -1, f};
    return m;
}

// The drawing induced on a subset of the vertices and edges: rotations are
// restricted, and each surviving component is placed in the region of the
// original drawing left once the discarded parts are erased.
inline LabelledPlaneMultigraph subdrawing(const LabelledPlaneMultigraph& m,
                                          const std::set<int>& keep_vertices,
                                          const std::set<int>& keep_edges) {
    for (int v : keep_vertices)
        require(std::find(m.emb.graph.vertices.begin(), m.emb.graph.vertices.end(), v) !=
                    m.emb.graph.vertices.end(),
                "subdrawing: unknown vertex");
    LabelledPlaneMultigraph h;
    for (int v : keep_vertices) h.emb.graph.add_vertex_id(v);
    for (const Multigraph::Edge& e : m.emb.graph.edges)
        if (keep_edges.count(e.id)) {
            require(keep_vertices.count(e.u) && keep_vertices.count(e.v),
                    "subdrawing: edge endpoint not kept");
            h.emb.graph.edges.push_back(e);
        }
    for (int v : keep_vertices) {
        std::vector<Dart> rot;
        for (const Dart& d : m.emb.rotation.at(v))
            if (keep_edges.count(d.edge)) rot.push_back(d);
        h.emb.rotation[v] = rot;
    }
    h.emb.outer_face.reset();
    for (const auto& [v, lab] : m.labels)
        if (keep_vertices.count(v)) h.labels[v] = lab;
    if (keep_vertices.empty()) return h;

    // Regions of the plane minus H: start from the global faces of m and
    // merge across every erased edge.
    PlaneFaces gf = plane_faces(m);
    plane_detail::UnionFind uf(gf.count);
    for (const Multigraph::Edge& e : m.emb.graph.edges)
        if (!keep_edges.count(e.id))
            uf.unite(gf.cls[gf.local_of_dart.at(Dart{e.id, 0})],
                     gf.cls[gf.local_of_dart.at(Dart{e.id, 1})]);

    auto faces = h.emb.trace_faces();
    std::map<Dart, int> h_face_of_dart;
    for (int i = 0; i < (int)faces.size(); ++i)
        for (const Dart& d : faces[i].walk) h_face_of_dart[d] = i;
    std::vector<int> region_of_face(faces.size());
    for (int i = 0; i < (int)faces.size(); ++i)
        region_of_face[i] = uf.find(gf.cls[gf.local_of_dart.at(faces[i].walk.front())]);

    auto comp_of = plane_detail::component_ids(h.emb.graph);
    std::map<int, std::vector<int>> faces_of_comp;  // comp -> its local faces
    for (int i = 0; i < (int)faces.size(); ++i)
        faces_of_comp[comp_of.at(h.emb.graph.endpoint(faces[i].walk.front()))].push_back(i);
    // region each dartless component of H lies in
    std::map<int, int> region_of_dartless;
    for (int v : keep_vertices) {
        if (!h.emb.rotation.at(v).empty()) continue;
        if (comp_of.at(v) != v) continue;  // only single-vertex components are dartless
        if (!m.emb.rotation.at(v).empty()) {
            int r = uf.find(gf.cls[gf.local_of_dart.at(m.emb.rotation.at(v).front())]);
            for (const Dart& d : m.emb.rotation.at(v))
                ensure(uf.find(gf.cls[gf.local_of_dart.at(d)]) == r,
                       "subdrawing: faces around an isolated vertex did not merge");
            region_of_dartless[v] = r;
        } else {
            const ComponentPlacement& pl = m.placement.at(v);
            int up = pl.host == -1 ? gf.outer : gf.cls[pl.host_face];
            region_of_dartless[v] = uf.find(up);
        }
    }

    // Rebuild the nesting forest outward-in.
    std::map<int, std::pair<int, int>> region_host;  // region -> (comp, host local face)
    int outer_region = uf.find(gf.outer);
    region_host[outer_region] = {-1, -1};
    std::set<int> placed;
    std::queue<int> work;
    work.push(outer_region);
    while (!work.empty()) {
        int r = work.front();
        work.pop();
        auto [hc, hf] = region_host.at(r);
        for (auto& [c, flist] : faces_of_comp) {
            if (placed.count(c)) continue;
            for (int f : flist)
                if (region_of_face[f] == r) {
                    h.placement[c] = ComponentPlacement{hc, hf, f};
                    placed.insert(c);
                    for (int f2 : flist) {
                        if (f2 == f) continue;
                        int r2 = region_of_face[f2];
                        ensure(!region_host.count(r2),
                               "subdrawing: region enclosed by two components");
                        region_host[r2] = {c, f2};
                        work.push(r2);
                    }
                    break;
                }
        }
        for (auto& [v, rv] : region_of_dartless)
            if (rv == r && !placed.count(v)) {
                h.placement[v] = ComponentPlacement{hc, hf, -1};
                placed.insert(v);
            }
    }
    ensure(placed.size() == faces_of_comp.size() + region_of_dartless.size(),
           "subdrawing: some component was not reached from the outer region");
    return h;
}

// Mirror image: reverses every rotation and maps each face to the face made
// of the twins of its darts.
inline LabelledPlaneMultigraph reflect_drawing(const LabelledPlaneMultigraph& m) {
    LabelledPlaneMultigraph r;
    r.emb = m.emb.reflected();
    r.labels = m.labels;
    auto old_faces = m.emb.trace_faces();
    auto new_faces = r.emb.trace_faces();
    std::map<Dart, int> new_of_dart;
    for (int i = 0; i < (int)new_faces.size(); ++i)
        for (const Dart& d : new_faces[i].walk) new_of_dart[d] = i;
    std::vector<int> mirror(old_faces.size());
    for (int i = 0; i < (int)old_faces.size(); ++i) {
        Dart d0 = old_faces[i].walk.front();
        int ni = new_of_dart.at(m.emb.graph.twin(d0));
        std::set<Dart> expect, got;
        for (const Dart& d : old_faces[i].walk) expect.insert(m.emb.graph.twin(d));
        for (const Dart& d : new_faces[ni].walk) got.insert(d);
        ensure(expect == got, "reflect_drawing: face mirror mismatch");
        mirror[i] = ni;
    }
    for (const auto& [c, pl] : m.placement) {
        ComponentPlacement np = pl;
        if (np.host_face >= 0) np.host_face = mirror[np.host_face];
        if (np.own_face >= 0) np.own_face = mirror[np.own_face];
        r.placement[c] = np;
    }
    return r;
}

namespace plane_detail {

// Deterministic traversal of one component starting at a given dart; returns
// the vertex-by-vertex rotation text and each dart's emission position.
struct Traversal {
    std::string text;
    std::map<Dart, int> dart_pos;
};

inline Traversal traverse_component(const EmbeddedMultigraph& emb, const VertexLabels& labels,
                                    Dart d0) {
    Traversal t;
    std::map<int, int> vnum;
    std::map<int, int> edge_num;
    int pos = 0;
    std::queue<Dart> pending;  // darts whose far endpoint may be new
    auto visit = [&](int v, Dart entry) {
        if (vnum.count(v)) return;
        vnum[v] = (int)vnum.size();
        auto lit = labels.find(v);
        t.text += "[" + (lit == labels.end() ? std::string("_") : lit->second) + ":";
        const auto& rot = emb.rotation.at(v);
        int start = 0;
        for (int i = 0; i < (int)rot.size(); ++i)
            if (rot[i] == entry) start = i;
        for (int i = 0; i < (int)rot.size(); ++i) {
            Dart d = rot[(start + i) % rot.size()];
            if (!edge_num.count(d.edge)) edge_num[d.edge] = (int)edge_num.size();
            t.dart_pos[d] = pos++;
            t.text += " " + std::to_string(edge_num[d.edge]);
            pending.push(d);
        }
        t.text += "]";
    };
    visit(emb.graph.endpoint(d0), d0);
    while (!pending.empty()) {
        Dart d = pending.front();
        pending.pop();
        visit(emb.graph.other_endpoint(d), emb.graph.twin(d));
    }
    return t;
}

struct ForestView {
    // component -> components nested in each of its local faces, and roots
    std::map<int, ComponentPlacement> placement;  // re-derived for this rooting
    std::vector<int> roots;
};

// Re-roots the nesting structure at an arbitrary global face.
inline ForestView reroot(const LabelledPlaneMultigraph& m, const PlaneFaces& gf, int outer_cls) {
    ForestView fv;
    auto comp_of = component_ids(m.emb.graph);
    std::map<int, std::vector<int>> faces_of_comp;
    for (int i = 0; i < (int)gf.local.size(); ++i)
        faces_of_comp[gf.comp_of_local[i]].push_back(i);
    std::set<int> all_comps;
    for (auto& [v, c] : comp_of) all_comps.insert(c);
    std::map<int, std::pair<int, int>> region_host;
    region_host[outer_cls] = {-1, -1};
    std::set<int> placed;
    std::queue<int> work;
    work.push(outer_cls);
    while (!work.empty()) {
        int r = work.front();
        work.pop();
        auto [hc, hf] = region_host.at(r);
        for (auto& [c, flist] : faces_of_comp) {
            if (placed.count(c)) continue;
            for (int f : flist)
                if (gf.cls[f] == r) {
                    fv.placement[c] = ComponentPlacement{hc, hf, f};
                    placed.insert(c);
                    if (hc == -1) fv.roots.push_back(c);
                    for (int f2 : flist) {
                        if (f2 == f) continue;
                        ensure(!region_host.count(gf.cls[f2]),
                               "reroot: region enclosed by two components");
                        region_host[gf.cls[f2]] = {c, f2};
                        work.push(gf.cls[f2]);
                    }
                    break;
                }
        }
        for (int c : gf.isolated[r])
            if (!placed.count(c)) {
                fv.placement[c] = ComponentPlacement{hc, hf, -1};
                placed.insert(c);
                if (hc == -1) fv.roots.push_back(c);
            }
    }
    ensure(placed.size() == all_comps.size(), "reroot: unreachable component");
    return fv;
}

// Code of the drawing rooted at a chosen global face, with the stored
// orientation.  Children are encoded inside the face section of their host.
inline std::string rooted_code(const LabelledPlaneMultigraph& m, const PlaneFaces& gf,
                               int outer_cls) {
    if (m.emb.graph.vertices.empty()) return "(empty)";
    ForestView fv = reroot(m, gf, outer_cls);
    std::map<int, std::vector<int>> children;  // comp -> child comps
    for (const auto& [c, pl] : fv.placement)
        if (pl.host != -1) children[pl.host].push_back(c);
    std::map<int, std::vector<int>> faces_of_comp;
    for (int i = 0; i < (int)gf.local.size(); ++i)
        faces_of_comp[gf.comp_of_local[i]].push_back(i);
    auto comp_of = component_ids(m.emb.graph);

    std::map<int, std::string> memo;
    auto code_of = [&](auto&& self, int c) -> std::string {
        auto it = memo.find(c);
        if (it != memo.end()) return it->second;
        std::string best;
        if (!faces_of_comp.count(c)) {
            auto lit = m.labels.find(c);
            best = "[" + (lit == m.labels.end() ? std::string("_") : lit->second) + ":]";
            // children of a dartless component: none (it has no faces)
        } else {
            // child codes grouped by the host face they occupy
            std::map<int, std::vector<std::string>> by_face;
            for (int ch : children[c])
                by_face[fv.placement.at(ch).host_face].push_back(self(self, ch));
            for (auto& [f, v] : by_face) std::sort(v.begin(), v.end());
            int outward = fv.placement.at(c).own_face;
            // collect this component's darts
            std::vector<Dart> darts;
            for (int v : m.emb.graph.vertices)
                if (comp_of.at(v) == c)
                    for (const Dart& d : m.emb.rotation.at(v)) darts.push_back(d);
            for (const Dart& d0 : darts) {
                Traversal t = traverse_component(m.emb, m.labels, d0);
                // order faces by first-emitted dart
                std::vector<std::pair<int, int>> keyed;  // (key, face)
                for (int f : faces_of_comp.at(c)) {
                    int key = (int)t.dart_pos.size();
                    for (const Dart& d : gf.local[f].walk)
                        key = std::min(key, t.dart_pos.at(d));
                    keyed.push_back({key, f});
                }
                std::sort(keyed.begin(), keyed.end());
                std::string s = t.text + "|";
                for (auto& [key, f] : keyed) {
                    s += f == outward ? "(^" : "(";
                    if (by_face.count(f)) {
                        bool first = true;
                        for (const std::string& cc : by_face[f]) {
                            if (!first) s += ",";
                            s += cc;
                            first = false;
                        }
                    }
                    s += ")";
                }
                if (best.empty() || s < best) best = s;
            }
        }
        memo[c] = best;
        return best;
    };
    std::vector<std::string> roots;
    for (int c : fv.roots) roots.push_back(code_of(code_of, c));
    std::sort(roots.begin(), roots.end());
    std::string out = "{";
    for (int i = 0; i < (int)roots.size(); ++i) out += (i ? "," : "") + roots[i];
    return out + "}";
}

}  // namespace plane_detail

// Code of the drawing as seen from its own unbounded region, keeping the
// stored orientation.  Distinguishes drawings that differ by re-rooting or by
// reflection; cheap, and suitable as an exact-match memo key.
inline std::string rooted_plane_code(const LabelledPlaneMultigraph& m) {
    validate_drawing(m);
    PlaneFaces gf = plane_faces(m);
    return plane_detail::rooted_code(m, gf, gf.outer);
}

// Canonical code up to label-preserving homeomorphism of the sphere,
// including reflections: minimum of the rooted code over every choice of
// outer face and both orientations.
inline std::string plane_canonical_code(const LabelledPlaneMultigraph& m) {
    validate_drawing(m);
    std::string best;
    for (int pass = 0; pass < 2; ++pass) {
        LabelledPlaneMultigraph v = pass == 0 ? m : reflect_drawing(m);
        PlaneFaces gf = plane_faces(v);
        for (int cls = 0; cls < gf.count; ++cls) {
            std::string s = plane_detail::rooted_code(v, gf, cls);
            if (best.empty() || s < best) best = s;
        }
        if (m.emb.graph.vertices.empty()) break;
    }
    return best;
}

// Repeatedly smooths out unlabelled vertices of degree two whose darts belong
// to two distinct edges, preserving the drawing.  A cycle of such vertices
// collapses to a single vertex carrying a loop.
inline LabelledPlaneMultigraph suppress_drawing(LabelledPlaneMultigraph m) {
    validate_drawing(m);
    for (;;) {
        int victim = -1;
        for (int v : m.emb.graph.vertices) {
            if (m.labels.count(v)) continue;
            const auto& rot = m.emb.rotation.at(v);
            if (rot.size() == 2 && rot[0].edge != rot[1].edge) {
                victim = v;
                break;
            }
        }
        if (victim < 0) break;
        const auto rot = m.emb.rotation.at(victim);
        Dart d1 = rot[0], d2 = rot[1];
        Dart far1 = m.emb.graph.twin(d1), far2 = m.emb.graph.twin(d2);
        int a = m.emb.graph.endpoint(far1), b = m.emb.graph.endpoint(far2);
        int nid = m.emb.graph.next_edge_id();
        Dart na{nid, 0}, nb{nid, 1};

        // Face bookkeeping: the two faces flanking the suppressed vertex keep
        // their identity; any placement reference to them is re-anchored to a
        // surviving dart (or to a dart of the new edge when none survives).
        auto faces = m.emb.trace_faces();
        std::map<Dart, int> fod;
        for (int i = 0; i < (int)faces.size(); ++i)
            for (const Dart& d : faces[i].walk) fod[d] = i;
        auto anchor_of_face = [&](int fi) -> Dart {
            for (const Dart& d : faces[fi].walk)
                if (!(d == d1) && !(d == d2) && !(d == far1) && !(d == far2)) return d;
            // the whole walk dies: it was {far1,d2} -> na or {far2,d1} -> nb
            for (const Dart& d : faces[fi].walk)
                if (d == far1 || d == d2) return na;
            return nb;
        };
        struct Ref {
            int host;
            std::optional<Dart> host_anchor, own_anchor;
        };
        std::map<int, Ref> refs;
        for (const auto& [c, pl] : m.placement) {
            Ref r;
            r.host = pl.host;
            if (pl.host_face >= 0) r.host_anchor = anchor_of_face(pl.host_face);
            if (pl.own_face >= 0) r.own_anchor = anchor_of_face(pl.own_face);
            refs[c] = r;
        }
        // remap dying anchors: F(far1) contains {far1, d2}, survives as na's
        // face; F(far2) contains {far2, d1}, survives as nb's face
        auto remap = [&](Dart d) {
            if (d == far1 || d == d2) return na;
            if (d == far2 || d == d1) return nb;
            return d;
        };
        for (auto& [c, r] : refs) {
            if (r.host_anchor) r.host_anchor = remap(*r.host_anchor);
            if (r.own_anchor) r.own_anchor = remap(*r.own_anchor);
        }

        // splice the two edges into one
        m.emb.graph.add_edge_id(nid, a, b);
        auto replace_in = [&](int v, Dart from, Dart to) {
            for (Dart& d : m.emb.rotation.at(v))
                if (d == from) d = to;
        };
        replace_in(a, far1, na);
        replace_in(b, far2, nb);
        m.emb.graph.erase_edge(d1.edge);
        m.emb.graph.erase_edge(d2.edge);
        m.emb.graph.erase_vertex(victim);
        m.emb.rotation.erase(victim);

        // component ids may shift (the victim might have been the smallest)
        auto comp_of = plane_detail::component_ids(m.emb.graph);
        std::map<int, int> comp_rename;  // old comp id -> new comp id
        for (const auto& [c, r] : refs) comp_rename[c] = comp_of.at(c == victim ? a : c);
        auto new_faces = m.emb.trace_faces();
        std::map<Dart, int> nfod;
        for (int i = 0; i < (int)new_faces.size(); ++i)
            for (const Dart& d : new_faces[i].walk) nfod[d] = i;
        std::map<int, ComponentPlacement> np;
        for (const auto& [c, r] : refs) {
            ComponentPlacement pl;
            pl.host = r.host == -1 ? -1 : comp_rename.at(r.host);
            pl.host_face = r.host_anchor ? nfod.at(*r.host_anchor) : -1;
            pl.own_face = r.own_anchor ? nfod.at(*r.own_anchor) : -1;
            np[comp_rename.at(c)] = pl;
        }
        m.placement = np;
    }
    validate_drawing(m);
    return m;
}

// Label-preserving homeomorphism of drawings on the sphere (reflections
// allowed), after smoothing out unlabelled degree-two vertices.
inline bool plane_homeomorphic(const LabelledPlaneMultigraph& a, const LabelledPlaneMultigraph& b) {
    return plane_canonical_code(suppress_drawing(a)) == plane_canonical_code(suppress_drawing(b));
}

}  // namespace ccc
