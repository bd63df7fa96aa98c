#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccc/flows.hpp"
#include "ccc/pathdecomp.hpp"
#include "ccc/plane_multigraph.hpp"
#include "ccc/semigroup.hpp"
#include "ccc/util.hpp"

// Plane q-types: the finite fingerprint of how a drawn strip of a graph can
// connect and separate the ends of the paths linking its two boundaries.
//
// A labelled plane multigraph is *irreducible* when it carries no removable
// detail: every unlabelled vertex of degree at most two is an isolated vertex
// carrying a single loop, and no face of the drawing is an empty disk bounded
// by a walk of length one, or of length two along two distinct edges.  (The
// face bounded on both sides by a single edge is allowed; an empty lens
// between parallel edges is not.)
//
// The q-type of a drawing H collects, up to label-preserving sphere
// homeomorphism (reflections allowed), every irreducible drawing with at most
// q unlabelled vertices some subdivision of which appears as a subdrawing of
// H.  Concatenating strips induces a product on q-types, computed here
// empirically from one path decomposition.

namespace ccc {

inline constexpr long long kQTypeDefaultBudget = 20'000'000;

// ---------------------------------------------------------------------------
// Irreducibility

inline bool is_irreducible(const LabelledPlaneMultigraph& m) {
    validate_drawing(m);
    for (int v : m.emb.graph.vertices) {
        if (m.labels.count(v)) continue;
        if (m.emb.graph.degree(v) >= 3) continue;
        const auto& rot = m.emb.rotation.at(v);
        bool loop_vertex = rot.size() == 2 && rot[0].edge == rot[1].edge;
        if (!loop_vertex) return false;
    }
    PlaneFaces gf = plane_faces(m);
    for (int cls = 0; cls < gf.count; ++cls) {
        if (gf.members[cls].size() != 1 || !gf.isolated[cls].empty()) continue;
        const Face& f = gf.local[gf.members[cls][0]];
        if (f.size() == 1) return false;
        if (f.size() == 2 && f.walk[0].edge != f.walk[1].edge) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// QType

struct QType {
    int q = 0;
    std::set<std::string> members;        // canonical codes of realized drawings
    std::set<std::string> inconclusive;   // candidates whose search hit the budget

    bool operator==(const QType&) const = default;
};

inline std::string qtype_to_string(const QType& t) {
    std::string s;
    for (const auto& c : t.members) s += c + "\n";
    for (const auto& c : t.inconclusive) s += "? " + c + "\n";
    return s;
}

inline void write_qtype(std::ostream& out, const QType& t) { out << qtype_to_string(t); }

// ---------------------------------------------------------------------------
// Enumeration of irreducible drawings

namespace qt_detail {

struct CatEntry {
    LabelledPlaneMultigraph g;
    std::string code;
};

// Oriented code of a connected embedding; dedup key during shell generation.
// Labels are encoded by their rank in the generation's label universe.  Start
// darts are restricted to those with the least local signature, which is
// preserved by isomorphism, so the key stays canonical while only a few
// traversals run per embedding.  Vertex and edge ids are dense in generated
// shells, so renumbering uses flat arrays.
inline std::string shell_key(const EmbeddedMultigraph& emb, const VertexLabels& labels,
                             const std::map<std::string, int>& label_rank) {
    const Multigraph& g = emb.graph;
    auto rank_char = [&](int v) -> char {
        auto it = labels.find(v);
        return it == labels.end() ? '_' : (char)('a' + label_rank.at(it->second));
    };
    if (g.edge_count() == 0) return std::string("[") + rank_char(g.vertices.front()) + "]";
    std::vector<char> vrank(g.vertices.back() + 1, '_');
    std::vector<int> rotsz(g.vertices.back() + 1, 0);
    for (int v : g.vertices) {
        vrank[v] = rank_char(v);
        rotsz[v] = (int)emb.rotation.at(v).size();
    }
    using Sig = std::array<int, 5>;
    auto sig = [&](Dart d) -> Sig {
        int v = g.endpoint(d), w = g.other_endpoint(d);
        return {rotsz[v], (int)vrank[v], v == w ? 0 : 1, rotsz[w], (int)vrank[w]};
    };
    std::vector<Dart> starts;
    Sig best_sig{};
    for (int v : g.vertices)
        for (const Dart& d : emb.rotation.at(v)) {
            Sig s = sig(d);
            if (starts.empty() || s < best_sig) {
                best_sig = s;
                starts = {d};
            } else if (s == best_sig) {
                starts.push_back(d);
            }
        }
    std::vector<int> vseen(g.vertices.back() + 1), enm(g.edges.back().id + 1);
    std::vector<Dart> order;
    std::string best, text;
    for (const Dart& d0 : starts) {
        std::fill(vseen.begin(), vseen.end(), 0);
        std::fill(enm.begin(), enm.end(), -1);
        int ne = 0;
        order.clear();
        text.clear();
        auto visit = [&](int v, Dart entry) {
            if (vseen[v]) return;
            vseen[v] = 1;
            text += '[';
            text += vrank[v];
            const auto& rot = emb.rotation.at(v);
            int start = 0;
            for (int i = 0; i < (int)rot.size(); ++i)
                if (rot[i] == entry) start = i;
            for (int i = 0; i < (int)rot.size(); ++i) {
                Dart d = rot[(start + i) % rot.size()];
                if (enm[d.edge] == -1) enm[d.edge] = ne++;
                text += (char)('0' + enm[d.edge]);
                order.push_back(d);
            }
            text += ']';
        };
        visit(g.endpoint(d0), d0);
        for (size_t i = 0; i < order.size(); ++i) {
            Dart d = order[i];
            visit(g.other_endpoint(d), g.twin(d));
        }
        if (best.empty() || text < best) best = text;
    }
    return best;
}

struct Shell {
    EmbeddedMultigraph emb;  // connected, vertices 0..n-1
    VertexLabels labels;
    int unlab = 0;
    int deficit = 0;  // faces that are empty one-walks or two-walks on distinct edges
    std::string key;
};

inline int face_deficit(const EmbeddedMultigraph& emb) {
    int d = 0;
    for (const Face& f : emb.trace_faces()) {
        if (f.size() == 1) ++d;
        if (f.size() == 2 && f.walk[0].edge != f.walk[1].edge) ++d;
    }
    return d;
}

// All connected building blocks on a subset of the labels plus at most q
// unlabelled vertices, every vertex degree at most deg_cap, generated by
// breadth-first edge additions with exact-cover pruning.
inline std::vector<Shell> generate_shells(const std::vector<std::string>& labels, int q,
                                          int deg_cap, int cap_e, long long* work) {
    int total_pool = (int)labels.size() + q;
    std::map<std::string, int> label_rank;
    for (const std::string& l : labels) label_rank.emplace(l, (int)label_rank.size());
    auto spend = [&](long long units) {
        *work -= units;
        if (*work < 0)
            throw bad_input("refused: irreducible enumeration exceeds the desk-scale work budget");
    };

    auto make_shell = [&](EmbeddedMultigraph emb, VertexLabels lab, int unlab, int deficit) {
        Shell s;
        s.unlab = unlab;
        s.deficit = deficit;
        s.emb = std::move(emb);
        s.labels = std::move(lab);
        return s;  // key is computed only after the viability checks pass
    };

    auto viable = [&](const Shell& s, int edges) {
        int rem = total_pool - (int)s.emb.graph.vertex_count();
        if (edges > cap_e) return false;
        // every unlabelled vertex must end at degree >= 3 or become a
        // loop-vertex; each future edge supplies at most two incidences
        int need = 0;
        for (int v : s.emb.graph.vertices) {
            if (s.labels.count(v)) continue;
            const auto& rot = s.emb.rotation.at(v);
            int deg = (int)rot.size();
            bool loop_vertex = deg == 2 && rot[0].edge == rot[1].edge;
            if (loop_vertex) continue;
            need += deg == 0 ? 2 : std::max(0, 3 - deg);
        }
        if (need > 2 * (cap_e - edges)) return false;
        // each small face must eventually be repaired by a later edge (at
        // most one face per edge) or by a face-class join with some other
        // block -- a distinct block per repaired face, costing at least one
        // leftover vertex each
        if (s.deficit > rem + (cap_e - edges)) return false;
        return true;
    };

    std::vector<Shell> all;
    std::map<std::string, Shell> level;
    auto add_level = [&](Shell s, int edges) {
        spend(2);
        if (!viable(s, edges)) return;
        spend(6);
        s.key = shell_key(s.emb, s.labels, label_rank);
        if (level.count(s.key)) return;
        level.emplace(s.key, std::move(s));
    };

    // single-vertex bases
    for (const std::string& l : labels) {
        EmbeddedMultigraph emb;
        emb.graph.add_vertex_id(0);
        emb.rotation[0] = {};
        add_level(make_shell(std::move(emb), {{0, l}}, 0, 0), 0);
    }
    if (q >= 1) {
        EmbeddedMultigraph emb;
        emb.graph.add_vertex_id(0);
        emb.rotation[0] = {};
        add_level(make_shell(std::move(emb), {}, 1, 0), 0);
    }

    for (int e = 0; e <= cap_e && !level.empty(); ++e) {
        std::map<std::string, Shell> next;
        for (auto& [key, s] : level) all.push_back(s);
        for (auto& [key, s] : level) {
            const Multigraph& g = s.emb.graph;
            int nv = g.vertex_count();
            int nid = g.edge_count() == 0 ? 0 : g.next_edge_id();
            auto emit = [&](Shell ns) {
                spend(2);
                if (!viable(ns, e + 1)) return;
                spend(6);
                ns.key = shell_key(ns.emb, ns.labels, label_rank);
                if (!next.count(ns.key)) next.emplace(ns.key, std::move(ns));
            };
            auto degree_ok = [&](int v, int inc) {
                return (int)s.emb.rotation.at(v).size() + inc <= deg_cap;
            };
            std::vector<std::pair<std::string, bool>> vertex_choices;  // (label, is_unlab)
            for (const std::string& l : labels) {
                bool used = false;
                for (const auto& [v, lv] : s.labels) used |= lv == l;
                if (!used) vertex_choices.push_back({l, false});
            }
            if (s.unlab < q) vertex_choices.push_back({"", true});

            if (g.edge_count() == 0) {
                int w = g.vertices.front();
                if (degree_ok(w, 2)) {  // loop at a blank vertex: two one-walk faces
                    Shell ns = s;
                    ns.emb.graph.add_edge_id(nid, w, w);
                    ns.emb.rotation[w] = {Dart{nid, 0}, Dart{nid, 1}};
                    emit(make_shell(std::move(ns.emb), ns.labels, ns.unlab, 2));
                }
                if (degree_ok(w, 1))
                    for (auto& [l, isu] : vertex_choices) {  // lone edge: one walk, same edge twice
                        Shell ns = s;
                        ns.emb.graph.add_vertex_id(nv);
                        ns.emb.graph.add_edge_id(nid, w, nv);
                        ns.emb.rotation[w] = {Dart{nid, 0}};
                        ns.emb.rotation[nv] = {Dart{nid, 1}};
                        VertexLabels lab = ns.labels;
                        if (!isu) lab[nv] = l;
                        emit(make_shell(std::move(ns.emb), lab, ns.unlab + (isu ? 1 : 0), 0));
                    }
                continue;
            }

            struct Corner {
                int vertex;
                Dart after;
            };
            auto faces = s.emb.trace_faces();
            for (const Face& f : faces) {
                // the new edge lands inside this face, so only this face's
                // contribution to the deficit changes; a piece of the split
                // walk of length <= 2 always holds the fresh edge plus at
                // most one old dart, hence two distinct edges, hence small
                int flen = (int)f.size();
                int fsmall = flen == 1 || (flen == 2 && f.walk[0].edge != f.walk[1].edge) ? 1 : 0;
                std::vector<Corner> corners;
                for (const Dart& d : f.walk)
                    corners.push_back({g.other_endpoint(d), g.twin(d)});
                for (int i = 0; i < (int)corners.size(); ++i) {
                    // pendant edge from corner i to a fresh vertex: the walk
                    // grows by two darts to length >= 3
                    if (degree_ok(corners[i].vertex, 1))
                        for (auto& [l, isu] : vertex_choices) {
                            Shell ns = s;
                            int u = corners[i].vertex;
                            ns.emb.graph.add_vertex_id(nv);
                            ns.emb.graph.add_edge_id(nid, u, nv);
                            auto& rot = ns.emb.rotation.at(u);
                            auto it = std::find(rot.begin(), rot.end(), corners[i].after);
                            rot.insert(it + 1, Dart{nid, 0});
                            ns.emb.rotation[nv] = {Dart{nid, 1}};
                            VertexLabels lab = ns.labels;
                            if (!isu) lab[nv] = l;
                            emit(make_shell(std::move(ns.emb), lab, ns.unlab + (isu ? 1 : 0),
                                            s.deficit - fsmall));
                        }
                    // chord between corners i and j of the same face splits
                    // the walk into lengths (j-i)+1 and flen-(j-i)+1
                    for (int j = i; j < (int)corners.size(); ++j) {
                        int u = corners[i].vertex, v = corners[j].vertex;
                        if (u == v && !degree_ok(u, 2)) continue;
                        if (u != v && (!degree_ok(u, 1) || !degree_ok(v, 1))) continue;
                        int a = (j - i) + 1, b = flen - (j - i) + 1;
                        int ndef = s.deficit - fsmall + (a <= 2 ? 1 : 0) + (b <= 2 ? 1 : 0);
                        int variants = i == j ? 2 : 1;
                        for (int var = 0; var < variants; ++var) {
                            Shell ns = s;
                            ns.emb.graph.add_edge_id(nid, u, v);
                            auto& rotu = ns.emb.rotation.at(u);
                            if (i == j) {
                                auto it = std::find(rotu.begin(), rotu.end(), corners[i].after);
                                if (var == 0)
                                    rotu.insert(it + 1, {Dart{nid, 0}, Dart{nid, 1}});
                                else
                                    rotu.insert(it + 1, {Dart{nid, 1}, Dart{nid, 0}});
                            } else {
                                auto it = std::find(rotu.begin(), rotu.end(), corners[i].after);
                                rotu.insert(it + 1, Dart{nid, 0});
                                auto& rotv = ns.emb.rotation.at(v);
                                auto jt = std::find(rotv.begin(), rotv.end(), corners[j].after);
                                rotv.insert(jt + 1, Dart{nid, 1});
                            }
                            emit(make_shell(std::move(ns.emb), ns.labels, ns.unlab, ndef));
                        }
                    }
                }
            }
        }
        level = std::move(next);
    }

    // keep only shells that can appear in an irreducible drawing
    std::vector<Shell> out;
    for (Shell& s : all) {
        bool ok = true;
        for (int v : s.emb.graph.vertices) {
            if (s.labels.count(v)) continue;
            if (s.emb.graph.degree(v) >= 3) continue;
            const auto& rot = s.emb.rotation.at(v);
            if (!(rot.size() == 2 && rot[0].edge == rot[1].edge)) ok = false;
        }
        if (ok) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Shell& a, const Shell& b) { return a.key < b.key; });
    return out;
}

// Every irreducible drawing labelled from a subset of `labels` with at most q
// unlabelled vertices and maximum degree at most deg_cap.  Cached; results
// are sorted by canonical code.
inline const std::vector<CatEntry>& irreducible_catalog(const std::set<std::string>& labelset,
                                                        int q, int deg_cap) {
    require(q >= 0 && q <= 2, "refused: more than two unlabelled vertices is above desk scale");
    require((int)labelset.size() <= 6, "refused: more than six labels is above desk scale");
    int cap_e = std::max(1, 3 * ((int)labelset.size() + q) - 3);
    deg_cap = std::max(0, std::min(deg_cap, 2 * cap_e));

    std::string cache_key = std::to_string(q) + "/" + std::to_string(deg_cap);
    for (const std::string& l : labelset) cache_key += "|" + l;
    static std::map<std::string, std::vector<CatEntry>> cache;
    auto hit = cache.find(cache_key);
    if (hit != cache.end()) return hit->second;

    long long work = 60'000'000;
    std::vector<std::string> labels(labelset.begin(), labelset.end());
    std::vector<Shell> shells = generate_shells(labels, q, deg_cap, cap_e, &work);

    std::map<std::string, LabelledPlaneMultigraph> results;
    {
        LabelledPlaneMultigraph empty;
        results[plane_canonical_code(empty)] = empty;
    }

    // assemble multisets of shells with disjoint labels into full drawings
    std::vector<int> chosen;
    int defsum = 0;
    auto assemble = [&]() {
        int k = (int)chosen.size();
        // nesting k blocks takes exactly k-1 attachment events; every face
        // class that repairs small faces consumes at least one event, and a
        // class built from j events holds at most j+1 walks, so at most
        // 2(k-1) small faces can be repaired in total
        if (defsum > 2 * (k - 1)) return;
        work -= 16;
        if (work < 0)
            throw bad_input("refused: irreducible enumeration exceeds the desk-scale work budget");

        LabelledPlaneMultigraph m;
        std::vector<int> base(k), nfaces(k);
        {
            int voff = 0, eoff = 0;
            for (int ci = 0; ci < k; ++ci) {
                const Shell& s = shells[chosen[ci]];
                base[ci] = voff;
                for (int v : s.emb.graph.vertices) {
                    m.emb.graph.add_vertex_id(voff + v);
                    std::vector<Dart> rot;
                    for (const Dart& d : s.emb.rotation.at(v))
                        rot.push_back(Dart{eoff + d.edge, d.end});
                    m.emb.rotation[voff + v] = rot;
                }
                for (const Multigraph::Edge& e : s.emb.graph.edges)
                    m.emb.graph.add_edge_id(eoff + e.id, base[ci] + e.u, base[ci] + e.v);
                for (const auto& [v, l] : s.labels) m.labels[voff + v] = l;
                voff += s.emb.graph.vertex_count();
                eoff += s.emb.graph.edge_count();
            }
        }
        auto faces = m.emb.trace_faces();
        std::map<int, std::vector<int>> faces_of_comp;  // component index -> local faces
        {
            auto comp_of = plane_detail::component_ids(m.emb.graph);
            std::map<int, int> ci_of_base;
            for (int ci = 0; ci < k; ++ci) ci_of_base[base[ci]] = ci;
            for (int fi = 0; fi < (int)faces.size(); ++fi)
                faces_of_comp[ci_of_base.at(comp_of.at(m.emb.graph.endpoint(faces[fi].walk.front())))]
                    .push_back(fi);
            for (int ci = 0; ci < k; ++ci) nfaces[ci] = (int)faces_of_comp[ci].size();
        }

        // hosts must separate the sphere: only components with >= 2 faces
        std::vector<ComponentPlacement> pl(k);
        auto place = [&](auto&& self, int ci) -> void {
            work -= 4;
            if (work < 0)
                throw bad_input(
                    "refused: irreducible enumeration exceeds the desk-scale work budget");
            if (ci == k) {
                // acyclic host chains
                for (int i = 0; i < k; ++i) {
                    std::set<int> chain{i};
                    int cur = pl[i].host;
                    while (cur != -1) {
                        if (!chain.insert(cur).second) return;
                        cur = pl[cur].host;
                    }
                }
                LabelledPlaneMultigraph cand = m;
                for (int i = 0; i < k; ++i) {
                    ComponentPlacement p = pl[i];
                    if (p.host != -1) p.host = base[p.host];
                    cand.placement[base[i]] = p;
                }
                if (!is_irreducible(cand)) return;
                std::string code = plane_canonical_code(cand);
                if (!results.count(code)) results.emplace(code, std::move(cand));
                return;
            }
            std::vector<int> own_choices;
            if (nfaces[ci] == 0)
                own_choices.push_back(-1);
            else if (ci == 0)
                own_choices.push_back(faces_of_comp[ci].front());
            else
                own_choices = faces_of_comp[ci];
            for (int own : own_choices) {
                if (ci == 0) {  // first component may always be drawn outermost
                    pl[ci] = ComponentPlacement{-1, -1, own};
                    self(self, ci + 1);
                    continue;
                }
                pl[ci] = ComponentPlacement{-1, -1, own};
                self(self, ci + 1);
                for (int cj = 0; cj < k; ++cj) {
                    if (cj == ci || nfaces[cj] < 2) continue;
                    for (int hf : faces_of_comp[cj]) {
                        pl[ci] = ComponentPlacement{cj, hf, own};
                        self(self, ci + 1);
                    }
                }
            }
        };
        place(place, 0);
    };

    int total_pool = (int)labelset.size() + q;
    std::set<std::string> used;
    int verts_used = 0, unlab_used = 0;
    auto rec = [&](auto&& self, size_t start) -> void {
        if (!chosen.empty()) assemble();
        for (size_t j = start; j < shells.size(); ++j) {
            const Shell& s = shells[j];
            if (unlab_used + s.unlab > q) continue;
            bool clash = false;
            for (const auto& [v, l] : s.labels)
                if (used.count(l)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            int nv = (int)s.emb.graph.vertex_count();
            // with this block added, at most one further block fits per
            // leftover vertex, and k blocks repair at most 2(k-1) small faces
            int kmax = (int)chosen.size() + 1 + (total_pool - verts_used - nv);
            if (defsum + s.deficit > 2 * (kmax - 1)) continue;
            chosen.push_back((int)j);
            for (const auto& [v, l] : s.labels) used.insert(l);
            verts_used += nv;
            unlab_used += s.unlab;
            defsum += s.deficit;
            // a fully unlabelled block may repeat; labelled ones may not
            self(self, s.labels.empty() ? j : j + 1);
            defsum -= s.deficit;
            unlab_used -= s.unlab;
            verts_used -= nv;
            for (const auto& [v, l] : s.labels) used.erase(l);
            chosen.pop_back();
        }
    };
    rec(rec, 0);

    std::vector<CatEntry> entries;
    for (auto& [code, g] : results) entries.push_back(CatEntry{std::move(g), code});
    auto [it, inserted] = cache.emplace(cache_key, std::move(entries));
    ensure(inserted, "catalog cache collision");
    return it->second;
}

}  // namespace qt_detail

// All irreducible drawings over the given label set with at most q unlabelled
// vertices, as sorted canonical codes.  Enumeration is by exhausting every
// way of drawing one more edge onto smaller drawings, with pruning that only
// discards states provably unable to reach an irreducible drawing.
inline std::vector<std::string> enumerate_irreducible(const std::set<std::string>& labels, int q) {
    int cap_e = std::max(1, 3 * ((int)labels.size() + q) - 3);
    const auto& cat = qt_detail::irreducible_catalog(labels, q, 2 * cap_e);
    std::vector<std::string> out;
    for (const auto& e : cat) out.push_back(e.code);
    return out;
}

// ---------------------------------------------------------------------------
// Membership: does a subdivision of the candidate appear as a subdrawing?

namespace qt_detail {

struct BudgetHit {};

struct HostView {
    const LabelledPlaneMultigraph* h = nullptr;
    std::vector<int> verts;
    std::map<int, int> idx;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour index, edge id)
    std::map<std::string, int> by_label;                // label -> vertex index
    std::vector<bool> unlabelled;
    std::vector<int> deg;
    std::map<int, int> edge_idx;  // edge id -> dense index
    int max_unlab_deg = 0;
};

inline HostView make_host_view(const LabelledPlaneMultigraph& h) {
    HostView hv;
    hv.h = &h;
    hv.verts = h.emb.graph.vertices;
    std::sort(hv.verts.begin(), hv.verts.end());
    for (int i = 0; i < (int)hv.verts.size(); ++i) hv.idx[hv.verts[i]] = i;
    hv.adj.resize(hv.verts.size());
    hv.unlabelled.assign(hv.verts.size(), true);
    hv.deg.assign(hv.verts.size(), 0);
    for (const auto& [v, l] : h.labels) {
        hv.by_label[l] = hv.idx.at(v);
        hv.unlabelled[hv.idx.at(v)] = false;
    }
    for (const Multigraph::Edge& e : h.emb.graph.edges) {
        int u = hv.idx.at(e.u), v = hv.idx.at(e.v);
        hv.adj[u].push_back({v, e.id});
        if (u != v) hv.adj[v].push_back({u, e.id});
        hv.deg[u] += u == v ? 2 : 1;
        if (u != v) hv.deg[v] += 1;
        int di = (int)hv.edge_idx.size();
        hv.edge_idx[e.id] = di;
    }
    for (auto& a : hv.adj) std::sort(a.begin(), a.end());
    for (int i = 0; i < (int)hv.verts.size(); ++i)
        if (hv.unlabelled[i]) hv.max_unlab_deg = std::max(hv.max_unlab_deg, hv.deg[i]);
    return hv;
}

struct Matcher {
    const CatEntry& cand;
    const HostView& hv;
    long long* budget;

    std::vector<int> mverts;                 // candidate vertices, sorted
    std::map<int, int> img;                  // candidate vertex -> host index
    std::vector<std::tuple<int, int, int>> medges;  // (u, v, id)
    std::vector<bool> vused, eused;
    std::vector<int> used_edge_ids;

    Matcher(const CatEntry& c, const HostView& h, long long* b) : cand(c), hv(h), budget(b) {
        mverts = c.g.emb.graph.vertices;
        std::sort(mverts.begin(), mverts.end());
        for (const Multigraph::Edge& e : c.g.emb.graph.edges) medges.push_back({e.u, e.v, e.id});
        // route the most anchored edges first: both endpoints labelled, then
        // one, then none; deterministic within a group
        auto anchors = [&](const std::tuple<int, int, int>& t) {
            return (c.g.labels.count(std::get<0>(t)) ? 0 : 1) +
                   (c.g.labels.count(std::get<1>(t)) ? 0 : 1);
        };
        std::sort(medges.begin(), medges.end(), [&](const auto& x, const auto& y) {
            return std::make_pair(anchors(x), std::get<2>(x)) <
                   std::make_pair(anchors(y), std::get<2>(y));
        });
        vused.assign(hv.verts.size(), false);
        eused.assign(hv.edge_idx.size(), false);
    }

    void spend(long long units) {
        *budget -= units;
        if (*budget < 0) throw BudgetHit{};
    }

    bool final_check() {
        spend(400);
        std::set<int> vs, es;
        for (const auto& [mv, hi] : img) vs.insert(hv.verts[hi]);
        for (int id : used_edge_ids) {
            es.insert(id);
            // path interiors are already in vused; recover vertices from edges
        }
        for (const Multigraph::Edge& e : hv.h->emb.graph.edges)
            if (es.count(e.id)) {
                vs.insert(e.u);
                vs.insert(e.v);
            }
        LabelledPlaneMultigraph sub = subdrawing(*hv.h, vs, es);
        LabelledPlaneMultigraph red = suppress_drawing(std::move(sub));
        return plane_canonical_code(red) == cand.code;
    }

    // Can t be reached from s along unused edges whose interior vertices are
    // unused and unlabelled?  For s == t, settle for one unused incident edge
    // (a cycle needs at least that much).
    bool reachable(int s, int t) {
        spend(1 + (long long)hv.verts.size() / 4);
        if (s == t) {
            for (const auto& [nb, eid] : hv.adj[s])
                if (!eused[hv.edge_idx.at(eid)]) return true;
            return false;
        }
        std::vector<bool> seen(hv.verts.size(), false);
        std::vector<int> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            int cur = queue.back();
            queue.pop_back();
            for (const auto& [nb, eid] : hv.adj[cur]) {
                if (eused[hv.edge_idx.at(eid)] || seen[nb]) continue;
                if (nb == t) return true;
                if (!vused[nb] && hv.unlabelled[nb]) {
                    seen[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        return false;
    }

    // Every edge not yet fully routed must still be completable.
    bool frontier_ok(int cur, int b, size_t k) {
        if (!reachable(cur, b)) return false;
        for (size_t j = k + 1; j < medges.size(); ++j)
            if (!reachable(img.at(std::get<0>(medges[j])), img.at(std::get<1>(medges[j]))))
                return false;
        return true;
    }

    bool route(size_t k) {
        if (k == medges.size()) return final_check();
        auto [mu, mv, mid] = medges[k];
        int a = img.at(mu), b = img.at(mv);
        return extend(a, a, b, k);
    }

    bool extend(int cur, int a, int b, size_t k) {
        spend(1);
        if (!frontier_ok(cur, b, k)) return false;
        for (const auto& [nb, eid] : hv.adj[cur]) {
            int ei = hv.edge_idx.at(eid);
            if (eused[ei]) continue;
            if (nb == b) {
                eused[ei] = true;
                used_edge_ids.push_back(eid);
                if (route(k + 1)) return true;
                used_edge_ids.pop_back();
                eused[ei] = false;
            }
            if (nb != b && !vused[nb] && hv.unlabelled[nb]) {
                eused[ei] = true;
                vused[nb] = true;
                used_edge_ids.push_back(eid);
                if (extend(nb, a, b, k)) return true;
                used_edge_ids.pop_back();
                vused[nb] = false;
                eused[ei] = false;
            }
        }
        return false;
    }

    bool assign(std::vector<int>::const_iterator it, std::vector<int>::const_iterator end) {
        if (it == end) return route(0);
        spend(1);
        int mv = *it;
        int need = cand.g.emb.graph.degree(mv);
        for (int hi = 0; hi < (int)hv.verts.size(); ++hi) {
            if (!hv.unlabelled[hi] || vused[hi] || hv.deg[hi] < need) continue;
            img[mv] = hi;
            vused[hi] = true;
            if (assign(it + 1, end)) return true;
            vused[hi] = false;
            img.erase(mv);
        }
        return false;
    }

    bool run() {
        if (cand.g.emb.graph.edge_count() > (int)eused.size()) return false;
        if (cand.g.emb.graph.vertex_count() > (int)hv.verts.size()) return false;
        std::vector<int> unassigned;
        for (int mv : mverts) {
            auto lit = cand.g.labels.find(mv);
            if (lit != cand.g.labels.end()) {
                auto hit = hv.by_label.find(lit->second);
                if (hit == hv.by_label.end()) return false;
                if (cand.g.emb.graph.degree(mv) > hv.deg[hit->second]) return false;
                img[mv] = hit->second;
                vused[hit->second] = true;
            } else {
                if (cand.g.emb.graph.degree(mv) > hv.max_unlab_deg) return false;
                unassigned.push_back(mv);
            }
        }
        return assign(unassigned.begin(), unassigned.end());
    }
};

}  // namespace qt_detail

// The q-type of a drawing: all irreducible drawings on at most q unlabelled
// vertices realized, up to subdivision, as subdrawings.  Candidates whose
// search exhausts the work budget are reported as inconclusive, never
// silently dropped.
inline QType compute_qtype(const LabelledPlaneMultigraph& h, int q,
                           long long budget = kQTypeDefaultBudget) {
    validate_drawing(h);
    std::set<std::string> labelset;
    for (const auto& [v, l] : h.labels) labelset.insert(l);
    int deg_cap = 0;
    for (int v : h.emb.graph.vertices) deg_cap = std::max(deg_cap, h.emb.graph.degree(v));
    const auto& cat = qt_detail::irreducible_catalog(labelset, q, deg_cap);
    qt_detail::HostView hv = qt_detail::make_host_view(h);
    QType out;
    out.q = q;
    for (const auto& entry : cat) {
        long long b = budget;
        try {
            qt_detail::Matcher m(entry, hv, &b);
            if (m.run()) out.members.insert(entry.code);
        } catch (const qt_detail::BudgetHit&) {
            out.inconclusive.insert(entry.code);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interval q-types of a linked path decomposition

namespace qt_detail {

inline void require_same_graph(const Multigraph& a, const Multigraph& b, const char* what) {
    auto va = a.vertices, vb = b.vertices;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    require(va == vb, std::string(what) + ": vertex sets differ");
    auto key = [](const Multigraph& g) {
        std::vector<std::tuple<int, int, int>> t;
        for (const Multigraph::Edge& e : g.edges) t.push_back({e.id, std::min(e.u, e.v), std::max(e.u, e.v)});
        std::sort(t.begin(), t.end());
        return t;
    };
    require(key(a) == key(b), std::string(what) + ": edge sets differ");
}

inline std::vector<std::vector<int>> linking_paths(const PathDecomposition& d, int p) {
    if (p == 0) return {};
    auto from = d.right_set(0);
    auto to = d.left_set(d.order() - 1);
    PathFamily fam = max_vertex_disjoint_paths(d.host, {from.begin(), from.end()},
                                               {to.begin(), to.end()});
    ensure((int)fam.paths.size() == p, "linking path family size differs from the cut size");
    std::sort(fam.paths.begin(), fam.paths.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return fam.paths;
}

// The drawing induced on bags[from..to] with boundary labels: where linking
// path i crosses the left cut gets l_i, the right cut r_i, or c_i when both
// crossings coincide.
inline LabelledPlaneMultigraph interval_drawing(const LabelledPlaneMultigraph& g,
                                                const PathDecomposition& d,
                                                const std::vector<std::vector<int>>& paths,
                                                int from, int to) {
    std::set<int> vs;
    for (int i = from; i <= to; ++i) vs.insert(d.bags[i].begin(), d.bags[i].end());
    std::set<int> es;
    for (const Multigraph::Edge& e : g.emb.graph.edges)
        if (vs.count(e.u) && vs.count(e.v)) es.insert(e.id);
    LabelledPlaneMultigraph h = subdrawing(g, vs, es);
    std::set<int> left = d.left_set(from), right = d.right_set(to);
    for (int i = 0; i < (int)paths.size(); ++i) {
        int u = -1, v = -1;
        for (int x : paths[i]) {
            if (left.count(x)) {
                ensure(u < 0, "linking path meets the left cut more than once");
                u = x;
            }
            if (right.count(x)) {
                ensure(v < 0, "linking path meets the right cut more than once");
                v = x;
            }
        }
        ensure(u >= 0 && v >= 0, "linking path misses a cut");
        std::string tag = std::to_string(i + 1);
        if (u == v) {
            h.labels[u] = "c" + tag;
        } else {
            h.labels[u] = "l" + tag;
            h.labels[v] = "r" + tag;
        }
    }
    return h;
}

struct IntervalContext {
    int p = 0;
    std::vector<std::vector<int>> paths;
};

inline IntervalContext interval_context(const LabelledPlaneMultigraph& g,
                                        const PathDecomposition& d) {
    validate_drawing(g);
    require(g.labels.empty(), "host drawing must be unlabelled");
    require_same_graph(g.emb.graph, d.host, "drawing vs decomposition");
    DecompositionMetrics m = validate(d);
    require(m.linked_p.has_value(), "decomposition must be linked (uniform cuts joined by disjoint paths)");
    require(d.order() >= 3, "decomposition needs interior nodes");
    IntervalContext ctx;
    ctx.p = *m.linked_p;
    ctx.paths = linking_paths(d, ctx.p);
    return ctx;
}

}  // namespace qt_detail

// q-type of the strip bags[from..to]; the interval must avoid the end nodes.
inline QType subpath_qtype(const LabelledPlaneMultigraph& g, const PathDecomposition& d, int from,
                           int to, int q, long long budget = kQTypeDefaultBudget) {
    require(from >= 1 && from <= to && to <= d.order() - 2,
            "interval must lie strictly between the end nodes");
    qt_detail::IntervalContext ctx = qt_detail::interval_context(g, d);
    return compute_qtype(qt_detail::interval_drawing(g, d, ctx.paths, from, to), q, budget);
}

// ---------------------------------------------------------------------------
// The empirical q-type semigroup of one decomposition

// Element ids 0..types-1 name the q-types realized by interior intervals;
// the extra element epsilon() stands for "never realized" and absorbs every
// product.  table[a][b] is filled from every adjacent interval pair; a
// conflict would mean concatenation does not determine the q-type and raises
// a structural error.
struct QTypeSemigroup {
    std::vector<QType> types;
    std::vector<std::vector<int>> table = {{0}};
    std::vector<std::vector<std::pair<int, int>>> witnesses;  // per element: intervals
    std::vector<int> node_type;                               // per interior node

    int epsilon() const { return (int)types.size(); }
    int order() const { return (int)types.size() + 1; }

    FiniteSemigroup finite() const {
        std::vector<int> flat;
        flat.reserve((size_t)order() * order());
        for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
        try {
            return FiniteSemigroup(order(), std::move(flat));
        } catch (const bad_input& e) {
            throw structural_error(
                std::string("interval q-type table is not associative beyond its witnessed "
                            "products: ") +
                e.what());
        }
    }
};

inline QTypeSemigroup build_qtype_semigroup(const LabelledPlaneMultigraph& g,
                                            const PathDecomposition& d, int q,
                                            long long budget = kQTypeDefaultBudget) {
    qt_detail::IntervalContext ctx = qt_detail::interval_context(g, d);
    int m = d.order() - 2;

    // q-type of every interior interval, memoized on the exact rooted drawing
    // (translated copies of a strip share one computation)
    std::vector<std::vector<int>> t(m, std::vector<int>(m, -1));
    std::vector<QType> found;
    std::map<std::string, int> by_drawing;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            LabelledPlaneMultigraph h =
                qt_detail::interval_drawing(g, d, ctx.paths, i + 1, j + 1);
            std::string key = rooted_plane_code(h);
            auto it = by_drawing.find(key);
            if (it == by_drawing.end()) {
                QType qt = compute_qtype(h, q, budget);
                if (!qt.inconclusive.empty())
                    throw structural_error(
                        "interval q-type computation hit the work budget; raise it");
                found.push_back(std::move(qt));
                it = by_drawing.emplace(key, (int)found.size() - 1).first;
            }
            t[i][j] = it->second;
        }

    // deterministic element ids: sort distinct q-types by their serialization
    std::vector<std::string> keys;
    std::map<std::string, int> id_of;
    std::vector<QType> distinct;
    for (const QType& qt : found) {
        std::string s = qtype_to_string(qt);
        if (!id_of.count(s)) {
            id_of[s] = 0;
            keys.push_back(s);
        }
    }
    std::sort(keys.begin(), keys.end());
    for (int i = 0; i < (int)keys.size(); ++i) id_of[keys[i]] = i;
    distinct.resize(keys.size());
    for (const QType& qt : found) distinct[id_of.at(qtype_to_string(qt))] = qt;
    auto elem = [&](int fi) { return id_of.at(qtype_to_string(found[fi])); };

    QTypeSemigroup sg;
    sg.types = std::move(distinct);
    int n = sg.order();
    int eps = sg.epsilon();
    sg.table.assign(n, std::vector<int>(n, eps));
    sg.witnesses.assign(sg.types.size(), {});
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) sg.witnesses[elem(t[i][j])].push_back({i + 1, j + 1});
    for (int i = 0; i < m; ++i) sg.node_type.push_back(elem(t[i][i]));

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = i; k < j; ++k) {
                int a = elem(t[i][k]), b = elem(t[k + 1][j]), ab = elem(t[i][j]);
                int& cell = sg.table[a][b];
                if (cell == eps)
                    cell = ab;
                else if (cell != ab)
                    throw structural_error(
                        "interval q-types do not multiply consistently: the product of " +
                        std::to_string(a) + " and " + std::to_string(b) +
                        " is realized with two different values");
            }

    // associativity on every represented triple
    for (int i = 0; i < m; ++i)
        for (int a = i; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int j = b + 1; j < m; ++j) {
                    int t1 = elem(t[i][a]), t2 = elem(t[a + 1][b]), t3 = elem(t[b + 1][j]);
                    int whole = elem(t[i][j]);
                    ensure(sg.table[sg.table[t1][t2]][t3] == whole,
                           "represented triple fails left association");
                    ensure(sg.table[t1][sg.table[t2][t3]] == whole,
                           "represented triple fails right association");
                }
    return sg;
}

// ---------------------------------------------------------------------------
// Uniformization: coarsen a decomposition until every interior node carries
// one shared idempotent q-type.

struct UniformDecomposition {
    int width = -1;  // interior width of the output
    int p = 0;
    PathDecomposition dec;
    QTypeSemigroup sg;       // over the linked refinement
    int type_element = -1;   // shared idempotent element id, -1 when below threshold
    QType type;              // its q-type when type_element >= 0
    bool below_threshold = false;
};

// f sets the demanded size at each stage: the linked refinement must reach
// order f(interior width) and the run splitting must produce at least f(run
// length) runs.  Shortfalls flag below_threshold and return the best piece.
inline UniformDecomposition uniformize_decomposition(const LabelledPlaneMultigraph& g,
                                                     const PathDecomposition& d, int q,
                                                     const std::function<int(int)>& f,
                                                     long long budget = kQTypeDefaultBudget) {
    validate_drawing(g);
    require(g.labels.empty(), "host drawing must be unlabelled");
    qt_detail::require_same_graph(g.emb.graph, d.host, "drawing vs decomposition");

    LinkedRefinement lr = refine_to_linked(d, f);
    UniformDecomposition out;
    out.p = lr.p;
    out.below_threshold = lr.below_threshold;

    std::set<int> vs(lr.dec.host.vertices.begin(), lr.dec.host.vertices.end());
    std::set<int> es;
    for (const Multigraph::Edge& e : lr.dec.host.edges) es.insert(e.id);
    LabelledPlaneMultigraph sub = subdrawing(g, vs, es);

    if (lr.dec.order() < 3) {
        out.dec = lr.dec;
        out.width = validate(out.dec).interior_width;
        out.below_threshold = true;
        return out;
    }

    out.sg = build_qtype_semigroup(sub, lr.dec, q, budget);
    FiniteSemigroup a = out.sg.finite();
    IdempotentRuns runs = split_idempotent_runs(a, out.sg.node_type, f);
    out.below_threshold = out.below_threshold || runs.below_threshold;
    if (!runs.idempotent.has_value() || runs.m() == 0) {
        out.dec = lr.dec;
        out.width = validate(out.dec).interior_width;
        out.below_threshold = true;
        return out;
    }

    int n = lr.dec.order();
    std::set<int> merge;
    int prefix = (int)runs.prefix.size();
    for (int x = 1; x <= prefix; ++x) merge.insert(x);
    int pos = prefix;
    for (const auto& run : runs.runs) {
        for (int x = pos + 2; x <= pos + (int)run.size(); ++x) merge.insert(x);
        pos += (int)run.size();
    }
    for (int x = pos + 2; x <= n - 1; ++x) merge.insert(x);
    out.dec = coarsen(lr.dec, merge);
    ensure(out.dec.order() == runs.m() + 2, "coarsening produced an unexpected order");

    int e = *runs.idempotent;
    ensure(e < (int)out.sg.types.size(), "run idempotent is the unrealized element");
    ensure(out.sg.table[e][e] == e, "selected element is not idempotent");
    for (int x = 1; x + 1 < out.dec.order(); ++x) {
        QType tx = subpath_qtype(sub, out.dec, x, x, q, budget);
        ensure(tx == out.sg.types[e], "recomputed node q-type differs from the shared idempotent");
    }
    out.type_element = e;
    out.type = out.sg.types[e];
    out.width = validate(out.dec).interior_width;
    return out;
}

}  // namespace ccc
