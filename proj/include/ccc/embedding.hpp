#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ccc/multigraph.hpp"

namespace ccc {

// A face boundary walk. Each dart is traversed tail -> head; the walk is
// cyclic and normalized to start at its lexicographically least dart.
struct Face {
    std::vector<Dart> walk;

    int size() const { return (int)walk.size(); }

    // (vertex-id, edge-id) pairs along the walk.
    std::vector<std::pair<int, int>> pairs(const Multigraph& g) const {
        std::vector<std::pair<int, int>> out;
        out.reserve(walk.size());
        for (const Dart& d : walk) out.push_back({g.endpoint(d), d.edge});
        return out;
    }
};

// Rotation system: for every vertex the cyclic order of incident darts. A
// connected rotation system describes an embedding in the sphere; tracing
// faces and checking V - E + F = 2 certifies planarity of the embedding.
struct EmbeddedMultigraph {
    Multigraph graph;
    std::map<int, std::vector<Dart>> rotation;
    std::optional<int> outer_face;  // index into trace_faces() order

    EmbeddedMultigraph() = default;
    explicit EmbeddedMultigraph(Multigraph g) : graph(std::move(g)) {
        for (int v : graph.vertices) rotation[v] = graph.darts_at(v);
    }

    // The rotation lists must partition the dart set.
    void validate() const {
        require((int)rotation.size() == graph.vertex_count(), "rotation size mismatch");
        for (int v : graph.vertices) {
            auto it = rotation.find(v);
            require(it != rotation.end(), "missing rotation for vertex");
            std::vector<Dart> expect = graph.darts_at(v);
            std::vector<Dart> got = it->second;
            std::sort(expect.begin(), expect.end());
            std::sort(got.begin(), got.end());
            require(expect == got, "rotation darts do not match incident darts");
        }
    }

    // Position of each dart within its rotation list.
    std::map<Dart, std::pair<int, int>> dart_index() const {
        std::map<Dart, std::pair<int, int>> idx;
        for (const auto& [v, rot] : rotation)
            for (int i = 0; i < (int)rot.size(); ++i) idx[rot[i]] = {v, i};
        return idx;
    }

    Dart rot_next(const Dart& d, const std::map<Dart, std::pair<int, int>>& idx) const {
        auto [v, i] = idx.at(d);
        const auto& rot = rotation.at(v);
        return rot[(i + 1) % rot.size()];
    }

    Dart rot_prev(const Dart& d, const std::map<Dart, std::pair<int, int>>& idx) const {
        auto [v, i] = idx.at(d);
        const auto& rot = rotation.at(v);
        return rot[(i + rot.size() - 1) % rot.size()];
    }

    // Successor of d in its face walk: advance across the edge, then step to
    // the next dart in rotation at the head.
    Dart face_next(const Dart& d, const std::map<Dart, std::pair<int, int>>& idx) const {
        return rot_next(Multigraph::twin(d), idx);
    }

    // Traces all faces; each dart occurs in exactly one walk. Deterministic:
    // walks start at their least dart and faces are sorted by starting dart.
    std::vector<Face> trace_faces() const {
        auto idx = dart_index();
        std::map<Dart, bool> used;
        std::vector<Face> faces;
        std::vector<Dart> all;
        for (const auto& [v, rot] : rotation)
            for (const Dart& d : rot) all.push_back(d);
        std::sort(all.begin(), all.end());
        for (const Dart& start : all) {
            if (used[start]) continue;
            Face f;
            Dart d = start;
            do {
                used[d] = true;
                f.walk.push_back(d);
                d = face_next(d, idx);
            } while (!(d == start));
            faces.push_back(std::move(f));
        }
        return faces;
    }

    // Face index containing each dart, aligned with trace_faces() order.
    std::map<Dart, int> face_of_dart() const {
        std::vector<Face> faces = trace_faces();
        std::map<Dart, int> out;
        for (int i = 0; i < (int)faces.size(); ++i)
            for (const Dart& d : faces[i].walk) out[d] = i;
        return out;
    }

    // True iff every connected component satisfies V - E + F = 2 under this
    // rotation system, i.e. the embedding is planar (spherical).
    bool is_plane() const {
        auto comps = graph.components();
        if (comps.empty()) return true;
        // Trace faces once; assign each face to the component of its darts.
        std::map<int, int> comp_of_vertex;
        for (int ci = 0; ci < (int)comps.size(); ++ci)
            for (int v : comps[ci]) comp_of_vertex[v] = ci;
        std::vector<int> fcount(comps.size(), 0), ecount(comps.size(), 0);
        for (const Face& f : trace_faces()) {
            if (f.walk.empty()) continue;
            ++fcount[comp_of_vertex.at(graph.endpoint(f.walk.front()))];
        }
        for (const auto& e : graph.edges) ++ecount[comp_of_vertex.at(e.u)];
        for (int ci = 0; ci < (int)comps.size(); ++ci) {
            int v = (int)comps[ci].size();
            int e = ecount[ci];
            int f = fcount[ci];
            if (v == 1 && e == 0) f = 1;  // isolated vertex bounds one face
            if (v - e + f != 2) return false;
        }
        return true;
    }

    // Mirror image: reverses every rotation list.
    EmbeddedMultigraph reflected() const {
        EmbeddedMultigraph r = *this;
        for (auto& [v, rot] : r.rotation) std::reverse(rot.begin(), rot.end());
        return r;
    }
};

}  // namespace ccc
