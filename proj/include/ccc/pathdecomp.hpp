#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccc/flows.hpp"
#include "ccc/io.hpp"
#include "ccc/multigraph.hpp"

namespace ccc {

// Sequence of bags over a fixed host graph. Node x_i is index i; the host
// travels with the decomposition so every operation is self-contained.
struct PathDecomposition {
    Multigraph host;
    std::vector<std::set<int>> bags;

    int order() const { return (int)bags.size(); }

    // Intersection with the preceding bag (empty for the first node).
    std::set<int> left_set(int i) const {
        std::set<int> out;
        if (i <= 0 || i >= order()) return out;
        std::set_intersection(bags[i - 1].begin(), bags[i - 1].end(), bags[i].begin(),
                              bags[i].end(), std::inserter(out, out.begin()));
        return out;
    }

    // Intersection with the following bag (empty for the last node).
    std::set<int> right_set(int i) const {
        std::set<int> out;
        if (i < 0 || i + 1 >= order()) return out;
        std::set_intersection(bags[i].begin(), bags[i].end(), bags[i + 1].begin(),
                              bags[i + 1].end(), std::inserter(out, out.begin()));
        return out;
    }
};

struct DecompositionMetrics {
    int width = -1;
    int interior_width = -1;  // -1 when there are no interior nodes
    int adhesion = 0;
    int order = 0;
    bool proper = true;
    std::optional<int> linked_p;  // none when the linkedness conditions fail
};

namespace pd_detail {

inline std::vector<std::string> violations(const PathDecomposition& d) {
    std::vector<std::string> out;
    const Multigraph& g = d.host;
    std::set<int> vs(g.vertices.begin(), g.vertices.end());

    for (int i = 0; i < d.order(); ++i)
        for (int v : d.bags[i])
            if (!vs.count(v))
                out.push_back("bag " + std::to_string(i) + " contains unknown vertex " +
                              std::to_string(v));

    for (const auto& e : g.edges) {
        bool covered = false;
        for (const auto& bag : d.bags)
            if (bag.count(e.u) && bag.count(e.v)) {
                covered = true;
                break;
            }
        if (!covered)
            out.push_back("edge " + std::to_string(e.id) + " (" + std::to_string(e.u) + "-" +
                          std::to_string(e.v) + ") not inside any bag");
    }

    for (int v : g.vertices) {
        int first = -1, last = -1, count = 0;
        for (int i = 0; i < d.order(); ++i)
            if (d.bags[i].count(v)) {
                if (first < 0) first = i;
                last = i;
                ++count;
            }
        if (count == 0)
            out.push_back("vertex " + std::to_string(v) + " appears in no bag");
        else if (last - first + 1 != count)
            out.push_back("vertex " + std::to_string(v) + " appears in non-contiguous nodes");
    }
    return out;
}

}  // namespace pd_detail

// Computes all metrics; throws with the full violation list when the bag
// sequence is not a path decomposition of the host.
inline DecompositionMetrics validate(const PathDecomposition& d) {
    auto bad = pd_detail::violations(d);
    if (!bad.empty()) {
        std::string msg = "invalid path decomposition:";
        for (const auto& v : bad) msg += "\n  - " + v;
        throw bad_input(msg);
    }

    DecompositionMetrics m;
    m.order = d.order();
    for (int i = 0; i < d.order(); ++i) {
        int w = (int)d.bags[i].size() - 1;
        m.width = std::max(m.width, w);
        if (i > 0 && i + 1 < d.order()) m.interior_width = std::max(m.interior_width, w);
        if (i > 0) m.adhesion = std::max(m.adhesion, (int)d.left_set(i).size());
    }
    for (int i = 0; i < d.order() && m.proper; ++i)
        for (int j = 0; j < d.order(); ++j)
            if (i != j && std::includes(d.bags[j].begin(), d.bags[j].end(), d.bags[i].begin(),
                                        d.bags[i].end())) {
                m.proper = false;
                break;
            }

    if (d.order() <= 1) {
        m.linked_p = 0;
    } else {
        int p = (int)d.left_set(1).size();
        bool uniform = true;
        for (int i = 1; i < d.order(); ++i)
            if ((int)d.left_set(i).size() != p) {
                uniform = false;
                break;
            }
        if (!uniform) {
            m.linked_p = std::nullopt;
        } else if (p == 0) {
            m.linked_p = 0;
        } else {
            std::set<int> from = d.right_set(0);
            std::set<int> to = d.left_set(d.order() - 1);
            auto fam = max_vertex_disjoint_paths(d.host, {from.begin(), from.end()},
                                                 {to.begin(), to.end()});
            m.linked_p = fam.count >= p ? std::optional<int>(p) : std::nullopt;
        }
    }
    return m;
}

// Drops bags contained in a neighbouring bag until none remain. For a valid
// decomposition this reaches full properness: containment between any two
// bags forces containment in an adjacent one via the interval property.
inline PathDecomposition normalize_proper(PathDecomposition d) {
    bool changed = true;
    while (changed && d.order() > 1) {
        changed = false;
        for (int i = 0; i < d.order(); ++i) {
            auto contained_in = [&](int j) {
                return j >= 0 && j < d.order() &&
                       std::includes(d.bags[j].begin(), d.bags[j].end(), d.bags[i].begin(),
                                     d.bags[i].end());
            };
            if (contained_in(i - 1) || contained_in(i + 1)) {
                d.bags.erase(d.bags.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return d;
}

// Exact path-width by dynamic programming over vertex subsets: the best
// achievable maximum boundary size over orderings that fill the subset first.
inline int pathwidth(const Multigraph& g) {
    const Multigraph s = g.underlying_simple();
    int n = (int)s.vertices.size();
    if (n == 0) return -1;
    if (n > 22) throw bad_input("exact path-width search supports at most 22 vertices");

    std::vector<int> verts(s.vertices.begin(), s.vertices.end());
    std::map<int, int> idx;
    for (int i = 0; i < n; ++i) idx[verts[i]] = i;
    std::vector<uint32_t> adj(n, 0);
    for (const auto& e : s.edges) {
        adj[idx.at(e.u)] |= 1u << idx.at(e.v);
        adj[idx.at(e.v)] |= 1u << idx.at(e.u);
    }

    const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<int8_t> h((size_t)full + 1, 0);
    for (uint32_t set = 1; set <= full; ++set) {
        int boundary = 0;
        for (uint32_t rest = set; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (adj[v] & ~set) ++boundary;
        }
        int best = n + 1;
        for (uint32_t rest = set; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            best = std::min(best, (int)h[set ^ (1u << v)]);
        }
        h[set] = (int8_t)std::max(boundary, best);
    }
    return h[full];
}

namespace pd_detail {

// Turns a vertex ordering into bags: bag i holds v_i plus every earlier
// vertex that still has a neighbour outside the first i-1 vertices.
inline PathDecomposition decomposition_from_order(const Multigraph& g,
                                                  const std::vector<int>& order) {
    const Multigraph s = g.underlying_simple();
    std::map<int, std::set<int>> nbr;
    for (const auto& e : s.edges) {
        nbr[e.u].insert(e.v);
        nbr[e.v].insert(e.u);
    }
    PathDecomposition d;
    d.host = g;
    std::set<int> prefix;
    for (int v : order) {
        std::set<int> bag{v};
        for (int u : prefix)
            for (int w : nbr[u])
                if (!prefix.count(w)) {
                    bag.insert(u);
                    break;
                }
        d.bags.push_back(bag);
        prefix.insert(v);
    }
    return d;
}

}  // namespace pd_detail

// Proper path decomposition of width <= w when one exists (exact search),
// none when width w is impossible. Throws above the exact-search size cap.
inline std::optional<PathDecomposition> find_path_decomposition(const Multigraph& g, int w) {
    int n = (int)g.vertices.size();
    if (n == 0) {
        if (w < -1) return std::nullopt;
        PathDecomposition d;
        d.host = g;
        d.bags.push_back({});
        return d;
    }
    if (n > 22) throw bad_input("exact path-width search supports at most 22 vertices");

    const Multigraph s = g.underlying_simple();
    std::vector<int> verts(s.vertices.begin(), s.vertices.end());
    std::map<int, int> idx;
    for (int i = 0; i < n; ++i) idx[verts[i]] = i;
    std::vector<uint32_t> adj(n, 0);
    for (const auto& e : s.edges) {
        adj[idx.at(e.u)] |= 1u << idx.at(e.v);
        adj[idx.at(e.v)] |= 1u << idx.at(e.u);
    }
    const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<int8_t> h((size_t)full + 1, 0);
    for (uint32_t set = 1; set <= full; ++set) {
        int boundary = 0;
        for (uint32_t rest = set; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (adj[v] & ~set) ++boundary;
        }
        int best = n + 1;
        for (uint32_t rest = set; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            best = std::min(best, (int)h[set ^ (1u << v)]);
        }
        h[set] = (int8_t)std::max(boundary, best);
    }
    if (h[full] > w) return std::nullopt;

    // Walk back from the full set, peeling the smallest-id vertex that
    // attains the optimum, to produce a deterministic optimal ordering.
    std::vector<int> order;
    uint32_t set = full;
    while (set) {
        int pick = -1;
        for (uint32_t rest = set; rest;) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (h[set ^ (1u << v)] <= h[set] && (pick < 0)) pick = v;
        }
        order.push_back(verts[pick]);
        set ^= 1u << pick;
    }
    std::reverse(order.begin(), order.end());
    return normalize_proper(pd_detail::decomposition_from_order(g, order));
}

// Merges each node listed in merge_points into the run of its predecessor;
// nodes not listed start their own run. Empty set is the identity; listing
// every node from 1 onward produces a single bag.
inline PathDecomposition coarsen(const PathDecomposition& d, const std::set<int>& merge_points) {
    for (int i : merge_points)
        if (i <= 0 || i >= d.order())
            throw bad_input("merge point " + std::to_string(i) + " out of range");
    PathDecomposition out;
    out.host = d.host;
    for (int i = 0; i < d.order(); ++i) {
        if (i > 0 && merge_points.count(i)) {
            out.bags.back().insert(d.bags[i].begin(), d.bags[i].end());
        } else {
            out.bags.push_back(d.bags[i]);
        }
    }
    return out;
}

// Interior-node classification: unbroken nodes route `a` disjoint paths
// between their neighbour intersections inside the bag; broken nodes carry
// a two-sided separation certificate with a small middle.
struct NodeClassification {
    bool unbroken = false;
    std::set<int> a_side;  // broken only: contains the left intersection
    std::set<int> b_side;  // broken only: contains the right intersection
};

inline std::map<int, NodeClassification> classify_nodes(const PathDecomposition& d, int a) {
    DecompositionMetrics m = validate(d);
    if (a < m.adhesion)
        throw bad_input("classification parameter " + std::to_string(a) +
                        " is below the adhesion " + std::to_string(m.adhesion));

    std::map<int, NodeClassification> out;
    for (int x = 1; x + 1 < d.order(); ++x) {
        std::set<int> L = d.left_set(x), R = d.right_set(x);
        const std::set<int>& bag = d.bags[x];
        Multigraph local = d.host.induced({bag.begin(), bag.end()});

        NodeClassification nc;
        std::vector<int> cut;
        if ((int)L.size() == a && (int)R.size() == a) {
            auto fam = max_vertex_disjoint_paths(local, {L.begin(), L.end()},
                                                 {R.begin(), R.end()});
            if (fam.count >= a) {
                nc.unbroken = true;
                out[x] = nc;
                continue;
            }
            cut = fam.cut;
        } else if (!L.empty() && !R.empty()) {
            auto fam = max_vertex_disjoint_paths(local, {L.begin(), L.end()},
                                                 {R.begin(), R.end()});
            cut = fam.cut;
        }
        // else: one side empty, the empty cut already separates.

        std::set<int> cset(cut.begin(), cut.end());
        std::set<int> reach = cset;
        std::vector<int> stack;
        for (int v : L)
            if (!cset.count(v)) {
                reach.insert(v);
                stack.push_back(v);
            }
        auto adj = local.adjacency();
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, eid] : adj[v]) {
                (void)eid;
                if (!cset.count(w) && !reach.count(w)) {
                    reach.insert(w);
                    stack.push_back(w);
                }
            }
        }
        nc.a_side = reach;  // cut plus everything the left side reaches past it
        nc.b_side = cset;
        for (int v : bag)
            if (!nc.a_side.count(v)) nc.b_side.insert(v);

        ensure((int)cset.size() <= a - 1, "separation middle too large");
        for (int v : L) ensure(nc.a_side.count(v), "left set escapes its side");
        for (int v : R) ensure(nc.b_side.count(v), "right set escapes its side");
        for (const auto& e : local.edges) {
            bool ua = nc.a_side.count(e.u) && !nc.b_side.count(e.u);
            bool vb = nc.b_side.count(e.v) && !nc.a_side.count(e.v);
            bool va = nc.a_side.count(e.v) && !nc.b_side.count(e.v);
            bool ub = nc.b_side.count(e.u) && !nc.a_side.count(e.u);
            ensure(!(ua && vb) && !(va && ub), "edge crosses the separation");
        }
        out[x] = nc;
    }
    return out;
}

// Result of the linkedness refinement. below_threshold marks outputs whose
// order falls short of f at the achieved interior width — the input was too
// short for the target, and the result is the best extractable piece.
struct LinkedRefinement {
    int p = 0;
    PathDecomposition dec;
    bool below_threshold = false;
};

namespace pd_detail {

inline PathDecomposition restrict_run(const PathDecomposition& d, int from, int to) {
    std::set<int> union_bag;
    for (int i = from; i <= to; ++i) union_bag.insert(d.bags[i].begin(), d.bags[i].end());
    PathDecomposition out;
    out.host = d.host.induced({union_bag.begin(), union_bag.end()});
    for (int i = from; i <= to; ++i) out.bags.push_back(d.bags[i]);
    return out;
}

}  // namespace pd_detail

// Extracts a linked decomposition: either a long run of unbroken nodes
// (restriction is adhesion-linked) or, when broken nodes are spread
// throughout, merges the stretches between them — dropping the adhesion —
// and recurses. p never exceeds the input adhesion.
inline LinkedRefinement refine_to_linked(const PathDecomposition& input,
                                         const std::function<int(int)>& f) {
    PathDecomposition d = normalize_proper(input);
    DecompositionMetrics m = validate(d);

    auto finish = [&](int p, PathDecomposition dec) {
        LinkedRefinement out;
        out.p = p;
        DecompositionMetrics dm = validate(dec);
        out.below_threshold = dm.order < f(std::max(0, dm.interior_width));
        out.dec = std::move(dec);
        return out;
    };

    int a = m.adhesion;
    if (a == 0) return finish(0, d);

    int target = std::max(1, f(std::max(0, m.interior_width)));
    auto cls = classify_nodes(d, a);

    int best_from = -1, best_len = 0;
    bool any_broken = false;
    {
        int run_start = -1;
        for (int x = 1; x + 1 < d.order(); ++x) {
            if (cls.at(x).unbroken) {
                if (run_start < 0) run_start = x;
                int len = x - run_start + 1;
                if (len > best_len) {
                    best_len = len;
                    best_from = run_start;
                }
            } else {
                any_broken = true;
                run_start = -1;
            }
        }
    }

    if (best_len >= target && best_len >= 2) {
        PathDecomposition run = pd_detail::restrict_run(d, best_from, best_from + best_len - 1);
        DecompositionMetrics rm = validate(run);
        ensure(rm.linked_p && *rm.linked_p == a, "unbroken run failed the linkedness certificate");
        return finish(a, std::move(run));
    }

    if (!any_broken) {
        // Too short to meet the target and nothing to merge around.
        if (best_len >= 2) {
            PathDecomposition run =
                pd_detail::restrict_run(d, best_from, best_from + best_len - 1);
            DecompositionMetrics rm = validate(run);
            ensure(rm.linked_p && *rm.linked_p == a,
                   "unbroken run failed the linkedness certificate");
            return finish(a, std::move(run));
        }
        if (m.linked_p) return finish(*m.linked_p, d);
        return finish(0, pd_detail::restrict_run(d, 0, 0));
    }

    // Merge the stretches between broken nodes; each broken bag is split
    // along its certificate so consecutive new bags overlap only in the
    // small middle, dropping the adhesion by at least one.
    std::vector<int> broken;
    for (int x = 1; x + 1 < d.order(); ++x)
        if (!cls.at(x).unbroken) broken.push_back(x);

    PathDecomposition merged;
    merged.host = d.host;
    std::set<int> current;
    int at = 0;
    for (int b : broken) {
        for (int i = at; i < b; ++i) current.insert(d.bags[i].begin(), d.bags[i].end());
        const auto& nc = cls.at(b);
        current.insert(nc.a_side.begin(), nc.a_side.end());
        merged.bags.push_back(current);
        current = nc.b_side;
        at = b + 1;
    }
    for (int i = at; i < d.order(); ++i) current.insert(d.bags[i].begin(), d.bags[i].end());
    merged.bags.push_back(current);

    merged = normalize_proper(merged);
    DecompositionMetrics mm = validate(merged);
    ensure(mm.adhesion <= a - 1, "merge did not reduce the adhesion");
    return refine_to_linked(merged, f);
}

// --- text format: `order t`, then one line `i: v v v ...` per node ---

inline void write_path_decomposition(std::ostream& out, const PathDecomposition& d) {
    out << "order " << d.order() << "\n";
    for (int i = 0; i < d.order(); ++i) {
        out << i << ":";
        for (int v : d.bags[i]) out << " " << v;
        out << "\n";
    }
}

inline std::string path_decomposition_to_string(const PathDecomposition& d) {
    std::ostringstream out;
    write_path_decomposition(out, d);
    return out.str();
}

inline PathDecomposition read_path_decomposition(std::istream& in, const Multigraph& host) {
    detail::LineReader r(in);
    r.skip_blank_and_comments();
    if (r.eof()) throw parse_error(r.lineno(), "expected header 'order t'");
    int head_at = r.lineno();
    auto header = detail::split_ws(r.take());
    if (header.size() != 2 || header[0] != "order")
        throw parse_error(head_at, "expected header 'order t'");
    int t = (int)detail::parse_int(header[1], head_at);
    if (t < 0) throw parse_error(head_at, "negative order");

    PathDecomposition d;
    d.host = host;
    for (int i = 0; i < t; ++i) {
        r.skip_blank_and_comments();
        if (r.eof()) throw parse_error(r.lineno(), "missing bag line for node " + std::to_string(i));
        int at = r.lineno();
        std::string line = r.take();
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error(at, "expected 'i: v v ...' bag line");
        int node = (int)detail::parse_int(line.substr(0, colon), at);
        if (node != i)
            throw parse_error(at, "bag lines must be numbered 0.." + std::to_string(t - 1) +
                                      " in order");
        std::set<int> bag;
        for (const auto& tok : detail::split_ws(line.substr(colon + 1)))
            bag.insert((int)detail::parse_int(tok, at));
        d.bags.push_back(std::move(bag));
    }
    return d;
}

inline PathDecomposition read_path_decomposition(const std::string& text, const Multigraph& host) {
    std::istringstream in(text);
    return read_path_decomposition(in, host);
}

}  // namespace ccc
