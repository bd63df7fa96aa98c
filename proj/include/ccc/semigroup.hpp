#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ccc/io.hpp"
#include "ccc/util.hpp"

namespace ccc {

// A finite semigroup on elements {0, .., order-1} given by its full
// multiplication table.  Associativity is verified at construction (O(n^3)),
// so every accepted instance is a genuine semigroup.
class FiniteSemigroup {
   public:
    FiniteSemigroup(int order, std::vector<int> table) : n_(order), table_(std::move(table)) {
        require(n_ >= 1, "semigroup order must be at least 1");
        require(n_ <= 256, "semigroup order above supported limit 256");
        require((int)table_.size() == n_ * n_,
                "multiplication table must have order*order entries, got " +
                    std::to_string(table_.size()));
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int ab = table_[a * n_ + b];
                require(0 <= ab && ab < n_, "table entry " + std::to_string(a) + "*" +
                                                std::to_string(b) + " = " + std::to_string(ab) +
                                                " out of range");
            }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int ab = table_[a * n_ + b];
                for (int c = 0; c < n_; ++c) {
                    int bc = table_[b * n_ + c];
                    if (table_[ab * n_ + c] != table_[a * n_ + bc])
                        throw bad_input(
                            "multiplication table is not associative: (a*b)*c != a*(b*c) for a=" +
                            std::to_string(a) + " b=" + std::to_string(b) +
                            " c=" + std::to_string(c));
                }
            }
    }

    int order() const { return n_; }

    int mul(int a, int b) const {
        require(0 <= a && a < n_ && 0 <= b && b < n_, "semigroup element out of range");
        return table_[a * n_ + b];
    }

    // Product of a nonempty word, left to right.
    int product(const std::vector<int>& word) const {
        require(!word.empty(), "product of an empty word is undefined");
        int p = word[0];
        require(0 <= p && p < n_, "semigroup element out of range");
        for (size_t i = 1; i < word.size(); ++i) p = mul(p, word[i]);
        return p;
    }

    bool is_idempotent(int e) const { return mul(e, e) == e; }

    std::vector<int> idempotents() const {
        std::vector<int> out;
        for (int e = 0; e < n_; ++e)
            if (is_idempotent(e)) out.push_back(e);
        return out;
    }

   private:
    int n_;
    std::vector<int> table_;
};

// ---------------------------------------------------------------------------
// Text format: `order n` followed by n rows of n element ids (row a lists
// a*0, a*1, .., a*(n-1)).  Blank lines and `#` comments are skipped.

inline FiniteSemigroup read_semigroup(std::istream& in) {
    detail::LineReader r(in);
    r.skip_blank_and_comments();
    if (r.eof()) throw parse_error(r.lineno(), "expected 'order n' header");
    int head_at = r.lineno();
    auto head = detail::split_ws(r.take());
    if (head.size() != 2 || head[0] != "order")
        throw parse_error(head_at, "expected 'order n' header");
    long long n = detail::parse_int(head[1], head_at);
    if (n < 1 || n > 256)
        throw parse_error(head_at, "semigroup order must be between 1 and 256");
    std::vector<int> table;
    table.reserve((size_t)(n * n));
    for (int a = 0; a < (int)n; ++a) {
        r.skip_blank_and_comments();
        if (r.eof())
            throw parse_error(r.lineno(), "expected table row " + std::to_string(a) + " of " +
                                              std::to_string(n));
        int at = r.lineno();
        auto toks = detail::split_ws(r.take());
        if ((int)toks.size() != (int)n)
            throw parse_error(at, "table row " + std::to_string(a) + " must have " +
                                      std::to_string(n) + " entries, got " +
                                      std::to_string(toks.size()));
        for (auto& t : toks) {
            long long v = detail::parse_int(t, at);
            if (v < 0 || v >= n)
                throw parse_error(at, "table entry " + std::to_string(v) + " out of range");
            table.push_back((int)v);
        }
    }
    return FiniteSemigroup((int)n, std::move(table));
}

inline FiniteSemigroup read_semigroup(const std::string& text) {
    std::istringstream in(text);
    return read_semigroup(in);
}

inline void write_semigroup(std::ostream& out, const FiniteSemigroup& a) {
    out << "order " << a.order() << "\n";
    for (int x = 0; x < a.order(); ++x) {
        for (int y = 0; y < a.order(); ++y) out << (y ? " " : "") << a.mul(x, y);
        out << "\n";
    }
}

inline std::string semigroup_to_string(const FiniteSemigroup& a) {
    std::ostringstream out;
    write_semigroup(out, a);
    return out.str();
}

// ---------------------------------------------------------------------------
// Factorization trees.  A rooted ordered tree over a word: leaves carry the
// letters left to right, every internal node's value is the product of its
// children's values in order, and any node with more than two children must
// have all children sharing one idempotent value (which is then the node's
// value).  Depth counts edges on the longest root-to-leaf path, so a single
// leaf has depth 0.

struct FactorizationTree {
    struct Node {
        int value = -1;
        std::vector<int> children;  // empty for leaves; left-to-right order
        bool leaf() const { return children.empty(); }
    };
    std::vector<Node> nodes;
    int root = -1;

    int depth() const {
        ensure(root >= 0 && root < (int)nodes.size(), "factorization tree has no root");
        // Iterative post-order depth to avoid recursion limits.
        std::vector<int> d(nodes.size(), -1);
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [v, next_child] = stack.back();
            if (nodes[v].leaf()) {
                d[v] = 0;
                stack.pop_back();
            } else if (next_child < nodes[v].children.size()) {
                int c = nodes[v].children[next_child++];
                stack.push_back({c, 0});
            } else {
                int best = 0;
                for (int c : nodes[v].children) best = std::max(best, d[c]);
                d[v] = best + 1;
                stack.pop_back();
            }
        }
        return d[root];
    }

    // Leaf values in left-to-right order (the word the tree yields).
    std::vector<int> yield() const {
        ensure(root >= 0 && root < (int)nodes.size(), "factorization tree has no root");
        std::vector<int> out;
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [v, next_child] = stack.back();
            if (nodes[v].leaf()) {
                out.push_back(nodes[v].value);
                stack.pop_back();
            } else if (next_child < nodes[v].children.size()) {
                int c = nodes[v].children[next_child++];
                stack.push_back({c, 0});
            } else {
                stack.pop_back();
            }
        }
        return out;
    }
};

// Full structural audit of a tree against its semigroup and intended word.
// Returns human-readable violations; empty means the tree is valid.
inline std::vector<std::string> factorization_tree_violations(const FiniteSemigroup& a,
                                                              const FactorizationTree& t,
                                                              const std::vector<int>& word) {
    std::vector<std::string> out;
    int n = (int)t.nodes.size();
    if (t.root < 0 || t.root >= n) {
        out.push_back("root index out of range");
        return out;
    }
    std::vector<int> seen(n, 0);
    std::vector<std::pair<int, size_t>> stack{{t.root, 0}};
    seen[t.root]++;
    std::vector<int> order;  // post-order
    while (!stack.empty()) {
        auto& [v, next_child] = stack.back();
        if (next_child < t.nodes[v].children.size()) {
            int c = t.nodes[v].children[next_child++];
            if (c < 0 || c >= n) {
                out.push_back("child index out of range at node " + std::to_string(v));
                return out;
            }
            if (++seen[c] > 1) {
                out.push_back("node " + std::to_string(c) + " reached twice; not a tree");
                return out;
            }
            stack.push_back({c, 0});
        } else {
            order.push_back(v);
            stack.pop_back();
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) out.push_back("node " + std::to_string(v) + " unreachable from root");
    for (int v : order) {
        const auto& node = t.nodes[v];
        if (node.value < 0 || node.value >= a.order()) {
            out.push_back("node " + std::to_string(v) + " value out of range");
            continue;
        }
        if (node.leaf()) continue;
        if (node.children.size() == 1)
            out.push_back("internal node " + std::to_string(v) + " has a single child");
        int p = t.nodes[node.children[0]].value;
        for (size_t i = 1; i < node.children.size(); ++i)
            p = a.mul(p, t.nodes[node.children[i]].value);
        if (p != node.value)
            out.push_back("node " + std::to_string(v) + " value " + std::to_string(node.value) +
                          " differs from children product " + std::to_string(p));
        if (node.children.size() > 2) {
            int e = t.nodes[node.children[0]].value;
            bool uniform = true;
            for (int c : node.children) uniform = uniform && t.nodes[c].value == e;
            if (!uniform)
                out.push_back("wide node " + std::to_string(v) +
                              " has children of differing values");
            else if (!a.is_idempotent(e))
                out.push_back("wide node " + std::to_string(v) + " child value " +
                              std::to_string(e) + " is not idempotent");
        }
    }
    std::vector<int> leaves = t.yield();
    if (leaves != word) out.push_back("leaf sequence differs from the input word");
    return out;
}

namespace detail {

struct TreeBuilder {
    const FiniteSemigroup& a;
    const std::vector<int>& w;
    FactorizationTree t;

    explicit TreeBuilder(const FiniteSemigroup& a_, const std::vector<int>& w_) : a(a_), w(w_) {}

    int leaf(int pos) {
        t.nodes.push_back({w[pos], {}});
        return (int)t.nodes.size() - 1;
    }

    int join2(int left, int right) {
        int value = a.mul(t.nodes[left].value, t.nodes[right].value);
        t.nodes.push_back({value, {left, right}});
        return (int)t.nodes.size() - 1;
    }

    int wide(int e, std::vector<int> children) {
        t.nodes.push_back({e, std::move(children)});
        return (int)t.nodes.size() - 1;
    }

    // Greedy construction: at each node, look for the idempotent e admitting
    // the largest split of w[i..j] into consecutive blocks of product e (with
    // a free head and tail); when at least three blocks exist they become the
    // children of a wide node, otherwise fall back to a balanced binary split.
    // Blocks strictly shrink, so recursion terminates.
    int build(int i, int j) {
        int len = j - i + 1;
        if (len == 1) return leaf(i);
        if (len == 2) return join2(leaf(i), leaf(i + 1));

        // parts[e][k]: most blocks of product e that a partition of w[i+k..j]
        // into blocks-of-product-e followed by a free tail can achieve.
        int ne = a.order();
        std::vector<std::vector<int>> parts(ne, std::vector<int>(len + 1, 0));
        std::vector<char> idem(ne, 0);
        for (int e = 0; e < ne; ++e) idem[e] = a.is_idempotent(e) ? 1 : 0;
        for (int s = len - 1; s >= 0; --s) {
            int prod = -1;
            for (int u = s; u < len; ++u) {
                prod = (u == s) ? w[i + u] : a.mul(prod, w[i + u]);
                if (idem[prod])
                    parts[prod][s] = std::max(parts[prod][s], 1 + parts[prod][u + 1]);
            }
        }
        int best_e = -1, best_m = 0, best_s = 0;
        for (int e = 0; e < ne; ++e) {
            if (!idem[e]) continue;
            for (int s = 0; s < len; ++s)
                if (parts[e][s] > best_m) {
                    best_m = parts[e][s];
                    best_e = e;
                    best_s = s;
                }
        }
        if (best_m >= 3) {
            // Re-walk the table to cut the blocks (shortest block first).
            std::vector<std::pair<int, int>> blocks;
            int cur = best_s, remaining = best_m;
            while (remaining > 0) {
                int prod = -1, end = -1;
                for (int u = cur; u < len; ++u) {
                    prod = (u == cur) ? w[i + u] : a.mul(prod, w[i + u]);
                    if (prod == best_e && parts[best_e][u + 1] == remaining - 1) {
                        end = u;
                        break;
                    }
                }
                ensure(end >= 0, "factorization block reconstruction lost a block");
                blocks.push_back({i + cur, i + end});
                cur = end + 1;
                --remaining;
            }
            std::vector<int> children;
            children.reserve(blocks.size());
            for (auto [bi, bj] : blocks) children.push_back(build(bi, bj));
            int node = wide(best_e, std::move(children));
            if (i + cur <= j) node = join2(node, build(i + cur, j));
            if (best_s > 0) node = join2(build(i, i + best_s - 1), node);
            return node;
        }
        int mid = i + len / 2 - 1;
        return join2(build(i, mid), build(mid + 1, j));
    }
};

// Fast greedy tree; meets the depth bound in practice but carries no formal
// guarantee, so the public entry point re-checks and falls back if needed.
inline FactorizationTree factorization_tree_greedy(const FiniteSemigroup& a,
                                                   const std::vector<int>& word) {
    require(!word.empty(), "factorization tree needs a nonempty word");
    for (int x : word)
        require(0 <= x && x < a.order(), "word contains element out of range");
    TreeBuilder b(a, word);
    b.t.root = b.build(0, (int)word.size() - 1);
    return std::move(b.t);
}

}  // namespace detail

// Exact minimum-depth factorization tree by dynamic programming over infixes.
// Transitions: binary split, or a wide node splitting the infix into >= 3
// blocks of equal idempotent product.  Quadratic space, cubic time; only
// sized for short words and small semigroups.
inline FactorizationTree optimal_factorization_tree(const FiniteSemigroup& a,
                                                    const std::vector<int>& word) {
    require(!word.empty(), "factorization tree needs a nonempty word");
    require(word.size() <= 512, "exact factorization search limited to 512 letters");
    require(a.order() <= 64, "exact factorization search limited to order 64");
    for (int x : word)
        require(0 <= x && x < a.order(), "word contains element out of range");
    const int L = (int)word.size();
    const int INF = 127;
    auto at = [L](int i, int j) { return i * L + j; };
    std::vector<unsigned char> P((size_t)L * L);  // infix products
    for (int i = 0; i < L; ++i) {
        int prod = word[i];
        P[at(i, i)] = (unsigned char)prod;
        for (int j = i + 1; j < L; ++j) {
            prod = a.mul(prod, word[j]);
            P[at(i, j)] = (unsigned char)prod;
        }
    }
    std::vector<int> idems = a.idempotents();
    std::vector<signed char> D((size_t)L * L, INF);
    // best2[e]: minimal max-depth of a partition of the infix into >= 2
    // blocks of product e (INF if impossible); filled for processed infixes.
    std::vector<std::vector<signed char>> best2(idems.size(),
                                                std::vector<signed char>((size_t)L * L, INF));
    auto one_block = [&](size_t ei, int i, int j) -> int {
        int e = idems[ei];
        int single = (P[at(i, j)] == e) ? D[at(i, j)] : INF;
        return std::min(single, (int)best2[ei][at(i, j)]);
    };
    for (int len = 1; len <= L; ++len) {
        for (int i = 0; i + len - 1 < L; ++i) {
            int j = i + len - 1;
            if (len == 1) {
                D[at(i, j)] = 0;
            } else {
                int best = INF;
                for (int k = i; k < j; ++k)
                    best = std::min(best,
                                    1 + std::max((int)D[at(i, k)], (int)D[at(k + 1, j)]));
                for (size_t ei = 0; ei < idems.size(); ++ei) {
                    if (P[at(i, j)] != idems[ei]) continue;
                    for (int k = i; k < j; ++k) {
                        if (P[at(i, k)] != idems[ei]) continue;
                        int rest = best2[ei][at(k + 1, j)];
                        if (rest >= INF) continue;
                        best = std::min(best, 1 + std::max((int)D[at(i, k)], rest));
                    }
                }
                ensure(best < INF, "no factorization tree found for infix");
                D[at(i, j)] = (signed char)best;
            }
            for (size_t ei = 0; ei < idems.size(); ++ei) {
                int e = idems[ei];
                int best = INF;
                for (int k = i; k < j; ++k) {
                    if (P[at(i, k)] != e) continue;
                    best = std::min(best, std::max((int)D[at(i, k)], one_block(ei, k + 1, j)));
                }
                best2[ei][at(i, j)] = (signed char)best;
            }
        }
    }

    FactorizationTree t;
    // Reconstruct deterministically: prefer wide nodes (smallest idempotent),
    // then the leftmost binary split achieving the optimum.
    std::function<int(int, int)> rebuild = [&](int i, int j) -> int {
        if (i == j) {
            t.nodes.push_back({word[i], {}});
            return (int)t.nodes.size() - 1;
        }
        int target = D[at(i, j)];
        for (size_t ei = 0; ei < idems.size(); ++ei) {
            int e = idems[ei];
            if (P[at(i, j)] != e) continue;
            // Try to realize a wide node of depth `target`: blocks of product
            // e, each subtree depth <= target - 1, at least 3 blocks.
            std::vector<std::pair<int, int>> blocks;
            int cur = i;
            bool ok = true;
            while (cur <= j) {
                int pick = -1;
                for (int k = cur; k <= j; ++k) {
                    if (P[at(cur, k)] != e || D[at(cur, k)] > target - 1) continue;
                    if (k == j) {
                        // Closing block; only valid once two blocks exist.
                        if (blocks.size() >= 2) pick = k;
                        break;
                    }
                    // Look ahead so the remainder still supports enough
                    // blocks (three in total, one to cover the rest).
                    int rest = (blocks.empty())
                                   ? (int)best2[ei][at(k + 1, j)]
                                   : std::min((int)best2[ei][at(k + 1, j)],
                                              (P[at(k + 1, j)] == e) ? (int)D[at(k + 1, j)]
                                                                     : INF);
                    if (rest <= target - 1) {
                        pick = k;
                        break;
                    }
                }
                if (pick < 0) {
                    ok = false;
                    break;
                }
                blocks.push_back({cur, pick});
                cur = pick + 1;
            }
            if (ok && blocks.size() >= 3) {
                std::vector<int> children;
                for (auto [bi, bj] : blocks) children.push_back(rebuild(bi, bj));
                t.nodes.push_back({e, std::move(children)});
                return (int)t.nodes.size() - 1;
            }
        }
        for (int k = i; k < j; ++k) {
            if (1 + std::max((int)D[at(i, k)], (int)D[at(k + 1, j)]) == target) {
                int l = rebuild(i, k);
                int r = rebuild(k + 1, j);
                int value = a.mul(t.nodes[l].value, t.nodes[r].value);
                t.nodes.push_back({value, {l, r}});
                return (int)t.nodes.size() - 1;
            }
        }
        ensure(false, "optimal tree reconstruction failed");
        return -1;
    };
    t.root = rebuild(0, L - 1);
    ensure(t.depth() == D[at(0, L - 1)], "reconstructed depth differs from table");
    return t;
}

// Builds a factorization tree of depth at most 3*|A| for the given word.
// The greedy construction is used first; in the (unobserved) event that it
// exceeds the bound, the exact search takes over.
inline FactorizationTree build_factorization_tree(const FiniteSemigroup& a,
                                                  const std::vector<int>& word) {
    FactorizationTree t = detail::factorization_tree_greedy(a, word);
    int bound = 3 * a.order();
    if (t.depth() > bound) {
        ensure(word.size() <= 512,
               "greedy factorization tree exceeded depth bound on a word too long "
               "for exact search");
        t = optimal_factorization_tree(a, word);
    }
    ensure(t.depth() <= bound, "factorization tree exceeds depth bound 3|A|");
    ensure(factorization_tree_violations(a, t, word).empty(),
           "factorization tree failed structural audit");
    return t;
}

// ---------------------------------------------------------------------------
// Heavy-vertex search on rooted ordered trees.

struct RootedTree {
    int root = 0;
    std::vector<std::vector<int>> children;  // children[v] in order; leaves: empty
};

inline RootedTree tree_shape(const FactorizationTree& t) {
    RootedTree out;
    out.root = t.root;
    out.children.reserve(t.nodes.size());
    for (auto& n : t.nodes) out.children.push_back(n.children);
    return out;
}

namespace detail {

// Validates shape and returns leaf counts per subtree.
inline std::vector<long long> subtree_leaves(const RootedTree& t) {
    int n = (int)t.children.size();
    require(n > 0, "empty tree");
    require(0 <= t.root && t.root < n, "tree root out of range");
    std::vector<int> seen(n, 0);
    std::vector<long long> leaves(n, 0);
    std::vector<std::pair<int, size_t>> stack{{t.root, 0}};
    seen[t.root] = 1;
    while (!stack.empty()) {
        auto& [v, next_child] = stack.back();
        if (next_child < t.children[v].size()) {
            int c = t.children[v][next_child++];
            require(0 <= c && c < n, "tree child index out of range");
            require(!seen[c]++, "vertex reached twice; not a tree");
            stack.push_back({c, 0});
        } else {
            if (t.children[v].empty())
                leaves[v] = 1;
            else
                for (int c : t.children[v]) leaves[v] += leaves[c];
            stack.pop_back();
        }
    }
    for (int v = 0; v < n; ++v) require(seen[v], "vertex unreachable from root; not a tree");
    return leaves;
}

}  // namespace detail

struct HeavyVertex {
    int vertex = -1;
    int k = 0;            // every child subtree of `vertex` has at most k leaves
    int child_count = 0;  // number of children of `vertex`
    bool below_threshold = false;
};

// Finds a vertex with at least f(k) children whose child subtrees each have
// at most k leaves, preferring the smallest such k.  When no vertex clears
// its threshold the best available candidate (most children) is reported
// with below_threshold set.  f must be non-decreasing.
inline HeavyVertex find_heavy_vertex(const RootedTree& t, const std::function<int(int)>& f) {
    auto leaves = detail::subtree_leaves(t);
    int n = (int)t.children.size();
    HeavyVertex best_ok, best_any;
    for (int v = 0; v < n; ++v) {
        long long kv = 0;
        for (int c : t.children[v]) kv = std::max(kv, leaves[c]);
        int d = (int)t.children[v].size();
        HeavyVertex cand{v, (int)kv, d, false};
        // Childless vertices cannot witness the lemma's conclusion.
        bool qualifies = d >= 1 && (long long)d >= (long long)f((int)kv);
        if (qualifies) {
            if (best_ok.vertex < 0 || cand.k < best_ok.k ||
                (cand.k == best_ok.k && cand.child_count > best_ok.child_count))
                best_ok = cand;
        }
        if (best_any.vertex < 0 || cand.child_count > best_any.child_count ||
            (cand.child_count == best_any.child_count && cand.k < best_any.k))
            best_any = cand;
    }
    if (best_ok.vertex >= 0) return best_ok;
    best_any.below_threshold = true;
    return best_any;
}

// ---------------------------------------------------------------------------
// Idempotent run splitting: factor a word as prefix . run_1 .. run_m . suffix
// where every run multiplies out to one common idempotent e and has length
// at most k, with m as large as the tree construction allows.

struct IdempotentRuns {
    std::vector<int> prefix;
    std::vector<std::vector<int>> runs;
    std::vector<int> suffix;
    int k = 0;
    std::optional<int> idempotent;
    bool below_threshold = false;

    int m() const { return (int)runs.size(); }
};

inline IdempotentRuns split_idempotent_runs(const FiniteSemigroup& a, const std::vector<int>& s,
                                            const std::function<int(int)>& f) {
    require(!s.empty(), "cannot split an empty word");
    FactorizationTree t = build_factorization_tree(a, s);
    RootedTree shape = tree_shape(t);
    auto leaves = detail::subtree_leaves(shape);

    // Leaf interval [lo, hi) of each node, in word coordinates.
    int n = (int)t.nodes.size();
    std::vector<int> lo(n, 0), hi(n, 0);
    {
        int next_leaf = 0;
        std::vector<std::pair<int, size_t>> stack{{t.root, 0}};
        while (!stack.empty()) {
            auto& [v, next_child] = stack.back();
            if (next_child == 0) lo[v] = next_leaf;
            if (t.nodes[v].leaf()) {
                ++next_leaf;
                hi[v] = next_leaf;
                stack.pop_back();
            } else if (next_child < t.nodes[v].children.size()) {
                int c = t.nodes[v].children[next_child++];
                stack.push_back({c, 0});
            } else {
                hi[v] = next_leaf;
                stack.pop_back();
            }
        }
    }

    // A vertex with >= max(f(k), 3) children is necessarily a wide node, so
    // its children all carry one idempotent value.
    auto f3 = [&f](int k) { return std::max(f(k), 3); };
    HeavyVertex hv = find_heavy_vertex(shape, f3);

    int pick = -1;
    bool below = false;
    if (!hv.below_threshold) {
        pick = hv.vertex;
    } else {
        // Best effort: the wide node with the most children, if any.
        below = true;
        for (int v = 0; v < n; ++v) {
            if (t.nodes[v].children.size() < 3) continue;
            if (pick < 0 || t.nodes[v].children.size() > t.nodes[pick].children.size()) pick = v;
        }
    }

    IdempotentRuns out;
    out.below_threshold = below;
    if (pick < 0) {
        out.prefix = s;
        out.k = 0;
        return out;
    }
    const auto& node = t.nodes[pick];
    ensure(node.children.size() >= 3, "selected run node is not wide");
    out.idempotent = node.value;
    long long kv = 0;
    for (int c : node.children) kv = std::max(kv, leaves[c]);
    out.k = (int)kv;
    out.prefix.assign(s.begin(), s.begin() + lo[pick]);
    out.suffix.assign(s.begin() + hi[pick], s.end());
    for (int c : node.children) {
        std::vector<int> run(s.begin() + lo[c], s.begin() + hi[c]);
        ensure((int)run.size() <= out.k, "run longer than reported k");
        ensure(a.product(run) == node.value, "run product differs from the idempotent");
        out.runs.push_back(std::move(run));
    }
    return out;
}

}  // namespace ccc
