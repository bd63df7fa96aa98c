#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ccc/pathdecomp.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

Multigraph star_graph(int leaves) {
    Multigraph g = Multigraph::with_vertices(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

// Two rails a_i = 2i, b_i = 2i+1 with one rung per position.
Multigraph ladder_graph(int rungs) {
    Multigraph g = Multigraph::with_vertices(2 * rungs);
    for (int i = 0; i < rungs; ++i) {
        g.add_edge(2 * i, 2 * i + 1);
        if (i > 0) {
            g.add_edge(2 * (i - 1), 2 * i);
            g.add_edge(2 * (i - 1) + 1, 2 * i + 1);
        }
    }
    return g;
}

PathDecomposition ladder_strip(const Multigraph& g, int rungs) {
    PathDecomposition d;
    d.host = g;
    for (int i = 0; i + 1 < rungs; ++i)
        d.bags.push_back({2 * i, 2 * i + 1, 2 * (i + 1), 2 * (i + 1) + 1});
    return d;
}

Multigraph grid_graph(int rows, int cols) {
    Multigraph g = Multigraph::with_vertices(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

// Ladder blocks of `block_rungs` rungs joined by single pinch vertices, with
// the natural strip decomposition: rung bags inside blocks, two small bags
// around every pinch. Adhesion 2 at rung bags, 1 across each pinch.
struct PinchedLadder {
    Multigraph g;
    PathDecomposition d;
};

PinchedLadder pinched_ladder(int blocks, int block_rungs) {
    PinchedLadder out;
    auto fresh = [&] { return out.g.add_vertex(); };

    std::vector<std::vector<std::pair<int, int>>> block_rung_ids(blocks);
    std::vector<int> pinches;
    for (int b = 0; b < blocks; ++b) {
        std::vector<std::pair<int, int>> rung_pairs;
        for (int r = 0; r < block_rungs; ++r) {
            int a = fresh(), bb = fresh();
            out.g.add_edge(a, bb);
            if (r > 0) {
                out.g.add_edge(rung_pairs.back().first, a);
                out.g.add_edge(rung_pairs.back().second, bb);
            }
            rung_pairs.push_back({a, bb});
        }
        if (b > 0) {
            int p = pinches.back();
            out.g.add_edge(p, rung_pairs.front().first);
            out.g.add_edge(p, rung_pairs.front().second);
        }
        if (b + 1 < blocks) {
            int p = fresh();
            out.g.add_edge(rung_pairs.back().first, p);
            out.g.add_edge(rung_pairs.back().second, p);
            pinches.push_back(p);
        }
        block_rung_ids[b] = rung_pairs;
    }

    for (int b = 0; b < blocks; ++b) {
        const auto& rp = block_rung_ids[b];
        if (b > 0) {
            int p = pinches[b - 1];
            out.d.bags.push_back({p, rp.front().first, rp.front().second});
        }
        for (size_t r = 0; r + 1 < rp.size(); ++r)
            out.d.bags.push_back(
                {rp[r].first, rp[r].second, rp[r + 1].first, rp[r + 1].second});
        if (b + 1 < blocks) {
            int p = pinches[b];
            out.d.bags.push_back({rp.back().first, rp.back().second, p});
        }
    }
    out.d.host = out.g;
    return out;
}

int lib_pathwidth(const Multigraph& g) { return pathwidth(g); }

}  // namespace

TEST_CASE("decomposition validation and metrics") {
    SECTION("path graph with edge bags") {
        Multigraph g = path_graph(5);
        PathDecomposition d{g, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
        DecompositionMetrics m = validate(d);
        CHECK(m.width == 1);
        CHECK(m.interior_width == 1);
        CHECK(m.order == 4);
        CHECK(m.adhesion == 1);
        CHECK(m.proper);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == 1);
    }

    SECTION("complete graph in one bag") {
        Multigraph g = complete_graph(4);
        PathDecomposition d{g, {{0, 1, 2, 3}}};
        DecompositionMetrics m = validate(d);
        CHECK(m.width == 3);
        CHECK(m.order == 1);
        CHECK(m.interior_width == -1);
        CHECK(m.adhesion == 0);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == 0);
    }

    SECTION("uncovered edge is reported") {
        Multigraph g = path_graph(4);
        PathDecomposition d{g, {{0, 1}, {2, 3}}};
        REQUIRE_THROWS_MATCHES(validate(d), bad_input,
                               Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                                   "edge 1") &&
                                   Catch::Matchers::ContainsSubstring("not inside any bag")));
    }

    SECTION("non-contiguous vertex is reported") {
        Multigraph g = path_graph(3);
        PathDecomposition d{g, {{0, 1}, {1, 2}, {0, 2}}};
        REQUIRE_THROWS_MATCHES(
            validate(d), bad_input,
            Catch::Matchers::MessageMatches(
                Catch::Matchers::ContainsSubstring("vertex 0") &&
                Catch::Matchers::ContainsSubstring("non-contiguous")));
    }

    SECTION("missing vertex is reported") {
        Multigraph g = path_graph(2);
        g.add_vertex_id(7);
        PathDecomposition d{g, {{0, 1}}};
        REQUIRE_THROWS_MATCHES(validate(d), bad_input,
                               Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                                   "vertex 7") &&
                                   Catch::Matchers::ContainsSubstring("no bag")));
    }

    SECTION("unknown vertex in a bag is reported") {
        Multigraph g = path_graph(2);
        PathDecomposition d{g, {{0, 1, 9}}};
        REQUIRE_THROWS_MATCHES(validate(d), bad_input,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("unknown vertex 9")));
    }

    SECTION("improper decompositions are valid but flagged") {
        Multigraph g = path_graph(3);
        PathDecomposition d{g, {{0, 1}, {1, 2}, {2}}};
        DecompositionMetrics m = validate(d);
        CHECK_FALSE(m.proper);
        PathDecomposition n = normalize_proper(d);
        CHECK(n.order() == 2);
        CHECK(validate(n).proper);
    }
}

TEST_CASE("exact path-width search") {
    SECTION("fixed values") {
        CHECK(lib_pathwidth(path_graph(2)) == 1);
        CHECK(lib_pathwidth(path_graph(9)) == 1);
        CHECK(lib_pathwidth(star_graph(5)) == 1);
        for (int n = 3; n <= 8; ++n) CHECK(lib_pathwidth(cycle_graph(n)) == 2);
        for (int n = 2; n <= 6; ++n) CHECK(lib_pathwidth(complete_graph(n)) == n - 1);
        CHECK(lib_pathwidth(ladder_graph(6)) == 2);
        CHECK(lib_pathwidth(grid_graph(3, 3)) == 3);
        CHECK(lib_pathwidth(petersen_graph()) == 5);
    }

    SECTION("bounded search finds decompositions exactly at the threshold") {
        auto c6 = cycle_graph(6);
        auto d = find_path_decomposition(c6, 2);
        REQUIRE(d.has_value());
        DecompositionMetrics m = validate(*d);
        CHECK(m.width == 2);
        CHECK(m.proper);
        CHECK_FALSE(find_path_decomposition(c6, 1).has_value());

        auto star = star_graph(5);
        auto ds = find_path_decomposition(star, 1);
        REQUIRE(ds.has_value());
        CHECK(validate(*ds).width == 1);

        auto k5 = complete_graph(5);
        CHECK_FALSE(find_path_decomposition(k5, 3).has_value());
        auto dk = find_path_decomposition(k5, 4);
        REQUIRE(dk.has_value());
        CHECK(validate(*dk).width == 4);
    }

    SECTION("degenerate graphs") {
        Multigraph empty;
        CHECK(lib_pathwidth(empty) == -1);
        auto de = find_path_decomposition(empty, 0);
        REQUIRE(de.has_value());
        CHECK(de->order() == 1);

        Multigraph single;
        single.add_vertex();
        CHECK(lib_pathwidth(single) == 0);

        Multigraph tri2 = complete_graph(3);
        for (int i = 3; i < 6; ++i) tri2.add_vertex_id(i);
        tri2.add_edge(3, 4);
        tri2.add_edge(4, 5);
        tri2.add_edge(5, 3);
        CHECK(lib_pathwidth(tri2) == 2);
    }

    SECTION("multiplicities and loops do not change the width") {
        Multigraph g = complete_graph(3);
        g.add_edge(0, 1);
        g.add_edge(2, 2);
        CHECK(lib_pathwidth(g) == 2);
        auto d = find_path_decomposition(g, 2);
        REQUIRE(d.has_value());
        CHECK(validate(*d).width == 2);
    }
}

TEST_CASE("path-width agrees with the exhaustive ordering oracle") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& g : oracle::all_simple_graphs(n)) {
            int want = oracle::pathwidth_bruteforce(g);
            INFO("n=" << n << " edges=" << g.edges.size());
            REQUIRE(lib_pathwidth(g) == want);
            auto d = find_path_decomposition(g, want);
            REQUIRE(d.has_value());
            CHECK(validate(*d).width == want);
            if (want > 0) CHECK_FALSE(find_path_decomposition(g, want - 1).has_value());
        }
    }

    rng64 rng(20260815);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 7 + trial % 2;
        Multigraph g = oracle::random_simple_graph(n, 2, 5, rng);
        int want = oracle::pathwidth_bruteforce(g);
        REQUIRE(lib_pathwidth(g) == want);
        auto d = find_path_decomposition(g, want);
        REQUIRE(d.has_value());
        CHECK(validate(*d).width == want);
    }
}

TEST_CASE("coarsening") {
    auto c6 = cycle_graph(6);
    auto d = *find_path_decomposition(c6, 2);
    DecompositionMetrics dm = validate(d);

    SECTION("identity and total merges") {
        PathDecomposition same = coarsen(d, {});
        CHECK(same.bags == d.bags);

        std::set<int> all;
        for (int i = 1; i < d.order(); ++i) all.insert(i);
        PathDecomposition one = coarsen(d, all);
        REQUIRE(one.order() == 1);
        std::set<int> everything(c6.vertices.begin(), c6.vertices.end());
        CHECK(one.bags[0] == everything);
    }

    SECTION("pairwise merging halves the order and keeps the width small") {
        std::set<int> odds;
        for (int i = 1; i < d.order(); i += 2) odds.insert(i);
        PathDecomposition half = coarsen(d, odds);
        CHECK(half.order() == (d.order() + 1) / 2);
        DecompositionMetrics m = validate(half);
        CHECK(m.width <= 2 * dm.width + 1);
    }

    SECTION("out-of-range merge points are rejected") {
        CHECK_THROWS_AS(coarsen(d, {0}), bad_input);
        CHECK_THROWS_AS(coarsen(d, {d.order()}), bad_input);
    }

    SECTION("random coarsenings always validate") {
        rng64 rng(991);
        int trials = 0;
        while (trials < 500) {
            int n = 4 + (int)rng.below(5);
            Multigraph g = oracle::random_simple_graph(n, 1, 2, rng);
            auto dd = find_path_decomposition(g, lib_pathwidth(g));
            REQUIRE(dd.has_value());
            if (dd->order() < 2) continue;
            std::set<int> merge;
            for (int i = 1; i < dd->order(); ++i)
                if (rng.coin()) merge.insert(i);
            PathDecomposition c = coarsen(*dd, merge);
            CHECK(c.order() == dd->order() - (int)merge.size());
            validate(c);  // throws on any axiom violation
            ++trials;
        }
    }
}

TEST_CASE("interior node classification") {
    SECTION("ladder strip nodes are unbroken at its adhesion") {
        Multigraph g = ladder_graph(8);
        PathDecomposition d = ladder_strip(g, 8);
        REQUIRE(validate(d).adhesion == 2);
        auto cls = classify_nodes(d, 2);
        REQUIRE((int)cls.size() == d.order() - 2);
        for (const auto& [x, nc] : cls) {
            INFO("node " << x);
            CHECK(nc.unbroken);
        }
    }

    SECTION("path decomposition is broken above its adhesion") {
        Multigraph g = path_graph(6);
        PathDecomposition d{g, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}};
        auto cls = classify_nodes(d, 2);
        REQUIRE((int)cls.size() == 3);
        for (const auto& [x, nc] : cls) {
            CHECK_FALSE(nc.unbroken);
            std::set<int> both;
            std::set_intersection(nc.a_side.begin(), nc.a_side.end(), nc.b_side.begin(),
                                  nc.b_side.end(), std::inserter(both, both.begin()));
            CHECK((int)both.size() <= 1);
            std::set<int> uni = nc.a_side;
            uni.insert(nc.b_side.begin(), nc.b_side.end());
            CHECK(uni == d.bags[x]);
            for (int v : d.left_set(x)) CHECK(nc.a_side.count(v));
            for (int v : d.right_set(x)) CHECK(nc.b_side.count(v));
            for (const auto& e : g.edges) {
                if (!d.bags[x].count(e.u) || !d.bags[x].count(e.v)) continue;
                bool ua = nc.a_side.count(e.u) && !nc.b_side.count(e.u);
                bool vb = nc.b_side.count(e.v) && !nc.a_side.count(e.v);
                bool va = nc.a_side.count(e.v) && !nc.b_side.count(e.v);
                bool ub = nc.b_side.count(e.u) && !nc.a_side.count(e.u);
                CHECK_FALSE(((ua && vb) || (va && ub)));
            }
        }
    }

    SECTION("pinched ladders mix both kinds") {
        PinchedLadder pl = pinched_ladder(3, 3);
        REQUIRE(validate(pl.d).adhesion == 2);
        auto cls = classify_nodes(pl.d, 2);
        int unbroken = 0, broken = 0;
        for (const auto& [x, nc] : cls) (nc.unbroken ? unbroken : broken)++;
        CHECK(unbroken > 0);
        CHECK(broken == 4);  // two bags around each of the two pinches
    }

    SECTION("degenerate and error cases") {
        Multigraph g = complete_graph(3);
        PathDecomposition one{g, {{0, 1, 2}}};
        CHECK(classify_nodes(one, 0).empty());

        Multigraph p = path_graph(4);
        PathDecomposition d{p, {{0, 1}, {1, 2}, {2, 3}}};
        CHECK_THROWS_AS(classify_nodes(d, 0), bad_input);
    }
}

TEST_CASE("linked refinement") {
    auto constant = [](int target) { return [target](int) { return target; }; };

    SECTION("long ladder strips refine to their adhesion") {
        Multigraph g = ladder_graph(51);
        PathDecomposition d = ladder_strip(g, 51);
        LinkedRefinement r = refine_to_linked(d, constant(10));
        CHECK(r.p == 2);
        CHECK_FALSE(r.below_threshold);
        DecompositionMetrics m = validate(r.dec);
        CHECK(m.order >= 10);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == 2);
        CHECK(m.interior_width <= 3);
    }

    SECTION("zero adhesion returns the input unchanged") {
        Multigraph tri2 = complete_graph(3);
        for (int i = 3; i < 6; ++i) tri2.add_vertex_id(i);
        tri2.add_edge(3, 4);
        tri2.add_edge(4, 5);
        tri2.add_edge(5, 3);
        PathDecomposition d{tri2, {{0, 1, 2}, {3, 4, 5}}};
        LinkedRefinement r = refine_to_linked(d, constant(1));
        CHECK(r.p == 0);
        CHECK_FALSE(r.below_threshold);
        CHECK(r.dec.bags == d.bags);
    }

    SECTION("path decompositions refine to 1-linked") {
        Multigraph g = path_graph(12);
        PathDecomposition d;
        d.host = g;
        for (int i = 0; i + 1 < 12; ++i) d.bags.push_back({i, i + 1});
        LinkedRefinement r = refine_to_linked(d, constant(5));
        CHECK(r.p == 1);
        CHECK_FALSE(r.below_threshold);
        DecompositionMetrics m = validate(r.dec);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == 1);
        CHECK(m.order >= 5);
    }

    SECTION("pinches force the merge recursion down to 1-linked") {
        PinchedLadder pl = pinched_ladder(11, 3);
        LinkedRefinement r = refine_to_linked(pl.d, constant(4));
        CHECK(r.p == 1);
        CHECK_FALSE(r.below_threshold);
        DecompositionMetrics m = validate(r.dec);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == 1);
        CHECK(m.adhesion <= 1);
        CHECK(m.order >= 4);
    }

    SECTION("inputs too short for the target are flagged") {
        Multigraph g = ladder_graph(4);
        PathDecomposition d = ladder_strip(g, 4);
        LinkedRefinement r = refine_to_linked(d, constant(50));
        CHECK(r.below_threshold);
        CHECK(r.p <= 2);
        DecompositionMetrics m = validate(r.dec);
        REQUIRE(m.linked_p.has_value());
        CHECK(*m.linked_p == r.p);
    }

    SECTION("certificates hold over random decompositions") {
        rng64 rng(777);
        auto f3 = constant(3);
        int trials = 0;
        while (trials < 200) {
            int n = 4 + (int)rng.below(5);
            Multigraph g = oracle::random_simple_graph(n, 2, 5, rng);
            auto d = find_path_decomposition(g, lib_pathwidth(g));
            REQUIRE(d.has_value());
            DecompositionMetrics dm = validate(*d);
            LinkedRefinement r = refine_to_linked(*d, f3);
            CHECK(r.p <= dm.adhesion);
            DecompositionMetrics m = validate(r.dec);
            REQUIRE(m.linked_p.has_value());
            CHECK(*m.linked_p == r.p);
            ++trials;
        }
    }
}

TEST_CASE("decomposition text round-trip") {
    Multigraph g = cycle_graph(6);
    auto d = *find_path_decomposition(g, 2);
    std::string text = path_decomposition_to_string(d);
    PathDecomposition back = read_path_decomposition(text, g);
    CHECK(back.bags == d.bags);
    CHECK(path_decomposition_to_string(back) == text);

    SECTION("parse errors carry line numbers") {
        try {
            read_path_decomposition(std::string("orders 3\n"), g);
            FAIL("expected parse error");
        } catch (const parse_error& e) {
            CHECK(e.line == 1);
        }
        try {
            read_path_decomposition(std::string("order 2\n0: 0 1\n5: 2 3\n"), g);
            FAIL("expected parse error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
        try {
            read_path_decomposition(std::string("order 1\n0: 0 x\n"), g);
            FAIL("expected parse error");
        } catch (const parse_error& e) {
            CHECK(e.line == 2);
        }
        CHECK_THROWS_AS(read_path_decomposition(std::string("order 2\n0: 1\n"), g), parse_error);
    }
}
