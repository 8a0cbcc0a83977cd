#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgc/cycles.hpp"
#include "hgc/randgen.hpp"
#include "test_util.hpp"

using namespace hgc;

TEST_CASE("two 3-edges sharing two vertices form a 2-cycle") {
    Hypergraph h = build(3, 4, {{0, 1, 2}, {0, 1, 3}});
    CycleReport rep = short_cycles(h, 4, 8);
    CHECK(rep.counts[2] == 1);
    CHECK(rep.counts[3] == 0);
    CHECK(rep.counts[4] == 0);
    CHECK(rep.witnesses[2].front() == std::vector<int>{0, 1});
    CHECK(rep.vertices_in_short_cycles == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(rep.girth_at_least_5());
}

TEST_CASE("graph triangle is a 3-cycle and nothing else") {
    Hypergraph h = build(2, 3, {{0, 1}, {1, 2}, {0, 2}});
    CycleReport rep = short_cycles(h, 4, 8);
    CHECK(rep.counts[2] == 0);
    CHECK(rep.counts[3] == 1);
    CHECK(rep.counts[4] == 0);
}

TEST_CASE("loose triangle and loose 4-cycle for k = 3") {
    // three edges joined pairwise through distinct corners
    Hypergraph tri = build(3, 6, {{0, 1, 3}, {1, 2, 4}, {0, 2, 5}});
    CycleReport rep3 = short_cycles(tri, 4, 8);
    CHECK(rep3.counts[2] == 0);
    CHECK(rep3.counts[3] == 1);
    CHECK(rep3.counts[4] == 0);

    Hypergraph quad = build(3, 8, {{0, 1, 4}, {1, 2, 5}, {2, 3, 6}, {0, 3, 7}});
    CycleReport rep4 = short_cycles(quad, 4, 8);
    CHECK(rep4.counts[2] == 0);
    CHECK(rep4.counts[3] == 0);
    CHECK(rep4.counts[4] == 1);
    CHECK(rep4.girth_at_least_5() == false);
}

TEST_CASE("empty and matching hypergraphs have girth >= 5") {
    Hypergraph h = build(3, 9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
    CycleReport rep = short_cycles(h, 4, 8);
    CHECK(rep.girth_at_least_5());
    CHECK(rep.vertices_in_short_cycles.empty());
}

TEST_CASE("max_len limits the scan") {
    Hypergraph quad = build(3, 8, {{0, 1, 4}, {1, 2, 5}, {2, 3, 6}, {0, 3, 7}});
    CycleReport rep = short_cycles(quad, 3, 8);
    CHECK(rep.counts[4] == 0);  // not scanned
    CHECK(rep.counts[3] == 0);
}

TEST_CASE("random H(3, n=12, d=2) matches the exhaustive oracle") {
    GenParams params;
    params.k = 3;
    params.n = 12;
    params.d = 2.0;
    params.seed = 0;
    Hypergraph h = generate(params);
    auto expect = test_util::oracle_minimal_cycles(h);
    CycleReport rep = short_cycles(h, 4, 8);
    for (int len = 2; len <= 4; ++len) {
        CHECK(rep.exact[len]);
        CHECK(rep.counts[len] == expect[len]);
    }
}

TEST_CASE("oracle equivalence on random instances, k in {2,3,4}") {
    for (int k = 2; k <= 4; ++k) {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            int n = 6 + static_cast<int>(seed % 7);
            int m = 4 + static_cast<int>(seed % 9);
            Hypergraph h = test_util::random_instance(k, n, m, 1000 * k + seed);
            auto expect = test_util::oracle_minimal_cycles(h);
            CycleReport rep = short_cycles(h, 4, 4);
            for (int len = 2; len <= 4; ++len) {
                INFO("k=", k, " seed=", seed, " len=", len);
                REQUIRE(rep.counts[len] == expect[len]);
            }
        }
    }
}

TEST_CASE("denser small instances still match the oracle") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Hypergraph h = test_util::random_instance(3, 9, 20, 77 + seed);
        auto expect = test_util::oracle_minimal_cycles(h);
        CycleReport rep = short_cycles(h, 4, 4);
        for (int len = 2; len <= 4; ++len) {
            INFO("seed=", seed, " len=", len);
            REQUIRE(rep.counts[len] == expect[len]);
        }
    }
}

TEST_CASE("k=2 counts equal graph-sense cycle counts") {
    // exhaustive over all simple graphs on up to 6 vertices
    for (int n : {4, 5, 6}) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        for (int mask = 0; mask < (1 << pairs.size()); ++mask) {
            std::vector<std::vector<int>> edges;
            for (size_t i = 0; i < pairs.size(); ++i)
                if (mask & (1 << i)) edges.push_back({pairs[i].first, pairs[i].second});
            Hypergraph g = build(2, n, edges);
            auto [tri, quad] = test_util::graph_cycle_counts(g);
            CycleReport rep = short_cycles(g, 4, 1);
            REQUIRE(rep.counts[2] == 0);
            REQUIRE(rep.counts[3] == tri);
            REQUIRE(rep.counts[4] == quad);
        }
    }
    // random graphs on 7 vertices
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Hypergraph g = test_util::random_instance(2, 7, 3 + seed % 16, 555 + seed);
        auto [tri, quad] = test_util::graph_cycle_counts(g);
        CycleReport rep = short_cycles(g, 4, 1);
        REQUIRE(rep.counts[3] == tri);
        REQUIRE(rep.counts[4] == quad);
    }
}

TEST_CASE("witness cap limits storage but not counts or vertices") {
    Hypergraph h = build(3, 6, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 1, 5}});
    CycleReport rep = short_cycles(h, 4, 2);
    CHECK(rep.counts[2] == 6);  // all pairs share {0,1}
    CHECK(rep.witnesses[2].size() == 2);
    CHECK(rep.vertices_in_short_cycles.size() == 6);
    CHECK(rep.vertices_complete);
}

TEST_CASE("work cap marks counts non-exact") {
    Hypergraph h = test_util::random_instance(3, 20, 40, 3);
    CycleScanOptions opt;
    opt.work_cap = 5;
    CycleReport rep = short_cycles(h, opt);
    CHECK_FALSE(rep.vertices_complete);
}
