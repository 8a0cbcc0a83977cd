#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgc/degeneracy.hpp"
#include "hgc/finisher.hpp"
#include "hgc/rand_util.hpp"
#include "test_util.hpp"

using namespace hgc;

TEST_CASE("greedy colors a single edge from 2-color lists") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la = ListAssignment::uniform(3, 2);
    DegeneracyResult deg = degeneracy(h);
    Coloring col = greedy_degenerate(h, la, deg.order, {});
    VerifyReport rep = verify(h, la, col);
    CHECK(rep.proper);
    // reverse order colors 2 then 1 then 0: the edge only constrains the
    // last vertex, which dodges the shared color
    CHECK(col.assignment[2] == 0);
    CHECK(col.assignment[1] == 0);
    CHECK(col.assignment[0] == 1);
}

TEST_CASE("kappa+1 lists always suffice (small exhaustive sweep)") {
    // all 3-uniform hypergraphs on 6 vertices with at most 3 edges, plus a
    // randomized sweep of larger ones; lists drawn from a 3-color palette
    std::vector<std::vector<int>> all_edges;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) all_edges.push_back({a, b, c});
    Rng rng(2024);
    int cases = 0;
    for (size_t i = 0; i < all_edges.size(); ++i)
        for (size_t j = i; j < all_edges.size(); ++j)
            for (size_t l = j; l < all_edges.size(); ++l) {
                std::vector<std::vector<int>> edges{all_edges[i]};
                if (j != i) edges.push_back(all_edges[j]);
                if (l != j && l != i) edges.push_back(all_edges[l]);
                Hypergraph h = build(3, 6, edges);
                DegeneracyResult deg = degeneracy(h);
                if (deg.kappa + 1 > 3) continue;
                // a few random list assignments of size kappa+1 from {0,1,2}
                for (int rep = 0; rep < 3; ++rep) {
                    ListAssignment la;
                    la.lists.resize(6);
                    for (int v = 0; v < 6; ++v) {
                        std::vector<int> palette{0, 1, 2};
                        while (static_cast<int>(palette.size()) > deg.kappa + 1)
                            palette.erase(palette.begin() + rng.below_int(palette.size()));
                        la.lists[v] = palette;
                    }
                    Coloring col = greedy_degenerate(h, la, deg.order, {});
                    REQUIRE(verify(h, la, col).proper);
                    ++cases;
                }
            }
    CHECK(cases > 1000);
}

TEST_CASE("kappa+1 lists suffice on larger random instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Hypergraph h = test_util::random_instance(3, 60, 90, 300 + seed);
        DegeneracyResult deg = degeneracy(h);
        ListAssignment la = ListAssignment::uniform(h.n, deg.kappa + 1);
        Coloring col = greedy_degenerate(h, la, deg.order, {});
        REQUIRE(verify(h, la, col).proper);
    }
}

TEST_CASE("forbidden colors can exhaust a list") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la = ListAssignment::uniform(3, 2);
    std::vector<std::vector<int>> forbidden(3);
    forbidden[1] = {0, 1};
    DegeneracyResult deg = degeneracy(h);
    CHECK_THROWS_AS(greedy_degenerate(h, la, deg.order, forbidden), GreedyExhausted);
    try {
        greedy_degenerate(h, la, deg.order, forbidden);
    } catch (const GreedyExhausted& ex) {
        CHECK(ex.vertex == 1);
        CHECK(ex.forbidden_count == 2);
    }
}

TEST_CASE("final phase with nothing uncolored returns phi") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la = ListAssignment::uniform(3, 2);
    Coloring phi(3);
    phi.assignment = {0, 0, 1};
    FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
    CHECK(inst.events.empty());
    FinalPhaseResult res = final_phase(inst, 100, 1);
    CHECK(res.success);
    CHECK(res.coloring.assignment == phi.assignment);
    CHECK(res.resamples == 0);
}

TEST_CASE("make rejects an improper partial coloring") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la = ListAssignment::uniform(3, 2);
    Coloring bad(3);
    bad.assignment = {1, 1, 1};
    CHECK_THROWS_AS(FinalPhaseInstance::make(h, la, bad), std::invalid_argument);
}

TEST_CASE("one uncolored vertex per edge, lists of size 2: MT finishes") {
    // edges {a_i, b_i, u_i} with a_i, b_i colored 0; u_i must end up 1
    int m = 12;
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < m; ++i) edges.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    Hypergraph h = build(3, 3 * m, edges);
    ListAssignment la = ListAssignment::uniform(h.n, 2);
    Coloring phi(h.n);
    for (int i = 0; i < m; ++i) {
        phi.assignment[3 * i] = 0;
        phi.assignment[3 * i + 1] = 0;
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
        CHECK(inst.events.size() == static_cast<size_t>(m));
        FinalPhaseResult res = final_phase(inst, 100000, seed);
        REQUIRE(res.success);
        REQUIRE(verify(h, la, res.coloring).proper);
        // resampling never touches the phi part
        for (int i = 0; i < m; ++i) {
            CHECK(res.coloring.assignment[3 * i] == 0);
            CHECK(res.coloring.assignment[3 * i + 2] == 1);
        }
    }
}

TEST_CASE("budget exhaustion reports and emits no total coloring") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la;
    la.lists = {{0}, {0}, {0}};  // the lone uncolored vertex can only pick 0
    Coloring phi(3);
    phi.assignment = {0, 0, Coloring::kNone};
    FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
    FinalPhaseResult res = final_phase(inst, 50, 3);
    CHECK_FALSE(res.success);
    CHECK_FALSE(res.error.empty());
    CHECK_FALSE(res.coloring.is_total());
}

TEST_CASE("lll certificate: empty family is vacuously certified") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la = ListAssignment::uniform(3, 2);
    Coloring phi(3);
    phi.assignment = {0, 1, Coloring::kNone};  // colored part not monochromatic
    FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
    CHECK(inst.events.empty());
    CertReport rep = lll_certificate(inst);
    CHECK(rep.certified);
    CHECK(rep.event_count == 0);
}

TEST_CASE("independent events with 2-color lists sit exactly at the bound") {
    // disjoint edges, two uncolored vertices each, common list {0,1},
    // third vertex colored 0: mu = 1/4, dependency sum = mu itself
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    Hypergraph h = build(3, 15, edges);
    ListAssignment la = ListAssignment::uniform(15, 2);
    Coloring phi(15);
    for (int i = 0; i < 5; ++i) phi.assignment[3 * i] = 0;
    FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
    CHECK(inst.events.size() == 5);
    CertReport rep = lll_certificate(inst);
    CHECK(rep.certified);
    CHECK(rep.max_mu == doctest::Approx(0.25));
    CHECK(rep.max_dep_sum == doctest::Approx(0.0));  // no other event shares a variable
    FinalPhaseResult res = final_phase(inst, 100000, 5);
    CHECK(res.success);
    CHECK(verify(h, la, res.coloring).proper);
}

TEST_CASE("certificate fails when lists are too small") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    ListAssignment la;
    la.lists = {{0}, {0}, {0}};
    Coloring phi(3);
    phi.assignment = {0, 0, Coloring::kNone};
    FinalPhaseInstance inst = FinalPhaseInstance::make(h, la, phi);
    CertReport rep = lll_certificate(inst);
    CHECK_FALSE(rep.certified);
    CHECK_FALSE(rep.prob_condition);  // mu = 1 > 1/4
}
