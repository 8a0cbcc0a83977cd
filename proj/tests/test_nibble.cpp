#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hgc/nibble.hpp"
#include "hgc/pipeline.hpp"
#include "hgc/randgen.hpp"
#include "test_util.hpp"

using namespace hgc;

namespace {

NibbleState fresh_state(const Hypergraph& h, int q, std::uint64_t seed) {
    return NibbleState(h, ListAssignment::uniform(h.n, q), seed);
}

}  // namespace

TEST_CASE("equalize is a fixed point on a Q(i)-exact state") {
    // two disjoint edges: t_{1,2}(v,c) = 1 for every v, c
    Hypergraph h = build(3, 6, {{0, 1, 2}, {3, 4, 5}});
    NibbleState st = fresh_state(h, 4, 1);
    equalize(st, 4, {0, 1});
    CHECK(st.dummy_groups.empty());
    for (int v = 0; v < 6; ++v) CHECK(st.lists[v].size() == 4);
    for (int v = 0; v < 6; ++v)
        for (int pos = 0; pos < 4; ++pos) {
            CHECK(st.t_total(v, pos, 1) == 0);
            CHECK(st.t_total(v, pos, 2) == 1);
        }
}

TEST_CASE("equalize pads deficits with dummy groups and recounts exactly") {
    Hypergraph h = build(3, 1, {});  // a single isolated vertex
    NibbleState st(h, ListAssignment::uniform(1, 3), 7);
    equalize(st, 3, {2, 0});
    REQUIRE(st.dummy_groups.size() == 3);  // one r=1 group per color
    for (const auto& grp : st.dummy_groups) {
        CHECK(grp.vertex == 0);
        CHECK(grp.r == 1);
        CHECK(grp.count == 2);
    }
    for (int pos = 0; pos < 3; ++pos) {
        CHECK(st.t_total(0, pos, 1) == 2);
        CHECK(st.t_total(0, pos, 2) == 0);
    }
}

TEST_CASE("equalize trims the largest color ids") {
    Hypergraph h = build(3, 3, {});
    NibbleState st(h, ListAssignment::uniform(3, 5), 7);
    equalize(st, 3, {0, 0});
    for (int v = 0; v < 3; ++v) CHECK(st.lists[v] == std::vector<int>{0, 1, 2});
}

TEST_CASE("equalize signals P(i) violations") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    NibbleState st = fresh_state(h, 3, 1);
    CHECK_THROWS_AS(equalize(st, 5, {0, 1}), EqualizeError);  // lists too short
    try {
        equalize(st, 5, {0, 1});
    } catch (const EqualizeError& err) {
        CHECK(err.vertex >= 0);
        CHECK(err.color == -1);
    }
    NibbleState st2 = fresh_state(h, 3, 1);
    CHECK_THROWS_AS(equalize(st2, 3, {0, 0}), EqualizeError);  // t_{1,2} = 1 > 0
}

TEST_CASE("sample honors the activation extremes") {
    Hypergraph h = build(3, 6, {{0, 1, 2}, {3, 4, 5}});
    NibbleState st = fresh_state(h, 3, 3);
    equalize(st, 3, {1, 1});
    Proposal none = sample(st, 0.0);
    Proposal all = sample(st, 1.0);
    for (int v = 0; v < 6; ++v) {
        CHECK(none.active[v] == 0);
        CHECK(all.active[v] == 1);
        CHECK(none.color_idx[v] >= 0);
        CHECK(none.color_idx[v] < 3);
    }
    for (char b : none.dummy_blocked) CHECK(b == 0);
}

TEST_CASE("empirical activation frequency within 3 sigma") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    NibbleState st = fresh_state(h, 3, 99);
    double alpha = 0.3;
    int trials = 100000, active = 0;
    for (int t = 0; t < trials; ++t) {
        Proposal prop = sample(st, alpha);
        active += prop.active[0];
    }
    double freq = static_cast<double>(active) / trials;
    double sigma = std::sqrt(alpha * (1 - alpha) / trials);
    CHECK(std::fabs(freq - alpha) <= 3 * sigma);
}

TEST_CASE("available: deactivated co-vertex keeps every color open") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    NibbleState st = fresh_state(h, 3, 1);
    Proposal prop = sample(st, 0.0);  // nobody active
    for (int c = 0; c < 3; ++c) CHECK(available(st, prop, 0, c));
}

TEST_CASE("available: colored-c vertex plus activated assigned-c vertex blocks c") {
    Hypergraph h = build(3, 3, {{0, 1, 2}});
    NibbleState st = fresh_state(h, 3, 1);
    // color vertex 1 with c = 2 by hand
    st.phi.assignment[1] = 2;
    st.uncolored_mask[1] = 0;
    st.uncolored = {0, 2};
    Proposal prop;
    prop.color_idx.assign(3, 0);
    prop.active.assign(3, 0);
    prop.color_idx[2] = 2;  // lists are [0,1,2], index 2 = color 2
    prop.active[2] = 1;
    CHECK_FALSE(available(st, prop, 0, 2));
    CHECK(available(st, prop, 0, 0));
    CHECK(available(st, prop, 0, 1));
    prop.active[2] = 0;
    CHECK(available(st, prop, 0, 2));
}

TEST_CASE("available agrees with a brute-force evaluator on all proposals") {
    // 5 vertices, 2 edges sharing vertex 0, lists of size 2
    Hypergraph h = build(3, 5, {{0, 1, 2}, {0, 3, 4}});
    NibbleState st = fresh_state(h, 2, 1);
    // enumerate all 2^5 activation patterns x 2^5 color choices
    Proposal prop;
    prop.color_idx.assign(5, 0);
    prop.active.assign(5, 0);
    for (int colors = 0; colors < 32; ++colors)
        for (int act = 0; act < 32; ++act) {
            for (int v = 0; v < 5; ++v) {
                prop.color_idx[v] = (colors >> v) & 1;
                prop.active[v] = (act >> v) & 1;
            }
            for (int v = 0; v < 5; ++v)
                for (int c = 0; c < 2; ++c) {
                    // brute force straight from the definition
                    bool blocked = false;
                    for (int e : h.incidence[v]) {
                        bool all = true;
                        for (int u : h.edges[e]) {
                            if (u == v) continue;
                            if (!prop.active[u] || prop.color_idx[u] != c) all = false;
                        }
                        if (all) blocked = true;
                    }
                    CHECK(available(st, prop, v, c) == !blocked);
                }
        }
}

TEST_CASE("evaluate_bad_events: fully deactivated proposal violates nothing") {
    Hypergraph h = test_util::random_instance(3, 12, 10, 5);
    NibbleState st = fresh_state(h, 4, 2);
    equalize(st, 4, {2, 6});
    Proposal prop = sample(st, 0.0);
    auto events = evaluate_bad_events(st, prop, 4.0, {2.0, 6.0});
    CHECK(events.empty());
}

TEST_CASE("evaluate_bad_events flags a constructed depletion") {
    // vertex 0 shares three edges; all co-vertices activated and assigned
    // the matching colors kill all of 0's list
    Hypergraph h = build(3, 7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}});
    NibbleState st = fresh_state(h, 3, 1);
    Proposal prop;
    prop.color_idx.assign(7, 0);
    prop.active.assign(7, 1);
    prop.color_idx[1] = prop.color_idx[2] = 0;
    prop.color_idx[3] = prop.color_idx[4] = 1;
    prop.color_idx[5] = prop.color_idx[6] = 2;
    // survivors(0) = 0
    auto events = evaluate_bad_events(st, prop, 1.0, {3.0, 3.0});
    bool found = false;
    for (const auto& ev : events)
        if (ev.type == 0 && ev.v == 0) found = true;
    CHECK(found);
}

TEST_CASE("dummy-only survival matches Keep within 3 sigma") {
    // Q(i)-exact gadget: lone vertex, all conflicts via dummies
    Hypergraph h = build(3, 1, {});
    NibbleState st(h, ListAssignment::uniform(1, 8), 17);
    equalize(st, 8, {3, 25});
    double alpha = 0.25;
    double keep = keep_value(3, alpha, 8.0, {3.0, 25.0});
    int trials = 10000, alive = 0;
    for (int t = 0; t < trials; ++t) {
        Proposal prop = sample(st, alpha);
        if (available(st, prop, 0, 5)) ++alive;
    }
    double est = static_cast<double>(alive) / trials;
    double sigma = std::sqrt(keep * (1 - keep) / trials);
    CHECK(std::fabs(est - keep) <= 3 * sigma);
}

TEST_CASE("moser_tardos on an edgeless instance keeps exactly the activated") {
    Hypergraph h = build(3, 20, {});
    NibbleState st = fresh_state(h, 3, 11);
    equalize(st, 3, {0, 0});
    MtLimits limits;
    IterationOutcome out = moser_tardos_iterate(st, 0.5, 1.0, {0.0, 0.0}, limits);
    CHECK(out.resamples == 0);
    CHECK(out.certified);
    for (int v = 0; v < 20; ++v) {
        bool colored = st.phi.assignment[v] != Coloring::kNone;
        CHECK(colored == (out.accepted.active[v] == 1));
    }
    CHECK(st.dummy_groups.empty());
    CHECK(st.iteration == 2);
}

TEST_CASE("iteration applies the retention rule and the list update") {
    Hypergraph h = test_util::random_instance(3, 30, 35, 9);
    NibbleState before = fresh_state(h, 5, 21);
    equalize(before, 5, {3, 10});
    NibbleState st = before;  // the engine consumes st; before stays for checks
    MtLimits limits;
    limits.max_resamples = 200;
    IterationOutcome out = moser_tardos_iterate(st, 0.3, 1.0, {3.0, 10.0}, limits);

    for (int v : before.uncolored) {
        bool retained =
            out.accepted.active[v] &&
            available(before, out.accepted, v, before.lists[v][out.accepted.color_idx[v]]);
        CHECK((st.phi.assignment[v] != Coloring::kNone) == retained);
        if (!retained) {
            // L_v(i+1) must be exactly the available colors of L_v(i)
            std::vector<int> expect;
            for (int c : before.lists[v])
                if (available(before, out.accepted, v, c)) expect.push_back(c);
            CHECK(st.lists[v] == expect);
        }
    }
    // no monochromatic edge among colored vertices
    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        int c0 = st.phi.assignment[ed[0]];
        bool mono = c0 != Coloring::kNone;
        for (int u : ed) mono = mono && st.phi.assignment[u] == c0;
        CHECK_FALSE(mono);
    }
}

TEST_CASE("event scopes stay within distance 3 of the event vertex") {
    Hypergraph h = test_util::random_instance(3, 40, 50, 13);
    NibbleState st = fresh_state(h, 4, 5);
    equalize(st, 4, {4, 12});
    // distance via shared-edge hops
    auto distances = [&](int src) {
        std::vector<int> dist(h.n, 1 << 20);
        dist[src] = 0;
        std::vector<int> frontier{src};
        for (int d = 1; d <= 4 && !frontier.empty(); ++d) {
            std::vector<int> next;
            for (int v : frontier)
                for (int e : h.incidence[v])
                    for (int u : h.edges[e])
                        if (dist[u] > d) {
                            dist[u] = d;
                            next.push_back(u);
                        }
            frontier = std::move(next);
        }
        return dist;
    };
    BadEvent a{0, 7, -1, 0};
    EventScope sa = event_scope(st, a);
    auto dist7 = distances(7);
    for (int v : sa.real_vertices) CHECK(dist7[v] <= 3);
    BadEvent b{1, 7, st.lists[7][0], 1};
    EventScope sb = event_scope(st, b);
    for (int v : sb.real_vertices) CHECK(dist7[v] <= 3);
    for (std::size_t g : sb.dummy_group_ids) {
        CHECK(dist7[st.dummy_groups[g].vertex] <= 3);
    }
}

TEST_CASE("same seed, same outcome") {
    Hypergraph h = test_util::random_instance(3, 30, 30, 31);
    auto run = [&]() {
        NibbleState st = fresh_state(h, 5, 777);
        equalize(st, 5, {3, 8});
        MtLimits limits;
        IterationOutcome out = moser_tardos_iterate(st, 0.25, 2.0, {3.0, 8.0}, limits);
        return std::make_pair(out.resamples, st.phi.assignment);
    };
    auto a = run();
    auto b = run();
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("practical run on a girth-5 instance certifies quickly") {
    Hypergraph h = generate_girth5(3, 2000, 6.0, 10, 4);
    REQUIRE(short_cycles(h, 4, 1).girth_at_least_5());
    int q = girth5_list_size(3, h.max_degree(), 0.1);
    NibbleState st(h, ListAssignment::uniform(h.n, q), 5);

    // one practical iteration with empirical targets
    int km1 = 2;
    int L_target = q;
    rebuild_conflict_index(st);
    std::vector<int> T_target(km1, 0);
    for (int v : st.uncolored)
        for (size_t pos = 0; pos < st.lists[v].size(); ++pos)
            for (int r = 1; r <= km1; ++r)
                T_target[r - 1] = std::max(T_target[r - 1],
                                           st.counts[v][pos * km1 + (r - 1)]);
    equalize(st, L_target, T_target);
    Proposal pilot = sample(st, 0.2);
    ProposalEvaluation pe = evaluate_proposal(st, pilot);
    double L_next = std::max(1.0, std::floor(0.9 * pe.mean_survivors));
    std::vector<double> T_next = {double(pe.max_tnext[0]), double(pe.max_tnext[1])};
    MtLimits limits;
    limits.max_resamples = 500;
    IterationOutcome out = moser_tardos_iterate(st, 0.2, L_next, T_next, limits);
    CHECK(out.certified);
    CHECK(out.resamples < 200);
    CHECK(out.uncolored_after < 2000);
    CHECK(out.min_list_after >= static_cast<int>(L_next));
}
