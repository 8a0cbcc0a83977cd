#pragma once

// Shared brute-force oracles and tiny-instance helpers. These stay
// independent of the library's algorithmic paths: the oracles enumerate.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "hgc/hypergraph.hpp"
#include "hgc/rand_util.hpp"

namespace test_util {

// Exhaustive count of minimal deficient edge sets ("i-cycles"): subsets of
// i distinct edges spanning at most i(k-1) vertices with no proper subset
// of size >= 2 deficient. Requires n <= 64.
inline std::array<std::uint64_t, 5> oracle_minimal_cycles(const hgc::Hypergraph& h) {
    std::array<std::uint64_t, 5> counts{};
    int m = h.m();
    std::vector<std::uint64_t> vmask(m, 0);
    for (int e = 0; e < m; ++e)
        for (int v : h.edges[e]) vmask[e] |= 1ULL << v;

    auto deficient = [&](const std::vector<int>& set) {
        std::uint64_t u = 0;
        for (int e : set) u |= vmask[e];
        return __builtin_popcountll(u) <=
               static_cast<int>(set.size()) * (h.k - 1);
    };
    auto minimal = [&](const std::vector<int>& set) {
        int s = static_cast<int>(set.size());
        for (int sub = 1; sub < (1 << s); ++sub) {
            int bits = __builtin_popcount(sub);
            if (bits < 2 || bits == s) continue;
            std::vector<int> subset;
            for (int i = 0; i < s; ++i)
                if (sub & (1 << i)) subset.push_back(set[i]);
            if (deficient(subset)) return false;
        }
        return true;
    };

    std::vector<int> set;
    auto recurse = [&](auto&& self, int start, int want) -> void {
        if (static_cast<int>(set.size()) == want) {
            if (deficient(set) && minimal(set)) ++counts[want];
            return;
        }
        for (int e = start; e < m; ++e) {
            set.push_back(e);
            self(self, e + 1, want);
            set.pop_back();
        }
    };
    for (int len = 2; len <= 4; ++len) recurse(recurse, 0, len);
    return counts;
}

// Degeneracy by definition: max over nonempty vertex subsets of the
// minimum induced degree. Requires n <= 20 or so.
inline int oracle_degeneracy(const hgc::Hypergraph& h) {
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << h.n); ++mask) {
        int min_deg = INT32_MAX;
        for (int v = 0; v < h.n; ++v) {
            if (!(mask & (1u << v))) continue;
            int deg = 0;
            for (int e : h.incidence[v]) {
                bool inside = true;
                for (int u : h.edges[e])
                    if (!(mask & (1u << u))) { inside = false; break; }
                if (inside) ++deg;
            }
            min_deg = std::min(min_deg, deg);
        }
        best = std::max(best, min_deg);
    }
    return best;
}

// Simple-graph cycle counts (cycle subgraphs of length 3 and 4) by
// enumeration over vertex tuples.
inline std::pair<std::uint64_t, std::uint64_t> graph_cycle_counts(const hgc::Hypergraph& g) {
    std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
    for (const auto& e : g.edges) adj[e[0]][e[1]] = adj[e[1]][e[0]] = 1;
    std::uint64_t tri = 0, quad = 0;
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            for (int c = b + 1; c < g.n; ++c)
                if (adj[a][b] && adj[b][c] && adj[a][c]) ++tri;
    // 4-cycles a-b-c-d-a counted once via smallest vertex a and b < d
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            if (b <= a || !adj[a][b]) continue;
            for (int c = 0; c < g.n; ++c) {
                if (c == a || c == b || c < a || !adj[b][c]) continue;
                for (int d = b + 1; d < g.n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (adj[c][d] && adj[d][a]) ++quad;
                }
            }
        }
    return {tri, quad};
}

// Random k-uniform test instance with m distinct edges (n <= 64).
inline hgc::Hypergraph random_instance(int k, int n, int m, std::uint64_t seed) {
    hgc::Rng rng(seed);
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<int>> seen;
    int guard = 0;
    while (static_cast<int>(edges.size()) < m && guard++ < 20000) {
        std::vector<int> e;
        while (static_cast<int>(e.size()) < k) {
            int v = rng.below_int(n);
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
            seen.push_back(e);
            edges.push_back(e);
        }
    }
    return hgc::build(k, n, edges);
}

}  // namespace test_util
