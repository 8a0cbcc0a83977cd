#include "hgc/degeneracy.hpp"

#include <set>

namespace hgc {

DegeneracyResult degeneracy(const Hypergraph& h) {
    DegeneracyResult res;
    res.order.reserve(h.n);
    std::vector<int> deg(h.n);
    std::vector<char> edge_alive(h.m(), 1);
    std::vector<char> vertex_alive(h.n, 1);
    // (degree, id) ordering gives min-degree with smallest-id tie-break.
    std::set<std::pair<int, int>> queue;
    for (int v = 0; v < h.n; ++v) {
        deg[v] = h.degree(v);
        queue.insert({deg[v], v});
    }
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        vertex_alive[v] = 0;
        res.order.push_back(v);
        res.kappa = std::max(res.kappa, d);
        for (int e : h.incidence[v]) {
            if (!edge_alive[e]) continue;
            edge_alive[e] = 0;
            for (int u : h.edges[e]) {
                if (u == v || !vertex_alive[u]) continue;
                queue.erase({deg[u], u});
                --deg[u];
                queue.insert({deg[u], u});
            }
        }
    }
    return res;
}

}  // namespace hgc
