#include "hgc/cycles.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hgc {

namespace {

inline std::uint64_t pack_pair(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Index from unordered vertex pairs to the edges containing both vertices,
// stored as sorted runs over a flat array. Doubles as the co-occurrence
// graph: adjacency lists over vertices that share at least one edge.
struct PairIndex {
    std::vector<std::uint64_t> keys;        // unique pair keys, ascending
    std::vector<std::uint32_t> offs;        // bucket offsets, size keys+1
    std::vector<int> bucket_edges;          // concatenated edge ids
    std::vector<std::uint32_t> adj_offs;    // co-occurrence CSR, size n+1
    std::vector<int> adj;                   // neighbors, ascending per vertex

    explicit PairIndex(const Hypergraph& h) {
        std::vector<std::pair<std::uint64_t, int>> entries;
        entries.reserve(static_cast<size_t>(h.m()) * h.k * (h.k - 1) / 2);
        for (int e = 0; e < h.m(); ++e) {
            const auto& ed = h.edges[e];
            for (size_t i = 0; i < ed.size(); ++i)
                for (size_t j = i + 1; j < ed.size(); ++j)
                    entries.emplace_back(pack_pair(ed[i], ed[j]), e);
        }
        std::sort(entries.begin(), entries.end());
        keys.reserve(entries.size());
        offs.reserve(entries.size() + 1);
        bucket_edges.reserve(entries.size());
        for (size_t i = 0; i < entries.size();) {
            keys.push_back(entries[i].first);
            offs.push_back(static_cast<std::uint32_t>(bucket_edges.size()));
            size_t j = i;
            while (j < entries.size() && entries[j].first == entries[i].first)
                bucket_edges.push_back(entries[j++].second);
            i = j;
        }
        offs.push_back(static_cast<std::uint32_t>(bucket_edges.size()));

        std::vector<std::uint32_t> deg(h.n + 1, 0);
        for (auto key : keys) {
            ++deg[static_cast<int>(key >> 32)];
            ++deg[static_cast<int>(key & 0xffffffffu)];
        }
        adj_offs.assign(h.n + 1, 0);
        for (int v = 0; v < h.n; ++v) adj_offs[v + 1] = adj_offs[v] + deg[v];
        adj.resize(adj_offs[h.n]);
        std::vector<std::uint32_t> cursor(adj_offs.begin(), adj_offs.end() - 1);
        for (auto key : keys) {  // keys ascend, so per-vertex lists come out sorted
            int u = static_cast<int>(key >> 32);
            int v = static_cast<int>(key & 0xffffffffu);
            adj[cursor[u]++] = v;
            adj[cursor[v]++] = u;
        }
    }

    std::pair<const int*, const int*> bucket(int u, int v) const {
        std::uint64_t key = pack_pair(u, v);
        auto it = std::lower_bound(keys.begin(), keys.end(), key);
        if (it == keys.end() || *it != key) return {nullptr, nullptr};
        size_t idx = static_cast<size_t>(it - keys.begin());
        return {bucket_edges.data() + offs[idx], bucket_edges.data() + offs[idx + 1]};
    }

    std::pair<const int*, const int*> neighbors(int v) const {
        return {adj.data() + adj_offs[v], adj.data() + adj_offs[v + 1]};
    }
};

inline int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int cnt = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++cnt; ++i; ++j; }
    }
    return cnt;
}

struct Collector {
    CycleReport& report;
    const Hypergraph& h;
    std::size_t witness_cap;
    std::vector<char> in_cycles;

    Collector(CycleReport& r, const Hypergraph& hh, std::size_t cap)
        : report(r), h(hh), witness_cap(cap), in_cycles(hh.n, 0) {}

    void found(int len, std::initializer_list<int> edge_ids) {
        ++report.counts[len];
        for (int e : edge_ids)
            for (int v : h.edges[e]) in_cycles[v] = 1;
        if (report.witnesses[len].size() < witness_cap) {
            std::vector<int> w(edge_ids);
            std::sort(w.begin(), w.end());
            report.witnesses[len].push_back(std::move(w));
        }
    }
};

}  // namespace

CycleReport short_cycles(const Hypergraph& h, const CycleScanOptions& opt) {
    if (opt.max_len > 4)
        throw std::invalid_argument("short_cycles: max_len must be <= 4");
    CycleReport report;
    Collector out(report, h, opt.witness_cap);
    if (h.m() == 0 || opt.max_len < 2) return report;

    PairIndex idx(h);

    // --- 2-cycles: edge pairs sharing >= 2 vertices ------------------------
    if (opt.max_len >= 2) {
        std::uint64_t work = 0;
        // For k <= 3 two edges share at most one pair, so buckets already
        // yield each 2-cycle once; for larger k dedup across buckets.
        std::unordered_set<std::uint64_t> seen;
        for (size_t b = 0; b + 1 < idx.offs.size() && report.exact[2]; ++b) {
            std::uint32_t lo = idx.offs[b], hi = idx.offs[b + 1];
            if (hi - lo < 2) continue;
            for (std::uint32_t i = lo; i < hi && report.exact[2]; ++i) {
                for (std::uint32_t j = i + 1; j < hi; ++j) {
                    if (++work > opt.work_cap) {
                        report.exact[2] = false;
                        report.vertices_complete = false;
                        break;
                    }
                    int e1 = idx.bucket_edges[i], e2 = idx.bucket_edges[j];
                    if (h.k > 3 && !seen.insert(pack_pair(e1, e2)).second) continue;
                    out.found(2, {e1, e2});
                }
            }
        }
    }

    // --- 3-cycles: loose triangles -----------------------------------------
    // Corners x<y<z pairwise co-occurring; covering edges A(xy), B(yz), C(zx)
    // pairwise distinct with singleton pairwise intersections. Any deficient
    // 3-set with a >= 2-vertex overlap contains a 2-cycle and is not minimal.
    if (opt.max_len >= 3) {
        std::uint64_t work = 0;
        bool capped = false;
        for (int x = 0; x < h.n && !capped; ++x) {
            auto [nb, ne] = idx.neighbors(x);
            for (const int* py = nb; py != ne && !capped; ++py) {
                int y = *py;
                if (y <= x) continue;
                // forward intersection: z > y adjacent to both x and y
                auto [yb, yen] = idx.neighbors(y);
                const int* i = py + 1;
                const int* j = std::lower_bound(yb, yen, y + 1);
                while (i != ne && j != yen) {
                    work++;
                    if (work > opt.work_cap) { capped = true; break; }
                    if (*i < *j) ++i;
                    else if (*i > *j) ++j;
                    else {
                        int z = *i;
                        auto [a0, a1] = idx.bucket(x, y);
                        auto [b0, b1] = idx.bucket(y, z);
                        auto [c0, c1] = idx.bucket(z, x);
                        for (const int* pa = a0; pa != a1; ++pa)
                            for (const int* pb = b0; pb != b1; ++pb) {
                                if (*pa == *pb) continue;
                                for (const int* pc = c0; pc != c1; ++pc) {
                                    work++;
                                    if (*pc == *pa || *pc == *pb) continue;
                                    const auto& A = h.edges[*pa];
                                    const auto& B = h.edges[*pb];
                                    const auto& C = h.edges[*pc];
                                    if (intersection_size(A, B) != 1) continue;
                                    if (intersection_size(B, C) != 1) continue;
                                    if (intersection_size(C, A) != 1) continue;
                                    out.found(3, {*pa, *pb, *pc});
                                }
                            }
                        ++i; ++j;
                    }
                }
            }
        }
        if (capped) {
            report.exact[3] = false;
            report.vertices_complete = false;
        }
    }

    // --- 4-cycles: loose 4-cycles ------------------------------------------
    // Corner cycle u-a-w-b with u the smallest corner; covers A(u,a), B(a,w),
    // C(w,b), D(b,u) pairwise distinct, adjacent intersections singletons,
    // opposite pairs disjoint. Chords or double overlaps would embed a
    // smaller minimal cycle, so this is the only minimal shape of size 4.
    if (opt.max_len >= 4) {
        std::uint64_t work = 0;
        bool capped = false;
        std::vector<std::vector<int>> middles(h.n);  // w -> list of a, stamped
        std::vector<int> touched;
        for (int u = 0; u < h.n && !capped; ++u) {
            for (int w : touched) middles[w].clear();
            touched.clear();
            auto [ub, ue] = idx.neighbors(u);
            for (const int* pa = std::lower_bound(ub, ue, u + 1); pa != ue && !capped; ++pa) {
                int a = *pa;
                auto [ab, ae] = idx.neighbors(a);
                for (const int* pw = std::lower_bound(ab, ae, u + 1); pw != ae; ++pw) {
                    if (*pw == a) continue;
                    if (++work > opt.work_cap) { capped = true; break; }
                    if (middles[*pw].empty()) touched.push_back(*pw);
                    middles[*pw].push_back(a);
                }
            }
            for (int w : touched) {
                if (capped) break;
                const auto& mids = middles[w];
                if (mids.size() < 2) continue;
                for (size_t i = 0; i < mids.size() && !capped; ++i) {
                    for (size_t j = i + 1; j < mids.size(); ++j) {
                        int a = mids[i], b = mids[j];
                        auto [a0, a1] = idx.bucket(u, a);
                        auto [b0, b1] = idx.bucket(a, w);
                        auto [c0, c1] = idx.bucket(w, b);
                        auto [d0, d1] = idx.bucket(b, u);
                        for (const int* pA = a0; pA != a1 && !capped; ++pA)
                            for (const int* pB = b0; pB != b1 && !capped; ++pB) {
                                if (*pB == *pA) continue;
                                for (const int* pC = c0; pC != c1 && !capped; ++pC) {
                                    if (*pC == *pA || *pC == *pB) continue;
                                    for (const int* pD = d0; pD != d1; ++pD) {
                                        work += 16;  // cover checks + bookkeeping
                                        if (work > opt.work_cap) { capped = true; break; }
                                        if (*pD == *pA || *pD == *pB || *pD == *pC) continue;
                                        const auto& A = h.edges[*pA];
                                        const auto& B = h.edges[*pB];
                                        const auto& C = h.edges[*pC];
                                        const auto& D = h.edges[*pD];
                                        if (intersection_size(A, B) != 1) continue;
                                        if (intersection_size(B, C) != 1) continue;
                                        if (intersection_size(C, D) != 1) continue;
                                        if (intersection_size(D, A) != 1) continue;
                                        if (intersection_size(A, C) != 0) continue;
                                        if (intersection_size(B, D) != 0) continue;
                                        out.found(4, {*pA, *pB, *pC, *pD});
                                    }
                                }
                            }
                    }
                }
            }
        }
        if (capped) {
            report.exact[4] = false;
            report.vertices_complete = false;
        }
    }

    for (int v = 0; v < h.n; ++v)
        if (out.in_cycles[v]) report.vertices_in_short_cycles.push_back(v);
    return report;
}

CycleReport short_cycles(const Hypergraph& h, int max_len, std::size_t witness_cap) {
    CycleScanOptions opt;
    opt.max_len = max_len;
    opt.witness_cap = witness_cap;
    return short_cycles(h, opt);
}

}  // namespace hgc
