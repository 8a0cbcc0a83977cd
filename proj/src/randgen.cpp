#include "hgc/randgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hgc/rand_util.hpp"

namespace hgc {

namespace {

long double binomial_ld(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// uniform k-subset of [0, n) via Floyd's algorithm, sorted
void sample_subset(Rng& rng, int n, int k, std::vector<int>& out) {
    out.clear();
    for (int j = n - k; j < n; ++j) {
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        bool present = std::find(out.begin(), out.end(), t) != out.end();
        out.push_back(present ? j : t);
    }
    std::sort(out.begin(), out.end());
}

struct SubsetKey {
    int width;
    bool packable;
    std::unordered_set<std::uint64_t> packed;
    std::set<std::vector<int>> plain;

    SubsetKey(int n, int k) {
        width = std::bit_width(static_cast<unsigned>(std::max(n, 2)));
        packable = width * k <= 64;
    }
    bool insert(const std::vector<int>& subset) {
        if (packable) {
            std::uint64_t key = 0;
            for (int v : subset) key = (key << width) | static_cast<std::uint64_t>(v);
            return packed.insert(key).second;
        }
        return plain.insert(subset).second;
    }
};

}  // namespace

double GenParams::edge_probability() const {
    return d / static_cast<double>(binomial_ld(n, k - 1));
}

Hypergraph generate(const GenParams& params) {
    if (params.k < 2 || params.n < params.k)
        throw std::invalid_argument("generate: need k >= 2 and n >= k");
    if (!(params.d >= 0.0)) throw std::invalid_argument("generate: d must be non-negative");
    long double total_ld = binomial_ld(params.n, params.k);
    if (total_ld > 4.0e18L)
        throw std::invalid_argument("generate: C(n,k) exceeds the sampling budget");
    long long total = static_cast<long long>(total_ld);

    long long m = 0;
    Rng rng(params.seed);
    if (params.model == GenModel::binomial) {
        double p = params.edge_probability();
        if (p > 1.0) throw std::invalid_argument("generate: edge probability d/C(n,k-1) > 1");
        std::binomial_distribution<long long> dist(total, p);
        m = dist(rng.eng);
    } else {
        m = static_cast<long long>(
            std::ceil(params.d * static_cast<double>(params.n) / params.k));
    }
    if (m > total)
        throw std::invalid_argument("generate: requested " + std::to_string(m) +
                                    " edges but only C(n,k) = " + std::to_string(total) +
                                    " exist");

    SubsetKey seen(params.n, params.k);
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<size_t>(m));
    std::vector<int> subset;
    while (static_cast<long long>(edges.size()) < m) {
        sample_subset(rng, params.n, params.k, subset);
        if (seen.insert(subset)) edges.push_back(subset);
    }
    return build(params.k, params.n, edges);
}

namespace {

// distinct U-neighbors of v (vertices of U sharing any hyperedge with v)
int exact_boundary_count(const Hypergraph& h, const std::vector<char>& in_U, int v,
                         std::vector<int>& stamp, int& stamp_val) {
    ++stamp_val;
    int cnt = 0;
    for (int e : h.incidence[v])
        for (int u : h.edges[e]) {
            if (u == v || !in_U[u]) continue;
            if (stamp[u] != stamp_val) {
                stamp[u] = stamp_val;
                ++cnt;
            }
        }
    return cnt;
}

}  // namespace

Decomposition decompose(const Hypergraph& h, double delta, DecomposeMode mode,
                        std::uint64_t scan_work_cap) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("decompose: delta must lie in (0, 1)");
    double d = h.average_degree();
    if (!(d > std::exp(1.0)))
        throw std::invalid_argument("decompose: average degree must exceed e (got " +
                                    std::to_string(d) + ")");
    double lnd = std::log(d);
    int km1 = h.k - 1;

    Decomposition dec;
    dec.d = d;
    dec.delta = delta;
    dec.threshold_b_definition = std::pow(d / lnd, 1.0 / km1);
    dec.threshold_b_lemma = h.k * std::pow(d / (lnd * lnd), 1.0 / km1);
    dec.threshold_c = delta * std::pow(d / lnd, 1.0 / km1);
    dec.threshold_proof = 9.0 * h.k * h.k * std::pow(d / (lnd * lnd), 1.0 / km1);

    CycleScanOptions scan_opt;
    scan_opt.witness_cap = 64;
    scan_opt.work_cap = scan_work_cap;
    CycleReport cycles = short_cycles(h, scan_opt);
    dec.witnesses_complete = cycles.vertices_complete;

    dec.in_U.assign(h.n, 0);
    double overdeg = (1.0 + delta) * d;
    for (int v = 0; v < h.n; ++v)
        if (h.degree(v) > overdeg) dec.in_U[v] = 1;
    for (int v : cycles.vertices_in_short_cycles) dec.in_U[v] = 1;

    // boundary trigger machinery: cnt_approx over-counts, exact recount on use
    std::vector<int> cnt_approx(h.n, 0);
    std::vector<int> stamp(h.n, 0);
    int stamp_val = 0;
    for (int v = 0; v < h.n; ++v)
        if (!dec.in_U[v]) cnt_approx[v] = exact_boundary_count(h, dec.in_U, v, stamp, stamp_val);

    double trigger = mode == DecomposeMode::definition ? dec.threshold_c : dec.threshold_proof;
    auto violates = [&](int count) {
        return mode == DecomposeMode::definition ? (count > trigger) : (count >= trigger);
    };

    std::set<int> candidates;
    for (int v = 0; v < h.n; ++v)
        if (!dec.in_U[v] && violates(cnt_approx[v])) candidates.insert(v);

    auto absorb = [&](int w) {
        if (dec.in_U[w]) return;
        dec.in_U[w] = 1;
        candidates.erase(w);
        for (int e : h.incidence[w])
            for (int u : h.edges[e]) {
                if (u == w || dec.in_U[u]) continue;
                ++cnt_approx[u];
                if (violates(cnt_approx[u])) candidates.insert(u);
            }
    };

    if (mode == DecomposeMode::definition) {
        // batch rounds: compute the violator set against the current U, then
        // add it whole
        while (!candidates.empty()) {
            std::vector<int> violators;
            std::vector<int> cleared;
            for (int v : candidates) {
                int exact = exact_boundary_count(h, dec.in_U, v, stamp, stamp_val);
                if (violates(exact)) violators.push_back(v);
                else { cnt_approx[v] = exact; cleared.push_back(v); }
            }
            for (int v : cleared) candidates.erase(v);
            if (violators.empty()) break;
            ++dec.expansion_rounds;
            for (int v : violators) absorb(v);
        }
    } else {
        while (!candidates.empty()) {
            int v = *candidates.begin();
            int exact = exact_boundary_count(h, dec.in_U, v, stamp, stamp_val);
            if (!violates(exact)) {
                cnt_approx[v] = exact;
                candidates.erase(candidates.begin());
                continue;
            }
            ++dec.expansion_rounds;
            // snapshot of v's U-neighbors, smallest first
            std::vector<int> snapshot;
            ++stamp_val;
            for (int e : h.incidence[v])
                for (int u : h.edges[e])
                    if (u != v && dec.in_U[u] && stamp[u] != stamp_val) {
                        stamp[u] = stamp_val;
                        snapshot.push_back(u);
                    }
            std::sort(snapshot.begin(), snapshot.end());
            std::vector<char> remaining(snapshot.size(), 1);
            for (size_t i = 0; i < snapshot.size(); ++i) {
                if (!remaining[i]) continue;
                int u1 = snapshot[i];
                int chosen = -1;  // incidence lists ascend, first hit = smallest id
                for (int e : h.incidence[v]) {
                    const auto& ed = h.edges[e];
                    if (std::binary_search(ed.begin(), ed.end(), u1)) { chosen = e; break; }
                }
                if (chosen < 0) continue;  // unreachable for a true neighbor
                for (int w : h.edges[chosen]) absorb(w);
                for (size_t j = i; j < snapshot.size(); ++j)
                    if (remaining[j] &&
                        std::binary_search(h.edges[chosen].begin(), h.edges[chosen].end(),
                                           snapshot[j]))
                        remaining[j] = 0;
            }
        }
    }

    for (int v = 0; v < h.n; ++v)
        if (dec.in_U[v]) dec.U.push_back(v);

    // certificates, re-evaluated from scratch
    dec.clause_a_pass = true;
    for (int v = 0; v < h.n; ++v)
        if (h.degree(v) > overdeg && !dec.in_U[v]) dec.clause_a_pass = false;
    for (int v : cycles.vertices_in_short_cycles)
        if (!dec.in_U[v]) dec.clause_a_pass = false;

    InducedSubgraph hu = induced_subhypergraph(h, dec.in_U);
    dec.kappa_U = degeneracy(hu.sub).kappa;
    dec.clause_b_definition_pass = dec.kappa_U <= dec.threshold_b_definition;
    dec.clause_b_lemma_pass = dec.kappa_U <= dec.threshold_b_lemma;

    dec.boundary_counts.assign(h.n, -1);
    dec.clause_c_pass = true;
    dec.max_boundary = 0;
    for (int v = 0; v < h.n; ++v) {
        if (dec.in_U[v]) continue;
        int c = exact_boundary_count(h, dec.in_U, v, stamp, stamp_val);
        dec.boundary_counts[v] = c;
        dec.max_boundary = std::max(dec.max_boundary, c);
        if (c > dec.threshold_c) dec.clause_c_pass = false;
    }

    std::vector<char> keep(h.n);
    for (int v = 0; v < h.n; ++v) keep[v] = dec.in_U[v] ? 0 : 1;
    InducedSubgraph hw = induced_subhypergraph(h, keep);
    dec.complement_cycles = short_cycles(hw.sub, 4, 8);
    dec.complement_max_degree = hw.sub.max_degree();
    dec.complement_girth5 = dec.complement_cycles.girth_at_least_5();
    dec.complement_degree_ok = dec.complement_max_degree <= overdeg;

    dec.girth_reducible = dec.clause_a_pass && dec.clause_b_definition_pass &&
                          dec.clause_c_pass && dec.complement_girth5 &&
                          dec.complement_degree_ok && dec.witnesses_complete &&
                          static_cast<int>(dec.U.size()) < h.n;
    return dec;
}

DegreeStats degree_stats(const Hypergraph& h, int cap) {
    DegreeStats st;
    st.n = h.n;
    st.d = h.average_degree();
    st.cap = cap;
    st.histogram.assign(cap + 1, 0);
    st.degrees.resize(h.n);
    for (int v = 0; v < h.n; ++v) {
        int d = h.degree(v);
        st.degrees[v] = d;
        if (d <= cap) ++st.histogram[d];
        else ++st.above_cap;
    }
    return st;
}

PoissonReport check_poisson(const DegreeStats& stats, int c_max, double tol_sigma, double delta,
                            int k) {
    if (c_max > stats.cap)
        throw std::invalid_argument("check_poisson: c_max exceeds histogram cap");
    PoissonReport rep;
    double d = stats.d;
    double n = static_cast<double>(stats.n);
    for (int c = 0; c <= c_max; ++c) {
        PoissonBand band;
        band.c = c;
        band.observed = static_cast<double>(stats.histogram[c]) / n;
        band.expected = std::exp(c * std::log(d) - d - std::lgamma(c + 1.0));
        band.sigma = std::sqrt(band.expected * (1.0 - band.expected) / n);
        band.pass = std::fabs(band.observed - band.expected) <= tol_sigma * band.sigma;
        if (!band.pass) rep.bands_pass = false;
        rep.bands.push_back(band);
    }
    double lo = (1.0 + delta) * d;
    double hi = 3.0 * std::pow(static_cast<double>(k - 1), k - 1) * d;
    for (int deg : stats.degrees) {
        if (deg >= lo && deg <= hi) ++rep.midrange_count;
        if (deg > lo) ++rep.overdegree_count;
    }
    rep.midrange_bound = n / (d * d);
    rep.overdegree_bound = 2.0 * n / (d * d);
    rep.midrange_pass = rep.midrange_count <= rep.midrange_bound;
    rep.overdegree_pass = rep.overdegree_count <= rep.overdegree_bound;
    return rep;
}

SparseSubsetReport sparse_subset_check(const Hypergraph& h, int trials, std::uint64_t seed) {
    SparseSubsetReport rep;
    rep.trials = trials;
    double d = h.average_degree();
    if (!(d > std::exp(1.0)) || h.m() == 0) {
        rep.pass = true;  // bound is vacuous without ln d > 1
        return rep;
    }
    double lnd = std::log(d);
    int km1 = h.k - 1;
    rep.bound_ratio = std::pow(d / (lnd * lnd), 1.0 / km1);
    int s_max = std::min(h.n, static_cast<int>(h.n * std::pow(d, -1.0 / km1)));
    int s_min = std::min(s_max, 3 * h.k);
    if (s_max < h.k) {
        rep.pass = true;
        return rep;
    }

    std::vector<int> sizes;
    for (int i = 0; i < 12; ++i) {
        double f = static_cast<double>(i) / 11.0;
        int s = static_cast<int>(std::round(s_min * std::pow(double(s_max) / s_min, f)));
        if (sizes.empty() || sizes.back() != s) sizes.push_back(s);
    }
    int per_size = std::max(1, trials / static_cast<int>(sizes.size()));

    Rng rng(seed);
    std::vector<char> in_S(h.n, 0);
    std::vector<int> cnt_in(h.m(), 0);
    std::vector<int> members;

    // vertices by descending degree, for the seeded trial per size
    std::vector<int> by_degree(h.n);
    for (int v = 0; v < h.n; ++v) by_degree[v] = v;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return h.degree(a) > h.degree(b); });

    auto edges_inside = [&]() {
        int cnt = 0;
        for (int v : members)
            for (int e : h.incidence[v])
                if (cnt_in[e] == h.k && h.edges[e][0] == v) ++cnt;  // count once, at min vertex
        return cnt;
    };
    auto set_members = [&](const std::vector<int>& vs) {
        for (int v : members) {
            in_S[v] = 0;
            for (int e : h.incidence[v]) cnt_in[e] = 0;
        }
        members = vs;
        for (int v : members) {
            in_S[v] = 1;
            for (int e : h.incidence[v]) cnt_in[e] = 0;
        }
        for (int v : members)
            for (int e : h.incidence[v]) ++cnt_in[e];
    };
    auto consider = [&](int s) {
        double ratio = static_cast<double>(edges_inside()) / static_cast<double>(s);
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_size = s;
        }
        if (edges_inside() >= static_cast<double>(s) * rep.bound_ratio)
            rep.counterexample_found = true;
    };

    for (int s : sizes) {
        for (int t = 0; t < per_size; ++t) {
            std::vector<int> vs;
            if (t == 0) {  // seeded from the degree ranking
                vs.assign(by_degree.begin(), by_degree.begin() + s);
            } else {
                std::vector<char> chosen(h.n, 0);
                while (static_cast<int>(vs.size()) < s) {
                    int v = rng.below_int(h.n);
                    if (!chosen[v]) { chosen[v] = 1; vs.push_back(v); }
                }
            }
            set_members(vs);
            consider(s);
            // densify: swap in outside vertices completing many edges
            int rounds = std::min(s, 32);
            for (int round = 0; round < rounds; ++round) {
                // gains live only on edges one vertex short of being inside
                std::unordered_map<int, int> gains;
                for (int v : members)
                    for (int e : h.incidence[v]) {
                        if (cnt_in[e] != h.k - 1) continue;
                        for (int u : h.edges[e])
                            if (!in_S[u]) ++gains[u];
                    }
                if (gains.empty()) break;
                int best_u = -1, best_gain = 0;
                for (auto [u, g] : gains)
                    if (g > best_gain || (g == best_gain && (best_u < 0 || u < best_u))) {
                        best_u = u;
                        best_gain = g;
                    }
                // evict the member on fewest inside edges
                int worst_v = -1, worst_loss = INT32_MAX;
                for (int v : members) {
                    int loss = 0;
                    for (int e : h.incidence[v])
                        if (cnt_in[e] == h.k) ++loss;
                    if (loss < worst_loss) { worst_loss = loss; worst_v = v; }
                }
                if (best_gain <= worst_loss) break;
                // swap
                in_S[worst_v] = 0;
                for (int e : h.incidence[worst_v]) --cnt_in[e];
                in_S[best_u] = 1;
                for (int e : h.incidence[best_u]) ++cnt_in[e];
                std::replace(members.begin(), members.end(), worst_v, best_u);
                consider(s);
            }
        }
    }
    rep.pass = !rep.counterexample_found;
    return rep;
}

Hypergraph generate_girth5(int k, int n, double target_avg_degree, int max_degree,
                           std::uint64_t seed) {
    if (k < 2 || n < k) throw std::invalid_argument("generate_girth5: need k >= 2, n >= k");
    long long target_edges =
        static_cast<long long>(std::floor(target_avg_degree * n / k));
    Rng rng(seed);

    std::vector<std::vector<int>> edges;
    std::vector<int> degree(n, 0);
    std::vector<std::vector<int>> adj(n);  // co-occurrence graph, sorted
    std::unordered_set<std::uint64_t> covered_pairs;
    auto pack = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    auto adjacent = [&](int a, int b) {
        return std::binary_search(adj[a].begin(), adj[a].end(), b);
    };

    std::vector<int> cand;
    long long attempts = 0, max_attempts = 200 * std::max<long long>(target_edges, 1);
    while (static_cast<long long>(edges.size()) < target_edges && attempts < max_attempts) {
        ++attempts;
        sample_subset(rng, n, k, cand);
        bool ok = true;
        for (int v : cand)
            if (degree[v] >= max_degree) { ok = false; break; }
        // 2-cycles: some pair of the candidate already covered
        for (size_t i = 0; i < cand.size() && ok; ++i)
            for (size_t j = i + 1; j < cand.size() && ok; ++j)
                if (covered_pairs.count(pack(cand[i], cand[j]))) ok = false;
        // 3-cycles: two candidate vertices with a common outside neighbor
        for (size_t i = 0; i < cand.size() && ok; ++i)
            for (size_t j = i + 1; j < cand.size() && ok; ++j) {
                int a = cand[i], b = cand[j];
                for (int w : adj[a]) {
                    if (std::find(cand.begin(), cand.end(), w) != cand.end()) continue;
                    if (adjacent(b, w)) { ok = false; break; }
                }
            }
        // 4-cycles: an outside path of length 3 between two candidate vertices
        for (size_t i = 0; i < cand.size() && ok; ++i)
            for (size_t j = i + 1; j < cand.size() && ok; ++j) {
                int a = cand[i], b = cand[j];
                for (int w : adj[a]) {
                    if (std::find(cand.begin(), cand.end(), w) != cand.end()) continue;
                    for (int x : adj[w]) {
                        if (x == a || x == b) continue;
                        if (std::find(cand.begin(), cand.end(), x) != cand.end()) continue;
                        if (adjacent(b, x)) { ok = false; break; }
                    }
                    if (!ok) break;
                }
            }
        if (!ok) continue;
        for (size_t i = 0; i < cand.size(); ++i)
            for (size_t j = i + 1; j < cand.size(); ++j) {
                covered_pairs.insert(pack(cand[i], cand[j]));
                auto ins = [&](int a, int b) {
                    auto it = std::lower_bound(adj[a].begin(), adj[a].end(), b);
                    if (it == adj[a].end() || *it != b) adj[a].insert(it, b);
                };
                ins(cand[i], cand[j]);
                ins(cand[j], cand[i]);
            }
        for (int v : cand) ++degree[v];
        edges.push_back(cand);
    }
    return build(k, n, edges);
}

}  // namespace hgc
