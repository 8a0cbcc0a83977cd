#include "hgc/finisher.hpp"

#include <algorithm>

#include "hgc/rand_util.hpp"

namespace hgc {

Coloring greedy_degenerate(const Hypergraph& h, const ListAssignment& la,
                           const std::vector<int>& order,
                           const std::vector<std::vector<int>>& forbidden) {
    if (static_cast<int>(order.size()) != h.n)
        throw std::invalid_argument("greedy: order must be a permutation of all vertices");
    Coloring col(h.n);
    std::vector<int> blocked;
    for (int idx = h.n - 1; idx >= 0; --idx) {
        int v = order[idx];
        blocked.clear();
        for (int e : h.incidence[v]) {
            int common = Coloring::kNone;
            bool constrains = true;
            for (int u : h.edges[e]) {
                if (u == v) continue;
                int cu = col.assignment[u];
                if (cu == Coloring::kNone) { constrains = false; break; }
                if (common == Coloring::kNone) common = cu;
                else if (common != cu) { constrains = false; break; }
            }
            if (constrains && common != Coloring::kNone) blocked.push_back(common);
        }
        std::sort(blocked.begin(), blocked.end());
        const auto& forb = forbidden.empty() ? std::vector<int>{} : forbidden[v];
        int chosen = Coloring::kNone;
        for (int c : la.lists[v]) {
            if (std::binary_search(blocked.begin(), blocked.end(), c)) continue;
            if (!forb.empty() && std::binary_search(forb.begin(), forb.end(), c)) continue;
            chosen = c;
            break;
        }
        if (chosen == Coloring::kNone)
            throw GreedyExhausted(v, static_cast<int>(la.lists[v].size()),
                                  static_cast<int>(forb.size()),
                                  static_cast<int>(blocked.size()));
        col.assignment[v] = chosen;
    }
    return col;
}

FinalPhaseInstance FinalPhaseInstance::make(const Hypergraph& h, const ListAssignment& la,
                                            const Coloring& phi) {
    FinalPhaseInstance inst;
    inst.base = &h;
    inst.lists = la;
    inst.phi = phi;
    for (int v = 0; v < h.n; ++v)
        if (phi.assignment[v] == Coloring::kNone) inst.uncolored.push_back(v);

    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        int common = Coloring::kNone;
        bool mono = true;
        std::vector<int> unc;
        for (int u : ed) {
            int cu = phi.assignment[u];
            if (cu == Coloring::kNone) { unc.push_back(u); continue; }
            if (common == Coloring::kNone) common = cu;
            else if (common != cu) mono = false;
        }
        if (!mono) continue;
        if (unc.empty()) {
            throw std::invalid_argument(
                "final phase: partial coloring already has monochromatic edge " +
                std::to_string(e));
        }
        // candidate colors must lie in every uncolored member's list
        if (common != Coloring::kNone) {
            bool ok = true;
            for (int u : unc)
                if (!std::binary_search(la.lists[u].begin(), la.lists[u].end(), common)) {
                    ok = false;
                    break;
                }
            if (ok) inst.events.push_back({e, common});
        } else {
            std::vector<int> inter = la.lists[unc[0]];
            for (size_t i = 1; i < unc.size() && !inter.empty(); ++i) {
                std::vector<int> next;
                std::set_intersection(inter.begin(), inter.end(), la.lists[unc[i]].begin(),
                                      la.lists[unc[i]].end(), std::back_inserter(next));
                inter.swap(next);
            }
            for (int c : inter) inst.events.push_back({e, c});
        }
    }
    std::sort(inst.events.begin(), inst.events.end(),
              [](const FinalPhaseEvent& a, const FinalPhaseEvent& b) {
                  return a.edge != b.edge ? a.edge < b.edge : a.color < b.color;
              });
    return inst;
}

FinalPhaseResult final_phase(const FinalPhaseInstance& inst, std::uint64_t budget,
                             std::uint64_t seed) {
    FinalPhaseResult res;
    const Hypergraph& h = *inst.base;
    res.coloring = inst.phi;
    if (inst.uncolored.empty()) {
        res.success = true;
        return res;
    }
    for (int v : inst.uncolored)
        if (inst.lists.lists[v].empty())
            throw std::invalid_argument("final phase: empty list at uncolored vertex " +
                                        std::to_string(v));

    Rng rng(seed);
    auto draw = [&](int v) {
        const auto& lv = inst.lists.lists[v];
        res.coloring.assignment[v] = lv[rng.below_int(static_cast<int>(lv.size()))];
    };
    for (int v : inst.uncolored) draw(v);

    auto violated = [&](const FinalPhaseEvent& ev) {
        for (int u : h.edges[ev.edge]) {
            if (inst.phi.assignment[u] != Coloring::kNone) continue;
            if (res.coloring.assignment[u] != ev.color) return false;
        }
        return true;
    };

    for (;;) {
        const FinalPhaseEvent* bad = nullptr;
        for (const auto& ev : inst.events)
            if (violated(ev)) { bad = &ev; break; }
        if (!bad) {
            res.success = true;
            return res;
        }
        if (res.resamples >= budget) {
            res.error = "final phase: resample budget exhausted (" + std::to_string(budget) + ")";
            res.coloring = inst.phi;  // no invalid output
            return res;
        }
        ++res.resamples;
        for (int u : h.edges[bad->edge])
            if (inst.phi.assignment[u] == Coloring::kNone) draw(u);
    }
}

CertReport lll_certificate(const FinalPhaseInstance& inst) {
    CertReport rep;
    const Hypergraph& h = *inst.base;
    rep.event_count = inst.events.size();
    if (inst.events.empty()) return rep;  // vacuously certified

    // W[v] = sum over colors c' in L_v and edges h' competing with v for c'
    // of mu(A_{h',c'}). Edges with zero uncolored vertices besides v are
    // included so the certificate stays sound for partial colorings that
    // did not come out of the nibble.
    std::vector<double> W(h.n, 0.0);
    std::vector<char> is_uncolored(h.n, 0);
    for (int v : inst.uncolored) is_uncolored[v] = 1;

    for (int v : inst.uncolored) {
        const auto& lv = inst.lists.lists[v];
        double w = 0.0;
        for (int e : h.incidence[v]) {
            const auto& ed = h.edges[e];
            int common = Coloring::kNone;
            bool mono = true;
            for (int u : ed) {
                int cu = inst.phi.assignment[u];
                if (cu == Coloring::kNone) continue;
                if (common == Coloring::kNone) common = cu;
                else if (common != cu) { mono = false; break; }
            }
            if (!mono) continue;
            // mu of the event on this edge for color c': product over
            // uncolored members' list sizes, provided c' is in all lists.
            auto mu_for = [&](int c) -> double {
                double mu = 1.0;
                for (int u : ed) {
                    if (!is_uncolored[u]) continue;
                    const auto& lu = inst.lists.lists[u];
                    if (!std::binary_search(lu.begin(), lu.end(), c)) return 0.0;
                    mu /= static_cast<double>(lu.size());
                }
                return mu;
            };
            if (common != Coloring::kNone) {
                if (std::binary_search(lv.begin(), lv.end(), common)) w += mu_for(common);
            } else {
                for (int c : lv) w += mu_for(c);
            }
        }
        W[v] = w;
    }

    for (const auto& ev : inst.events) {
        double mu = 1.0;
        double dep = 0.0;
        int members = 0;
        for (int u : h.edges[ev.edge]) {
            if (!is_uncolored[u]) continue;
            mu /= static_cast<double>(inst.lists.lists[u].size());
            dep += W[u];
            ++members;
        }
        // the W sums count the event itself once per uncolored member;
        // the dependency set excludes the event
        dep -= members * mu;
        rep.max_mu = std::max(rep.max_mu, mu);
        rep.max_dep_sum = std::max(rep.max_dep_sum, dep);
        bool p_ok = mu <= 0.25;
        bool d_ok = dep <= 0.25;
        if (!p_ok) rep.prob_condition = false;
        if (!d_ok) rep.dep_condition = false;
        if ((!p_ok || !d_ok) && rep.failing.size() < 32)
            rep.failing.push_back({ev.edge, ev.color, mu, dep, false});
        if (2.0 * mu < 1.0) rep.expected_resamples += 2.0 * mu / (1.0 - 2.0 * mu);
    }
    rep.certified = rep.prob_condition && rep.dep_condition;
    return rep;
}

}  // namespace hgc
