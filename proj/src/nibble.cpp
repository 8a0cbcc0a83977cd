#include "hgc/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hgc {

namespace {

// colored-part summary of an edge: common color, or kNone when empty,
// or -2 when the colored vertices disagree
constexpr int kMixed = -2;

int colored_common(const std::vector<int>& edge, const std::vector<int>& assignment) {
    int common = Coloring::kNone;
    for (int u : edge) {
        int cu = assignment[u];
        if (cu == Coloring::kNone) continue;
        if (common == Coloring::kNone) common = cu;
        else if (common != cu) return kMixed;
    }
    return common;
}

// P[some edge of the group has all r dummies activated and assigned the
// group color] = 1 - (1 - (alpha/L)^r)^count
bool dummy_group_block(NibbleState& state, double alpha, const DummyGroup& grp) {
    double p_edge = std::pow(alpha / state.current_L, grp.r);
    double p_block = -std::expm1(grp.count * std::log1p(-p_edge));
    return state.rng.bernoulli(p_block);
}

}  // namespace

NibbleState::NibbleState(const Hypergraph& h, ListAssignment la, std::uint64_t seed)
    : base(&h), phi(h.n), rng(seed) {
    if (static_cast<int>(la.lists.size()) != h.n)
        throw std::invalid_argument("nibble: list assignment must cover every vertex");
    lists = std::move(la.lists);
    uncolored_mask.assign(h.n, 1);
    uncolored.resize(h.n);
    for (int v = 0; v < h.n; ++v) uncolored[v] = v;
    counts.assign(h.n, {});
    group_begin.assign(h.n + 1, 0);
    current_L = 0;
    for (const auto& l : lists) current_L = std::max(current_L, static_cast<int>(l.size()));
}

int NibbleState::list_pos(int v, int color) const {
    const auto& l = lists[v];
    auto it = std::lower_bound(l.begin(), l.end(), color);
    if (it == l.end() || *it != color) return -1;
    return static_cast<int>(it - l.begin());
}

int NibbleState::t_total(int v, int pos, int r) const {
    int km1 = base->k - 1;
    int t = counts_valid ? counts[v][pos * km1 + (r - 1)] : 0;
    int color = lists[v][pos];
    for (std::uint32_t g = group_begin[v]; g < group_begin[v + 1]; ++g) {
        const auto& grp = dummy_groups[g];
        if (grp.color == color && grp.r == r) t += grp.count;
    }
    return t;
}

void rebuild_conflict_index(NibbleState& state) {
    const Hypergraph& h = *state.base;
    int km1 = h.k - 1;
    for (int v : state.uncolored)
        state.counts[v].assign(state.lists[v].size() * km1, 0);

    std::vector<int> unc;
    std::vector<int> tally;   // per-color, reset via touched
    std::vector<int> touched;
    int max_color = 0;
    for (int v : state.uncolored)
        if (!state.lists[v].empty()) max_color = std::max(max_color, state.lists[v].back());
    tally.assign(max_color + 1, 0);

    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        unc.clear();
        for (int u : ed)
            if (state.uncolored_mask[u]) unc.push_back(u);
        if (unc.empty()) continue;
        int cc = colored_common(ed, state.phi.assignment);
        if (cc == kMixed) continue;
        int r = static_cast<int>(unc.size()) - 1;
        if (r < 1 || r > km1) continue;  // r = 0 edges only constrain availability
        if (cc != Coloring::kNone) {
            bool all_have = true;
            for (int u : unc)
                if (state.list_pos(u, cc) < 0) { all_have = false; break; }
            if (!all_have) continue;
            for (int v : unc)
                ++state.counts[v][state.list_pos(v, cc) * km1 + (r - 1)];
        } else {
            touched.clear();
            for (int u : unc)
                for (int c : state.lists[u]) {
                    if (tally[c]++ == 0) touched.push_back(c);
                }
            for (int c : touched) {
                if (tally[c] == static_cast<int>(unc.size())) {
                    for (int v : unc)
                        ++state.counts[v][state.list_pos(v, c) * km1 + (r - 1)];
                }
                tally[c] = 0;
            }
        }
    }
    state.counts_valid = true;
}

void equalize(NibbleState& state, int L_target, const std::vector<int>& T_target) {
    const Hypergraph& h = *state.base;
    int km1 = h.k - 1;
    if (L_target < 1) throw std::invalid_argument("equalize: L_target must be >= 1");
    if (static_cast<int>(T_target.size()) != km1)
        throw std::invalid_argument("equalize: T_target must have k-1 entries");

    for (int v : state.uncolored)
        if (static_cast<int>(state.lists[v].size()) < L_target)
            throw EqualizeError(v, -1, 0,
                                "equalize: P(i) violated, list of vertex " + std::to_string(v) +
                                    " shorter than target");
    for (int v : state.uncolored)
        state.lists[v].resize(L_target);  // sorted, so largest ids drop

    rebuild_conflict_index(state);
    for (int v : state.uncolored)
        for (size_t pos = 0; pos < state.lists[v].size(); ++pos)
            for (int r = 1; r <= km1; ++r)
                if (state.counts[v][pos * km1 + (r - 1)] > T_target[r - 1])
                    throw EqualizeError(v, state.lists[v][pos], r,
                                        "equalize: P(i) violated, t exceeds target at vertex " +
                                            std::to_string(v));

    state.dummy_groups.clear();
    state.group_begin.assign(h.n + 1, 0);
    for (int v : state.uncolored) {
        state.group_begin[v] = static_cast<std::uint32_t>(state.dummy_groups.size());
        for (size_t pos = 0; pos < state.lists[v].size(); ++pos)
            for (int r = 1; r <= km1; ++r) {
                int deficit = T_target[r - 1] - state.counts[v][pos * km1 + (r - 1)];
                if (deficit > 0)
                    state.dummy_groups.push_back({v, state.lists[v][pos], r, deficit});
            }
        state.group_begin[v + 1] = static_cast<std::uint32_t>(state.dummy_groups.size());
    }
    // group_begin must be monotone over all vertices, not just uncolored ones
    for (int v = 0; v < h.n; ++v)
        state.group_begin[v + 1] = std::max(state.group_begin[v + 1], state.group_begin[v]);
    state.current_L = L_target;
}

Proposal sample(NibbleState& state, double alpha) {
    Proposal prop;
    const Hypergraph& h = *state.base;
    prop.color_idx.assign(h.n, -1);
    prop.active.assign(h.n, 0);
    for (int v : state.uncolored) {
        prop.color_idx[v] = state.rng.below_int(static_cast<int>(state.lists[v].size()));
        prop.active[v] = state.rng.bernoulli(alpha) ? 1 : 0;
    }
    prop.dummy_blocked.resize(state.dummy_groups.size());
    for (std::size_t g = 0; g < state.dummy_groups.size(); ++g)
        prop.dummy_blocked[g] = dummy_group_block(state, alpha, state.dummy_groups[g]) ? 1 : 0;
    return prop;
}

bool available(const NibbleState& state, const Proposal& prop, int v, int c) {
    const Hypergraph& h = *state.base;
    for (int e : h.incidence[v]) {
        const auto& ed = h.edges[e];
        int cc = colored_common(ed, state.phi.assignment);
        if (cc == kMixed) continue;
        if (cc != Coloring::kNone && cc != c) continue;
        bool threat = true;
        for (int u : ed) {
            if (u == v || !state.uncolored_mask[u]) continue;
            if (!prop.active[u] || state.lists[u][prop.color_idx[u]] != c) {
                threat = false;
                break;
            }
        }
        if (threat) return false;
    }
    for (std::uint32_t g = state.group_begin[v]; g < state.group_begin[v + 1]; ++g) {
        if (state.dummy_groups[g].color != c) continue;
        if (prop.dummy_blocked[g]) return false;
    }
    return true;
}

ProposalEvaluation evaluate_proposal(const NibbleState& state, const Proposal& prop) {
    const Hypergraph& h = *state.base;
    int km1 = h.k - 1;
    ProposalEvaluation ev;
    ev.avail.assign(h.n, {});
    ev.survivors.assign(h.n, 0);
    ev.retained.assign(h.n, 0);
    ev.tnext.assign(h.n, {});
    ev.max_tnext.assign(km1, 0);

    for (int v : state.uncolored) ev.avail[v].assign(state.lists[v].size(), 1);

    // real-edge threats
    std::vector<int> unc;
    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        unc.clear();
        for (int u : ed)
            if (state.uncolored_mask[u]) unc.push_back(u);
        if (unc.empty()) continue;
        int cc = colored_common(ed, state.phi.assignment);
        if (cc == kMixed) continue;
        for (size_t i = 0; i < unc.size(); ++i) {
            int v = unc[i];
            int threat_color = cc;  // vacuous when r = 0
            bool ok = true;
            for (size_t j = 0; j < unc.size(); ++j) {
                if (j == i) continue;
                int u = unc[j];
                if (!prop.active[u]) { ok = false; break; }
                int cu = state.lists[u][prop.color_idx[u]];
                if (threat_color == Coloring::kNone) threat_color = cu;
                else if (threat_color != cu) { ok = false; break; }
            }
            if (!ok || threat_color == Coloring::kNone) continue;
            int pos = state.list_pos(v, threat_color);
            if (pos >= 0) ev.avail[v][pos] = 0;
        }
    }
    // dummy-edge threats
    for (std::size_t g = 0; g < state.dummy_groups.size(); ++g) {
        if (!prop.dummy_blocked[g]) continue;
        const auto& grp = state.dummy_groups[g];
        int pos = state.list_pos(grp.vertex, grp.color);
        if (pos >= 0) ev.avail[grp.vertex][pos] = 0;
    }

    double sum_survivors = 0.0;
    ev.min_survivors = state.uncolored.empty() ? 0 : INT32_MAX;
    for (int v : state.uncolored) {
        int s = 0;
        for (char a : ev.avail[v]) s += a;
        ev.survivors[v] = s;
        sum_survivors += s;
        ev.min_survivors = std::min(ev.min_survivors, s);
        ev.retained[v] = prop.active[v] && ev.avail[v][prop.color_idx[v]] ? 1 : 0;
    }
    ev.mean_survivors = state.uncolored.empty() ? 0.0 : sum_survivors / state.uncolored.size();

    // next-state conflict counts over real edges
    for (int v : state.uncolored) ev.tnext[v].assign(state.lists[v].size() * km1, 0);
    int max_color = 0;
    for (int v : state.uncolored)
        if (!state.lists[v].empty()) max_color = std::max(max_color, state.lists[v].back());
    std::vector<int> tally(max_color + 1, 0);
    std::vector<int> touched;

    auto next_color = [&](int u) {
        if (!state.uncolored_mask[u]) return state.phi.assignment[u];
        if (ev.retained[u]) return state.lists[u][prop.color_idx[u]];
        return Coloring::kNone;
    };
    auto in_next_list = [&](int u, int c) {
        int pos = state.list_pos(u, c);
        return pos >= 0 && ev.avail[u][pos];
    };

    std::vector<int> unc_next;
    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        unc_next.clear();
        int common = Coloring::kNone;
        bool mixed = false;
        for (int u : ed) {
            int cu = next_color(u);
            if (cu == Coloring::kNone) { unc_next.push_back(u); continue; }
            if (common == Coloring::kNone) common = cu;
            else if (common != cu) { mixed = true; break; }
        }
        if (mixed || unc_next.empty()) continue;
        int r = static_cast<int>(unc_next.size()) - 1;
        if (r < 1 || r > km1) continue;
        if (common != Coloring::kNone) {
            bool all_have = true;
            for (int u : unc_next)
                if (!in_next_list(u, common)) { all_have = false; break; }
            if (!all_have) continue;
            for (int v : unc_next)
                ++ev.tnext[v][state.list_pos(v, common) * km1 + (r - 1)];
        } else {
            touched.clear();
            for (int u : unc_next)
                for (size_t pos = 0; pos < state.lists[u].size(); ++pos)
                    if (ev.avail[u][pos]) {
                        int c = state.lists[u][pos];
                        if (tally[c]++ == 0) touched.push_back(c);
                    }
            for (int c : touched) {
                if (tally[c] == static_cast<int>(unc_next.size())) {
                    for (int v : unc_next)
                        ++ev.tnext[v][state.list_pos(v, c) * km1 + (r - 1)];
                }
                tally[c] = 0;
            }
        }
    }
    for (int v : state.uncolored)
        for (size_t pos = 0; pos < state.lists[v].size(); ++pos)
            for (int r = 1; r <= km1; ++r)
                ev.max_tnext[r - 1] =
                    std::max(ev.max_tnext[r - 1], ev.tnext[v][pos * km1 + (r - 1)]);
    return ev;
}

namespace {

std::vector<BadEvent> collect_violations(const NibbleState& state, const ProposalEvaluation& ev,
                                         int L_floor, const std::vector<int>& T_ceil) {
    int km1 = state.base->k - 1;
    std::vector<BadEvent> out;
    for (int v : state.uncolored) {
        if (ev.survivors[v] < L_floor) out.push_back({0, v, -1, 0});
        if (ev.retained[v]) continue;
        for (size_t pos = 0; pos < state.lists[v].size(); ++pos) {
            if (!ev.avail[v][pos]) continue;
            for (int r = 1; r <= km1; ++r)
                if (ev.tnext[v][pos * km1 + (r - 1)] > T_ceil[r - 1])
                    out.push_back({1, v, state.lists[v][pos], r});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<BadEvent> evaluate_bad_events(const NibbleState& state, const Proposal& prop,
                                          double L_next, const std::vector<double>& T_next) {
    int km1 = state.base->k - 1;
    if (static_cast<int>(T_next.size()) != km1)
        throw std::invalid_argument("evaluate_bad_events: T_next must have k-1 entries");
    ProposalEvaluation ev = evaluate_proposal(state, prop);
    int L_floor = static_cast<int>(std::floor(L_next));
    std::vector<int> T_ceil(km1);
    for (int r = 0; r < km1; ++r) T_ceil[r] = static_cast<int>(std::ceil(T_next[r]));
    return collect_violations(state, ev, L_floor, T_ceil);
}

EventScope event_scope(const NibbleState& state, const BadEvent& evnt) {
    const Hypergraph& h = *state.base;
    std::set<int> reals;
    std::set<std::size_t> groups;
    auto add_vertex_ball = [&](int u) {
        reals.insert(u);
        for (std::uint32_t g = state.group_begin[u]; g < state.group_begin[u + 1]; ++g)
            groups.insert(g);
        for (int e : h.incidence[u])
            for (int w : h.edges[e])
                if (state.uncolored_mask[w]) reals.insert(w);
    };
    if (evnt.type == 0) {
        add_vertex_ball(evnt.v);
    } else {
        // edges that may feed t_{i+1,r}(v,c): current D_{i,j}(v,c) for any j
        std::set<int> layer1;
        layer1.insert(evnt.v);
        for (int e : h.incidence[evnt.v]) {
            const auto& ed = h.edges[e];
            int cc = colored_common(ed, state.phi.assignment);
            if (cc == kMixed) continue;
            if (cc != Coloring::kNone && cc != evnt.color) continue;
            bool all_have = true;
            for (int u : ed)
                if (state.uncolored_mask[u] && state.list_pos(u, evnt.color) < 0) {
                    all_have = false;
                    break;
                }
            if (!all_have) continue;
            for (int u : ed)
                if (state.uncolored_mask[u]) layer1.insert(u);
        }
        for (int u : layer1) add_vertex_ball(u);
    }
    EventScope scope;
    scope.real_vertices.assign(reals.begin(), reals.end());
    scope.dummy_group_ids.assign(groups.begin(), groups.end());
    return scope;
}

IterationOutcome moser_tardos_iterate(NibbleState& state, double alpha, double L_next,
                                      const std::vector<double>& T_next,
                                      const MtLimits& limits) {
    const Hypergraph& h = *state.base;
    int km1 = h.k - 1;
    if (static_cast<int>(T_next.size()) != km1)
        throw std::invalid_argument("moser_tardos_iterate: T_next must have k-1 entries");
    int L_floor = static_cast<int>(std::floor(L_next));
    std::vector<int> T_ceil(km1);
    for (int r = 0; r < km1; ++r) T_ceil[r] = static_cast<int>(std::ceil(T_next[r]));

    IterationOutcome out;
    out.iteration = state.iteration;
    out.dummy_edges_used = 0;
    for (const auto& grp : state.dummy_groups) out.dummy_edges_used += grp.count;

    Proposal prop = sample(state, alpha);
    ProposalEvaluation ev = evaluate_proposal(state, prop);
    std::vector<BadEvent> viol = collect_violations(state, ev, L_floor, T_ceil);

    Proposal best_prop = prop;
    std::size_t best_count = viol.size();

    while (!viol.empty()) {
        if (out.resamples >= limits.max_resamples) {
            prop = best_prop;
            ev = evaluate_proposal(state, prop);
            viol = collect_violations(state, ev, L_floor, T_ceil);
            break;
        }
        EventScope scope = event_scope(state, viol.front());
        for (int v : scope.real_vertices) {
            prop.color_idx[v] = state.rng.below_int(static_cast<int>(state.lists[v].size()));
            prop.active[v] = state.rng.bernoulli(alpha) ? 1 : 0;
        }
        for (std::size_t g : scope.dummy_group_ids)
            prop.dummy_blocked[g] =
                dummy_group_block(state, alpha, state.dummy_groups[g]) ? 1 : 0;
        ++out.resamples;
        ev = evaluate_proposal(state, prop);
        viol = collect_violations(state, ev, L_floor, T_ceil);
        if (viol.size() < best_count) {
            best_count = viol.size();
            best_prop = prop;
        }
    }
    out.residual_violations = viol.size();
    out.certified = viol.empty();
    out.accepted = prop;

    // apply steps 3-4: new lists from availability, uncolor the deactivated
    // or blocked, strip dummies
    std::vector<int> still;
    long long list_sum = 0;
    int list_min = INT32_MAX;
    for (int v : state.uncolored) {
        if (ev.retained[v]) {
            state.phi.assignment[v] = state.lists[v][prop.color_idx[v]];
            continue;
        }
        std::vector<int> next_list;
        for (size_t pos = 0; pos < state.lists[v].size(); ++pos)
            if (ev.avail[v][pos]) next_list.push_back(state.lists[v][pos]);
        if (next_list.empty()) {
            ++out.emptied_lists;
            if (limits.theory)
                throw std::runtime_error("nibble: list of vertex " + std::to_string(v) +
                                         " emptied (trajectory collapse)");
        }
        list_sum += static_cast<long long>(next_list.size());
        list_min = std::min(list_min, static_cast<int>(next_list.size()));
        state.lists[v] = std::move(next_list);
        still.push_back(v);
    }
    for (int v : state.uncolored)
        if (ev.retained[v]) state.uncolored_mask[v] = 0;
    state.uncolored = std::move(still);
    state.dummy_groups.clear();
    state.group_begin.assign(h.n + 1, 0);
    state.counts_valid = false;
    ++state.iteration;

    out.uncolored_after = static_cast<int>(state.uncolored.size());
    out.min_list_after = state.uncolored.empty() ? 0 : list_min;
    out.mean_list_after =
        state.uncolored.empty() ? 0.0 : static_cast<double>(list_sum) / state.uncolored.size();

    // coloring soundness: no fully colored monochromatic edge, ever
    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        int c0 = state.phi.assignment[ed[0]];
        if (c0 == Coloring::kNone) continue;
        bool mono = true;
        for (int u : ed)
            if (state.phi.assignment[u] != c0) { mono = false; break; }
        if (mono)
            throw std::logic_error("nibble: invariant violated, edge " + std::to_string(e) +
                                   " became monochromatic");
    }
    return out;
}

}  // namespace hgc
