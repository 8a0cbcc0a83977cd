#include "hgc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hgc/degeneracy.hpp"

namespace hgc {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double keep_value(int k, double alpha, double L, const std::vector<double>& T) {
    ScheduleParams p;
    p.k = k;
    p.alpha = alpha;
    if (!(L > 0.0) || alpha >= L) throw std::domain_error("keep: requires 0 < alpha < L");
    double log_keep = 0.0;
    for (int r = 1; r <= k - 1; ++r) {
        double x = std::pow(alpha / L, r);
        if (T[r - 1] != 0.0) log_keep += T[r - 1] * std::log1p(-x);
    }
    return std::exp(log_keep);
}

int girth5_list_size(int k, int max_degree, double epsilon) {
    if (max_degree <= 0) return 1;
    if (max_degree == 1) return 2;
    double base = static_cast<double>(max_degree) / std::log(static_cast<double>(max_degree));
    double q = (1.0 + epsilon) * (k - 1) * std::pow(base, 1.0 / (k - 1));
    return std::max(2, static_cast<int>(std::ceil(q)));
}

int random_list_size(int k, double avg_degree, double delta) {
    double q = (1.0 + 4.0 * delta) * (k - 1) *
               std::pow(avg_degree / std::log(avg_degree), 1.0 / (k - 1));
    return std::max(2, static_cast<int>(std::ceil(q)));
}

PipelineResult color_with_lists(const Hypergraph& h, const ListAssignment& lists,
                                const PipelineOptions& opt) {
    PipelineResult res;
    res.girth_ok = true;

    // theory mode needs the schedule to reach its stopping index first
    ScheduleTrajectory traj;
    if (opt.mode == ScheduleMode::theory) {
        int delta_max = std::max(2, h.max_degree());
        ScheduleParams params =
            ScheduleParams::theory(h.k, static_cast<double>(delta_max), opt.epsilon);
        traj = run_to_stop(params, default_max_iters(params));
        res.schedule_halt = halt_reason_name(traj.halt);
        if (traj.halt != HaltReason::stopped) {
            res.error = "theory-mode schedule halted without reaching i*: " + traj.halt_detail;
            return res;
        }
    }

    NibbleState state(h, lists, mix_seed(opt.seed, 1));
    int km1 = h.k - 1;

    for (int iter = 1; iter <= opt.max_nibble_iters; ++iter) {
        if (state.uncolored.empty()) break;
        if (opt.mode == ScheduleMode::theory && traj.i_star && iter > *traj.i_star) break;

        // practical stop: the final phase is safe once the local-lemma
        // certificate holds for the current partial coloring
        if (opt.mode == ScheduleMode::practical) {
            FinalPhaseInstance probe =
                FinalPhaseInstance::make(h, ListAssignment{state.lists}, state.phi);
            CertReport cert = lll_certificate(probe);
            if (cert.certified) {
                res.nibble.certificate_reached = true;
                break;
            }
        }

        double L_next = 1.0;
        std::vector<double> T_next(km1, 0.0);
        int L_target = 0;
        if (opt.mode == ScheduleMode::theory) {
            // faithful composition: equalize to the schedule's floored
            // targets, thresholds from the next record
            const auto& rec = traj.records[iter - 1];
            const auto& nxt = traj.records[iter];
            L_target = static_cast<int>(std::floor(rec.L));
            std::vector<int> T_target(km1, 0);
            for (int r = 0; r < km1; ++r)
                T_target[r] = static_cast<int>(std::ceil(rec.T[r]));
            try {
                equalize(state, L_target, T_target);
            } catch (const EqualizeError& err) {
                res.error = std::string("equalize failed: ") + err.what();
                return res;
            }
            L_next = nxt.L;
            for (int r = 0; r < km1; ++r) T_next[r] = nxt.T[r];
        } else {
            // Practical mode runs the iteration on the un-tightened state:
            // padding every conflict count up to the worst case would
            // multiply list attrition by max/mean at desk-scale list sizes,
            // and tightness is an analysis convenience, not an algorithmic
            // requirement. Thresholds come from a pilot proposal instead.
            int min_list = INT32_MAX;
            for (int v : state.uncolored)
                min_list = std::min(min_list, static_cast<int>(state.lists[v].size()));
            L_target = min_list;
            if (min_list == 0) {
                res.error = "nibble: a color list emptied before the final phase";
                return res;
            }
            Proposal pilot = sample(state, opt.alpha);
            ProposalEvaluation pe = evaluate_proposal(state, pilot);
            L_next = std::max(1.0, std::floor(0.9 * pe.min_survivors));
            for (int r = 0; r < km1; ++r) T_next[r] = pe.max_tnext[r];
        }

        MtLimits limits;
        limits.max_resamples = opt.mt_budget;
        limits.theory = opt.mode == ScheduleMode::theory;
        std::size_t v_i = state.uncolored.size();
        IterationOutcome out = moser_tardos_iterate(state, opt.alpha, L_next, T_next, limits);
        ++res.nibble.iterations;
        res.nibble.total_resamples += out.resamples;
        if (!out.certified) res.nibble.all_certified = false;
        if (opt.trace)
            (*opt.trace) << out.iteration << ' ' << v_i << ' ' << L_target << ' '
                         << out.resamples << ' ' << (out.certified ? 1 : 0) << '\n';

        if (out.emptied_lists > 0) {
            res.error = "nibble: " + std::to_string(out.emptied_lists) +
                        " color lists emptied (collapse)";
            return res;
        }
    }

    res.nibble.uncolored_at_final = static_cast<int>(state.uncolored.size());
    FinalPhaseInstance inst =
        FinalPhaseInstance::make(h, ListAssignment{state.lists}, state.phi);
    CertReport cert = lll_certificate(inst);
    res.final_certified = cert.certified;
    FinalPhaseResult fin = final_phase(inst, opt.final_budget, mix_seed(opt.seed, 2));
    res.final_resamples = fin.resamples;
    if (!fin.success) {
        res.error = fin.error;
        return res;
    }
    res.coloring = fin.coloring;
    res.success = true;
    return res;
}

PipelineResult color_girth5(const Hypergraph& h, const PipelineOptions& opt) {
    PipelineResult res;
    CycleReport cycles = short_cycles(h, 4, 4);
    if (!cycles.girth_at_least_5()) {
        res.girth_ok = false;
        for (int len = 2; len <= 4; ++len)
            if (!cycles.witnesses[len].empty()) {
                res.girth_witness = cycles.witnesses[len].front();
                res.error = "input has a " + std::to_string(len) + "-cycle";
                break;
            }
        if (res.error.empty()) res.error = "could not certify girth >= 5 (scan cap hit)";
        return res;
    }

    res.q = girth5_list_size(h.k, h.max_degree(), opt.epsilon);
    ListAssignment lists = ListAssignment::uniform(h.n, res.q);
    PipelineResult run = color_with_lists(h, lists, opt);
    run.q = res.q;
    run.girth_ok = true;
    if (run.success) {
        run.verification = verify(h, lists, run.coloring);
        run.success = run.verification.proper;
        run.colors_used = run.coloring.colors_used();
        if (!run.success && run.error.empty()) run.error = "verification failed";
    }
    return run;
}

PipelineResult color_random(const Hypergraph& h, const PipelineOptions& opt) {
    PipelineResult res;
    double d = h.average_degree();
    if (!(d > std::exp(1.0))) {
        res.error = "average degree must exceed e for the list-size formulas (got " +
                    std::to_string(d) + ")";
        return res;
    }
    res.q = random_list_size(h.k, d, opt.delta);
    ListAssignment lists = ListAssignment::uniform(h.n, res.q);

    Decomposition dec = decompose(h, opt.delta, opt.decompose_mode, opt.decompose_scan_cap);
    res.decomposed = true;
    res.girth_reducible = dec.girth_reducible;
    res.U_size = dec.U.size();
    res.kappa_U = dec.kappa_U;

    Coloring merged(h.n);

    // greedy on H[U] in reverse degeneracy order
    if (!dec.U.empty()) {
        InducedSubgraph hu = induced_subhypergraph(h, dec.in_U);
        DegeneracyResult deg = degeneracy(hu.sub);
        ListAssignment lu = ListAssignment::uniform(hu.sub.n, res.q);
        try {
            Coloring cu = greedy_degenerate(hu.sub, lu, deg.order, {});
            for (int v = 0; v < hu.sub.n; ++v)
                merged.assignment[hu.to_parent[v]] = cu.assignment[v];
        } catch (const GreedyExhausted& ex) {
            res.error = std::string("greedy on H[U] failed: ") + ex.what();
            return res;
        }
    }

    // remaining vertices lose the colors of their U-neighbors
    std::vector<char> keep(h.n);
    for (int v = 0; v < h.n; ++v) keep[v] = dec.in_U[v] ? 0 : 1;
    InducedSubgraph hw = induced_subhypergraph(h, keep);
    if (hw.sub.n > 0) {
        ListAssignment lw;
        lw.lists.resize(hw.sub.n);
        std::vector<char> seen(res.q, 0);
        for (int v = 0; v < hw.sub.n; ++v) {
            int parent = hw.to_parent[v];
            std::fill(seen.begin(), seen.end(), 0);
            for (int e : h.incidence[parent])
                for (int u : h.edges[e]) {
                    if (u == parent || !dec.in_U[u]) continue;
                    int cu = merged.assignment[u];
                    if (cu >= 0 && cu < res.q) seen[cu] = 1;
                }
            for (int c = 0; c < res.q; ++c)
                if (!seen[c]) lw.lists[v].push_back(c);
            if (lw.lists[v].empty()) {
                res.error = "vertex " + std::to_string(parent) +
                            " lost every color to its U-neighbors";
                return res;
            }
        }
        PipelineResult sub = color_with_lists(hw.sub, lw, opt);
        res.nibble = sub.nibble;
        res.final_resamples = sub.final_resamples;
        res.final_certified = sub.final_certified;
        res.schedule_halt = sub.schedule_halt;
        if (!sub.success) {
            res.error = "on H[V\\U]: " + sub.error;
            return res;
        }
        for (int v = 0; v < hw.sub.n; ++v)
            merged.assignment[hw.to_parent[v]] = sub.coloring.assignment[v];
    }

    res.coloring = merged;
    res.verification = verify(h, lists, merged);
    res.success = res.verification.proper;
    res.colors_used = merged.colors_used();
    if (!res.success && res.error.empty())
        res.error = "merged coloring failed verification";
    return res;
}

KeepEstimate estimate_keep(int k, int L, const std::vector<int>& T, double alpha, int trials,
                           std::uint64_t seed) {
    if (static_cast<int>(T.size()) != k - 1)
        throw std::invalid_argument("estimate_keep: T must have k-1 entries");
    std::vector<double> T_real(T.begin(), T.end());
    KeepEstimate est;
    est.trials = trials;
    est.keep = keep_value(k, alpha, static_cast<double>(L), T_real);
    est.expected_mean = L * est.keep;

    Hypergraph gadget = build(k, 1, {});
    ListAssignment la;
    la.lists.push_back({});
    for (int c = 0; c < L; ++c) la.lists[0].push_back(c);
    NibbleState state(gadget, la, seed);
    equalize(state, L, T);

    long long survive = 0;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        Proposal prop = sample(state, alpha);
        int alive = 0;
        for (int c = 0; c < L; ++c)
            if (available(state, prop, 0, c)) {
                ++alive;
                if (c == 0) ++survive;
            }
        sum += alive;
        sumsq += static_cast<double>(alive) * alive;
    }
    est.estimate = static_cast<double>(survive) / trials;
    est.std_error = std::sqrt(est.keep * (1.0 - est.keep) / trials);
    est.z = est.std_error > 0.0 ? (est.estimate - est.keep) / est.std_error : 0.0;
    est.mean_survivors = sum / trials;
    double var = std::max(0.0, sumsq / trials - est.mean_survivors * est.mean_survivors);
    est.mean_std_error = std::sqrt(var / trials);
    est.z_mean = est.mean_std_error > 0.0
                     ? (est.mean_survivors - est.expected_mean) / est.mean_std_error
                     : 0.0;
    return est;
}

}  // namespace hgc
