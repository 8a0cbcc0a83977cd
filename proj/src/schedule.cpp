#include "hgc/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace hgc {

namespace {

double binom(int nn, int kk) {
    if (kk < 0 || kk > nn) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
    return r;
}

void validate(const ScheduleParams& p) {
    if (p.k < 2) throw std::invalid_argument("schedule: k must be >= 2");
    if (!(p.Delta >= 2.0)) throw std::invalid_argument("schedule: Delta must be >= 2");
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("schedule: alpha must lie in (0, 1)");
    if (!(p.delta > 0.0)) throw std::invalid_argument("schedule: delta must be positive");
}

double fill_derived(ScheduleRecord& rec, const ScheduleParams& p) {
    int km1 = p.k - 1;
    double lnD = p.ln_delta_cap();
    rec.R.assign(km1, 0.0);
    rec.Rp.assign(km1, 0.0);
    rec.Y.assign(km1, 0.0);
    rec.S = 0.0;
    for (int r = 1; r <= km1; ++r) {
        rec.R[r - 1] = rec.T[r - 1] / std::pow(rec.L, r);
        rec.Rp[r - 1] = rec.Tp[r - 1] / std::pow(rec.Lp, r);
        rec.S += rec.T[r - 1] / (std::pow(rec.L, 2 * r) * std::pow(lnD, 2 * r));
    }
    for (int r = km1; r >= 1; --r)
        rec.Y[r - 1] = (r == km1 ? 0.0 : rec.Y[r]) + rec.T[r - 1] / std::pow(rec.L, r);
    return rec.S;
}

}  // namespace

double ScheduleParams::ln_delta_cap() const { return std::log(Delta); }

ScheduleParams ScheduleParams::theory(int k, double Delta, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.1))
        throw std::invalid_argument("schedule: theory mode requires epsilon in (0, 1/10]");
    ScheduleParams p;
    p.k = k;
    p.Delta = Delta;
    p.epsilon = epsilon;
    p.delta = (1.0 + epsilon) * (k - 1) - 1.0;
    p.K = 1.0 / (100.0 * std::pow(static_cast<double>(k), 3.0 * k));
    p.alpha = p.K / std::log(Delta);
    p.C = std::exp(-p.K * std::pow(static_cast<double>(k), 2.0 * (k - 2)) /
                   (1.0 - p.delta / (100.0 * k)));
    p.mode = ScheduleMode::theory;
    validate(p);
    return p;
}

ScheduleParams ScheduleParams::practical(int k, double Delta, double epsilon,
                                         double alpha_override) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("schedule: epsilon must be positive");
    ScheduleParams p;
    p.k = k;
    p.Delta = Delta;
    p.epsilon = epsilon;
    p.delta = (1.0 + epsilon) * (k - 1) - 1.0;
    p.K = 1.0 / (100.0 * std::pow(static_cast<double>(k), 3.0 * k));
    p.alpha = alpha_override > 0.0 ? alpha_override : p.K / std::log(Delta);
    p.C = std::exp(-p.K * std::pow(static_cast<double>(k), 2.0 * (k - 2)) /
                   (1.0 - p.delta / (100.0 * k)));
    p.mode = ScheduleMode::practical;
    validate(p);
    return p;
}

const char* halt_reason_name(HaltReason r) {
    switch (r) {
        case HaltReason::none: return "none";
        case HaltReason::stopped: return "stopped";
        case HaltReason::precondition_failed: return "precondition-failed";
        case HaltReason::max_iters: return "max-iters";
        case HaltReason::collapse: return "collapse";
    }
    return "?";
}

double keep_probability(const ScheduleParams& p, double L, const std::vector<double>& T) {
    if (!(L > 0.0) || p.alpha >= L)
        throw std::domain_error("keep: requires 0 < alpha < L");
    double log_keep = 0.0;
    for (int r = 1; r <= p.k - 1; ++r) {
        double x = std::pow(p.alpha / L, r);
        if (T[r - 1] != 0.0) log_keep += T[r - 1] * std::log1p(-x);
    }
    return std::exp(log_keep);
}

ScheduleRecord initial_record(const ScheduleParams& p) {
    int km1 = p.k - 1;
    ScheduleRecord rec;
    rec.L = (1.0 + p.delta) * std::pow(p.Delta / p.ln_delta_cap(), 1.0 / km1);
    rec.Lp = rec.L;
    rec.T.assign(km1, 0.0);
    rec.Tp.assign(km1, 0.0);
    rec.T[km1 - 1] = p.Delta;
    rec.Tp[km1 - 1] = p.Delta;
    rec.keep = keep_probability(p, rec.L, rec.T);
    fill_derived(rec, p);
    return rec;
}

ScheduleRecord step(const ScheduleParams& p, const ScheduleRecord& prev) {
    int km1 = p.k - 1;
    double lnD = p.ln_delta_cap();
    double keep = keep_probability(p, prev.L, prev.T);

    ScheduleRecord next;
    next.L = prev.L * keep - std::pow(prev.L, 2.0 / 3.0);
    next.Lp = prev.Lp * keep;
    next.T.assign(km1, 0.0);
    next.Tp.assign(km1, 0.0);

    // S_i uses the unprimed trajectory in both recursions.
    double S = 0.0;
    for (int l = 1; l <= km1; ++l)
        S += prev.T[l - 1] / (std::pow(prev.L, 2 * l) * std::pow(lnD, 2 * l));

    double survive = keep * (1.0 - p.alpha * keep);
    for (int r = 1; r <= km1; ++r) {
        double main = 0.0, mainp = 0.0, conc_base = 0.0;
        for (int j = r; j <= km1; ++j) {
            double b = binom(j, r);
            main += prev.T[j - 1] * b * std::pow(survive, r) *
                    std::pow(p.alpha * keep / prev.L, j - r);
            mainp += prev.Tp[j - 1] * b * std::pow(survive, r) *
                     std::pow(p.alpha * keep / prev.Lp, j - r);
            conc_base += b * std::pow(p.alpha, j - r) * prev.T[j - 1] / std::pow(prev.L, j - r);
        }
        double err = 4.0 * std::pow(static_cast<double>(p.k), 2.0 * (p.k - r)) * p.alpha *
                     std::pow(prev.L / p.alpha, r) * lnD * S;
        next.T[r - 1] = main + err + std::pow(conc_base, 2.0 / 3.0);
        next.Tp[r - 1] = mainp + err;
    }
    if (!(next.L > 0.0))
        throw TrajectoryCollapse("schedule step: L_{i+1} <= 0 (trajectory collapse)");
    next.keep = keep_probability(p, next.L, next.T);
    fill_derived(next, p);
    return next;
}

int default_max_iters(const ScheduleParams& p) {
    double lnD = p.ln_delta_cap();
    return static_cast<int>(std::ceil(10.0 * lnD * std::log(lnD)));
}

ScheduleTrajectory run_to_stop(const ScheduleParams& p, int max_iters) {
    if (max_iters < 1) throw std::invalid_argument("run_to_stop: max_iters must be >= 1");
    ScheduleTrajectory traj;
    traj.params = p;
    traj.records.push_back(initial_record(p));

    double floor = std::pow(p.ln_delta_cap(), 20.0 * (p.k - 1));
    double inv10k2 = 1.0 / (10.0 * p.k * p.k);

    for (int i = 1; i <= max_iters; ++i) {
        ScheduleRecord next;
        try {
            next = step(p, traj.records.back());
        } catch (const TrajectoryCollapse&) {
            traj.halt = HaltReason::collapse;
            traj.halt_detail = "L would go non-positive at iteration " + std::to_string(i + 1);
            return traj;
        }
        traj.records.push_back(next);

        bool stop = true;
        for (int r = 1; r <= p.k - 1; ++r)
            if (next.T[r - 1] > inv10k2 * std::pow(next.L, r)) { stop = false; break; }
        if (stop) {
            traj.i_star = i;
            traj.halt = HaltReason::stopped;
            traj.halt_detail = "T[i*+1][r] <= L[i*+1]^r/(10k^2) for all r at i* = " +
                               std::to_string(i);
            return traj;
        }

        if (p.mode == ScheduleMode::theory) {
            // the floor hypotheses quantify over 1 < j < i, so iteration 1
            // is exempt
            int idx = i + 1;
            if (next.L < floor) {
                traj.halt = HaltReason::precondition_failed;
                traj.halt_detail = "L[" + std::to_string(idx) + "] < (ln Delta)^{20(k-1)}";
                return traj;
            }
            for (int r = 1; r <= p.k - 1; ++r)
                if (next.T[r - 1] < floor) {
                    traj.halt = HaltReason::precondition_failed;
                    traj.halt_detail = "T[" + std::to_string(idx) + "][" + std::to_string(r) +
                                       "] < (ln Delta)^{20(k-1)}";
                    return traj;
                }
            if (next.T[p.k - 2] < inv10k2 * std::pow(next.L, p.k - 1)) {
                traj.halt = HaltReason::precondition_failed;
                traj.halt_detail = "T[" + std::to_string(idx) +
                                   "][k-1] < L^{k-1}/(10k^2) before stopping";
                return traj;
            }
        }
    }
    traj.halt = HaltReason::max_iters;
    traj.halt_detail = "max_iters = " + std::to_string(max_iters) + " reached";
    return traj;
}

BoundReport check_bounds(const ScheduleTrajectory& traj, const ScheduleParams& p) {
    BoundReport rep;
    int km1 = p.k - 1;
    double lnD = p.ln_delta_cap();
    double floor = std::pow(lnD, 20.0 * km1);
    double inv10k2 = 1.0 / (10.0 * p.k * p.k);
    int N = static_cast<int>(traj.records.size());

    auto floors_ok = [&](int j) {  // 1-based record index
        const auto& rec = traj.records[j - 1];
        if (rec.L < floor) return false;
        for (int r = 1; r <= km1; ++r)
            if (rec.T[r - 1] < floor) return false;
        return true;
    };
    auto add = [&](int i, int r, const char* family, double value, double bound, bool lower,
                   bool& family_pass) {
        BoundCheck c;
        c.i = i;
        c.r = r;
        c.family = family;
        c.value = value;
        c.bound = bound;
        c.lower = lower;
        c.pass = lower ? (value >= bound) : (value <= bound);
        if (!c.pass) family_pass = false;
        rep.checks.push_back(std::move(c));
    };

    for (int i = 1; i <= N; ++i) {
        const auto& rec = traj.records[i - 1];

        // hypotheses over 1 < j < i
        bool prior_floors = true;
        for (int j = 2; j < i && prior_floors; ++j) prior_floors = floors_ok(j);
        bool prior_tk = true;
        for (int j = 2; j < i && prior_tk; ++j)
            prior_tk = traj.records[j - 1].T[km1 - 1] >=
                       inv10k2 * std::pow(traj.records[j - 1].L, km1);

        if (prior_floors) {
            ++rep.r_bound_applicable;
            for (int r = 1; r <= km1; ++r)
                add(i, r, "R", rec.R[r - 1],
                    std::pow(static_cast<double>(p.k), 2.0 * (km1 - r)) * lnD, false,
                    rep.r_bound_pass);
        }
        if (floors_ok(i) && rec.R[km1 - 1] >= inv10k2) {
            ++rep.keep_band_applicable;
            add(i, 0, "keep", rec.keep, p.C, true, rep.keep_band_pass);
            add(i, 0, "keep", rec.keep,
                1.0 - std::pow(p.K, km1) / (12.0 * p.k * p.k * std::pow(lnD, km1)), false,
                rep.keep_band_pass);
        }
        if (prior_floors) {
            ++rep.rprime_bound_applicable;
            for (int r = 1; r <= km1; ++r) {
                double prod = 1.0;
                for (int q = r; q <= p.k - 2; ++q) prod *= (q + 1);
                double bound = std::pow(1.0 - p.alpha * p.C, static_cast<double>(r) * (i - 1)) *
                               lnD *
                               std::pow(1.0 + p.delta / std::pow(static_cast<double>(p.k), 100),
                                        km1 - r) /
                               (std::pow(1.0 + p.delta -
                                             p.delta / std::pow(static_cast<double>(p.k), 99),
                                         km1) *
                                std::pow(p.C, km1 - r)) *
                               prod;
                add(i, r, "Rprime", rec.Rp[r - 1], bound, false, rep.rprime_bound_pass);
            }
        }
        if (prior_floors && prior_tk) {
            ++rep.proximity_applicable;
            add(i, 0, "proximity", std::fabs(rec.L - rec.Lp), std::pow(rec.Lp, 5.0 / 6.0), false,
                rep.proximity_pass);
            for (int r = 1; r <= km1; ++r)
                add(i, r, "proximity", std::fabs(rec.T[r - 1] - rec.Tp[r - 1]),
                    std::pow(rec.Tp[r - 1], 100.0 * r / (100.0 * r + 1.0)), false,
                    rep.proximity_pass);
        }
    }
    return rep;
}

void write_trajectory_csv(std::ostream& out, const ScheduleTrajectory& traj) {
    int km1 = traj.params.k - 1;
    out << "i,L";
    for (int r = 1; r <= km1; ++r) out << ",T_" << r;
    out << ",Keep,Lp";
    for (int r = 1; r <= km1; ++r) out << ",Tp_" << r;
    for (int r = 1; r <= km1; ++r) out << ",R_" << r;
    out << ",halt_reason\n";
    char buf[64];
    auto emit = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out << ',' << buf;
    };
    for (size_t i = 0; i < traj.records.size(); ++i) {
        const auto& rec = traj.records[i];
        out << (i + 1);
        emit(rec.L);
        for (int r = 1; r <= km1; ++r) emit(rec.T[r - 1]);
        emit(rec.keep);
        emit(rec.Lp);
        for (int r = 1; r <= km1; ++r) emit(rec.Tp[r - 1]);
        for (int r = 1; r <= km1; ++r) emit(rec.R[r - 1]);
        out << ',' << (i + 1 == traj.records.size() ? halt_reason_name(traj.halt) : "");
        out << '\n';
    }
}

}  // namespace hgc
