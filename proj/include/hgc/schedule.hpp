#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/hypergraph.hpp"

namespace hgc {

enum class ScheduleMode { theory, practical };

// Analytic constants for the semi-random coloring schedule. Theory mode
// uses the activation constant K = (100 k^{3k})^{-1} and alpha = K/ln Delta
// and tracks the (ln Delta)^{20(k-1)} floors; practical mode lets the
// caller pick alpha and skips the floors.
struct ScheduleParams {
    int k = 3;
    double Delta = 1e6;
    double epsilon = 0.1;
    double delta = 0.0;  // (1+eps)(k-1) - 1
    double K = 0.0;      // (100 k^{3k})^{-1} unless overridden
    double alpha = 0.0;  // K / ln Delta unless overridden
    double C = 0.0;      // exp(-K k^{2(k-2)} / (1 - delta/(100k)))
    ScheduleMode mode = ScheduleMode::theory;

    double ln_delta_cap() const;  // ln Delta

    static ScheduleParams theory(int k, double Delta, double epsilon);
    static ScheduleParams practical(int k, double Delta, double epsilon, double alpha_override);
};

// State of the recursions at one iteration. T, Tp, R, Rp, Y are indexed by
// r-1 for r in [1, k-1]. keep is Keep_i evaluated from the unprimed L, T.
struct ScheduleRecord {
    double L = 0.0, Lp = 0.0;
    std::vector<double> T, Tp;
    double keep = 1.0;
    std::vector<double> R, Rp, Y;
    double S = 0.0;
};

enum class HaltReason { none, stopped, precondition_failed, max_iters, collapse };
const char* halt_reason_name(HaltReason r);

struct ScheduleTrajectory {
    ScheduleParams params;
    std::vector<ScheduleRecord> records;  // records[i-1] holds iteration i
    std::optional<int> i_star;            // stop index: T[i*+1][r] <= L[i*+1]^r/(10k^2)
    HaltReason halt = HaltReason::none;
    std::string halt_detail;
};

struct TrajectoryCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Keep_i = prod_r (1 - (alpha/L)^r)^{T_r}, evaluated in log space.
// Throws std::domain_error unless 0 < alpha < L.
double keep_probability(const ScheduleParams& p, double L, const std::vector<double>& T);

ScheduleRecord initial_record(const ScheduleParams& p);

// One application of the L/T recursions plus their error-free primed
// variants (Keep and the additive error term always use the unprimed
// values). Throws TrajectoryCollapse if L_{i+1} <= 0.
ScheduleRecord step(const ScheduleParams& p, const ScheduleRecord& prev);

int default_max_iters(const ScheduleParams& p);  // ceil(10 ln D ln ln D)

ScheduleTrajectory run_to_stop(const ScheduleParams& p, int max_iters);

// One evaluated inequality from the bound families the analysis tracks.
struct BoundCheck {
    int i = 0;             // iteration, 1-based
    int r = 0;             // 0 when the check has no r
    std::string family;    // "R", "keep", "Rprime", "proximity"
    double value = 0.0;
    double bound = 0.0;
    bool lower = false;    // true when the check is value >= bound
    bool pass = false;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    bool r_bound_pass = true;          // R_{i,r} <= k^{2(k-1-r)} ln Delta
    bool keep_band_pass = true;        // C <= Keep_i <= 1 - K^{k-1}/(12k^2 lnD^{k-1})
    bool rprime_bound_pass = true;     // Lemma "pain" envelope on R'
    bool proximity_pass = true;        // |L-L'|, |T-T'| bands
    int r_bound_applicable = 0;        // iterations where each family applied
    int keep_band_applicable = 0;
    int rprime_bound_applicable = 0;
    int proximity_applicable = 0;
};

// Evaluates each lemma's displayed inequality at every iteration where its
// hypotheses hold numerically.
BoundReport check_bounds(const ScheduleTrajectory& traj, const ScheduleParams& p);

// CSV: i, L, T_1..T_{k-1}, Keep, Lp, Tp_1..Tp_{k-1}, R_1..R_{k-1}, halt_reason
void write_trajectory_csv(std::ostream& out, const ScheduleTrajectory& traj);

}  // namespace hgc
