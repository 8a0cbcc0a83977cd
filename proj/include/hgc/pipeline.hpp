#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgc/coloring.hpp"
#include "hgc/finisher.hpp"
#include "hgc/hypergraph.hpp"
#include "hgc/nibble.hpp"
#include "hgc/randgen.hpp"
#include "hgc/schedule.hpp"

namespace hgc {

struct PipelineOptions {
    ScheduleMode mode = ScheduleMode::practical;
    double epsilon = 0.1;  // Theorem-1 slack for girth-5 inputs
    double delta = 0.2;    // girth-reducibility slack for random inputs
    double alpha = 0.2;    // practical activation probability
    std::uint64_t seed = 0;
    int max_nibble_iters = 24;
    std::uint64_t mt_budget = 2000;       // resamples per nibble iteration
    std::uint64_t final_budget = 1 << 22; // final-phase resamples
    // Definition-mode expansion: its clause-(c) threshold is the one the
    // list-trimming argument consumes, so boundary vertices never carry more
    // forbidden colors than the lists can absorb.
    DecomposeMode decompose_mode = DecomposeMode::definition;
    // Cycle-scan budget for the pipeline's decomposition. Instances dense
    // enough to exhaust it are nowhere near girth-reducible, so the pipeline
    // takes the capped (incomplete-witness) answer and falls through to the
    // greedy path rather than spending minutes on an exact census.
    std::uint64_t decompose_scan_cap = 150'000'000ULL;
    std::ostream* trace = nullptr;  // per-iteration lines when set
};

struct NibbleRunStats {
    int iterations = 0;
    std::uint64_t total_resamples = 0;
    bool all_certified = true;
    bool certificate_reached = false;  // the local-lemma stop fired
    int uncolored_at_final = 0;
};

struct PipelineResult {
    bool success = false;
    std::string error;
    int q = 0;
    Coloring coloring;
    VerifyReport verification;

    // girth-5 path
    bool girth_ok = false;
    std::vector<int> girth_witness;  // offending edge ids on refusal
    std::string schedule_halt;       // theory mode only

    NibbleRunStats nibble;
    std::uint64_t final_resamples = 0;
    bool final_certified = false;  // certificate held when final phase started

    // random path
    bool decomposed = false;
    bool girth_reducible = false;
    std::size_t U_size = 0;
    int kappa_U = 0;
    int colors_used = 0;
};

// List size from the girth-5 theorem: ceil((1+eps)(k-1)(Delta/ln Delta)^{1/(k-1)}),
// with small-degree guards (1 for edgeless inputs, 2 for matchings).
int girth5_list_size(int k, int max_degree, double epsilon);

// List size for random inputs: ceil((1+4*delta)(k-1)(d/ln d)^{1/(k-1)}).
int random_list_size(int k, double avg_degree, double delta);

// Full high-girth pipeline: verify girth >= 5 (refuse with a witness
// otherwise), build uniform lists of the theorem size, run equalized nibble
// iterations until the final-phase local-lemma certificate holds (or the
// iteration cap), then complete with the final phase and verify.
PipelineResult color_girth5(const Hypergraph& h, const PipelineOptions& opt);

// Random-hypergraph pipeline: decompose, greedy-color H[U] in reverse
// degeneracy order, delete the colors of U-neighbors from the remaining
// lists, run the girth-5 machinery on H[V\U], merge and verify globally.
PipelineResult color_random(const Hypergraph& h, const PipelineOptions& opt);

// Nibble-on-subinstance entry shared by both pipelines: colors `h` with the
// given per-vertex lists. Exposed for tests.
PipelineResult color_with_lists(const Hypergraph& h, const ListAssignment& lists,
                                const PipelineOptions& opt);

struct KeepEstimate {
    double keep = 0.0;       // analytic Keep for (L, T, alpha)
    double estimate = 0.0;   // Monte Carlo survival frequency of one (v, c)
    double std_error = 0.0;
    double z = 0.0;
    double mean_survivors = 0.0;  // mean list size after one round
    double expected_mean = 0.0;   // L * Keep
    double mean_std_error = 0.0;
    double z_mean = 0.0;
    int trials = 0;
};

// Monte Carlo check of the survival identity on a Q(i)-exact gadget: one
// real vertex with list [0, L), conflict counts padded to T by equalize.
KeepEstimate estimate_keep(int k, int L, const std::vector<int>& T, double alpha, int trials,
                           std::uint64_t seed);

// Free-standing Keep evaluation used by the gadget (no Delta needed).
double keep_value(int k, double alpha, double L, const std::vector<double>& T);

}  // namespace hgc
