#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/coloring.hpp"
#include "hgc/hypergraph.hpp"
#include "hgc/rand_util.hpp"

namespace hgc {

// Padding hyperedges added by equalize: `count` edges of size r+1, each
// containing the real vertex and r fresh dummy vertices whose lists hold
// the group color plus fresh colors nobody else sees. Each dummy vertex
// samples a color and a Bernoulli(alpha) activation like a real vertex;
// the only observable is whether some edge of the group has all r dummies
// activated and assigned the group color, and event scopes always cover
// whole groups, so the group's variables are drawn as one aggregate
// Bernoulli(1 - (1 - (alpha/L)^r)^count) block bit with the identical law.
struct DummyGroup {
    int vertex;
    int color;
    int r;
    int count;
};

// Mutable per-iteration coloring state. Lists are kept only for uncolored
// vertices; conflict counts t_{i,r}(v,c) are rebuilt from the real edges by
// rebuild_conflict_index and topped up to their targets by equalize's dummy
// registry. current_L is the equalized list size (dummy lists have exactly
// that many colors, one of them the group color).
struct NibbleState {
    const Hypergraph* base = nullptr;
    int iteration = 1;
    Coloring phi;
    std::vector<char> uncolored_mask;
    std::vector<int> uncolored;               // ascending
    std::vector<std::vector<int>> lists;      // sorted, per real vertex
    // real-edge conflict counts: counts[v][pos*(k-1) + (r-1)] for pos
    // indexing lists[v]
    std::vector<std::vector<int>> counts;
    bool counts_valid = false;
    std::vector<DummyGroup> dummy_groups;     // sorted by (vertex, color, r)
    std::vector<std::uint32_t> group_begin;   // per-vertex spans, size n+1
    int current_L = 0;
    Rng rng;

    NibbleState(const Hypergraph& h, ListAssignment la, std::uint64_t seed);

    int list_pos(int v, int color) const;     // -1 if absent
    int t_total(int v, int pos, int r) const; // real + dummy count
};

struct Proposal {
    std::vector<int> color_idx;        // per real vertex, index into its list
    std::vector<char> active;
    std::vector<char> dummy_blocked;   // per dummy group: some edge all-blocking
};

struct EqualizeError : std::runtime_error {
    int vertex;
    int color;  // -1 for a list-size violation
    int r;      // 0 for a list-size violation
    EqualizeError(int v, int c, int rr, const std::string& what)
        : std::runtime_error(what), vertex(v), color(c), r(rr) {}
};

// P(i) -> Q(i): trims every list to exactly L_target (largest color ids
// dropped) and pads every conflict count up to T_target[r-1] with dummy
// hyperedges. Throws EqualizeError when a list is too short or a post-trim
// count exceeds its target.
void equalize(NibbleState& state, int L_target, const std::vector<int>& T_target);

void rebuild_conflict_index(NibbleState& state);

// Independent uniform color and Bernoulli(alpha) activation per uncolored
// vertex, dummies included. Deterministic given the state's rng.
Proposal sample(NibbleState& state, double alpha);

// True iff no hyperedge through v forces c: an edge blocks c when every
// colored vertex besides v carries c and every uncolored vertex besides v
// is activated and assigned c (dummy edges: all their dummies activated and
// assigned the group color). v's own variables never matter.
bool available(const NibbleState& state, const Proposal& prop, int v, int c);

struct BadEvent {
    int type;   // 0 = A_v (list depletion), 1 = B^r_{v,c} (conflict excess)
    int v;
    int color;  // -1 for A events
    int r;      // 0 for A events
    bool operator<(const BadEvent& o) const {
        if (type != o.type) return type < o.type;
        if (v != o.v) return v < o.v;
        if (color != o.color) return color < o.color;
        return r < o.r;
    }
    bool operator==(const BadEvent& o) const {
        return type == o.type && v == o.v && color == o.color && r == o.r;
    }
};

// Would-be next state under the proposal: per-vertex availability masks,
// retention flags, and next conflict counts.
struct ProposalEvaluation {
    std::vector<std::vector<char>> avail;  // per vertex, per list position
    std::vector<int> survivors;
    std::vector<char> retained;            // activated && assigned color available
    std::vector<std::vector<int>> tnext;   // same layout as NibbleState::counts
    double mean_survivors = 0.0;
    int min_survivors = 0;
    std::vector<int> max_tnext;            // per r
};

ProposalEvaluation evaluate_proposal(const NibbleState& state, const Proposal& prop);

// Violated events: A_v when the survivor count drops below floor(L_next),
// B^r_{v,c} when the next count exceeds ceil(T_next[r-1]) for a color that
// survived for a vertex that stays uncolored.
std::vector<BadEvent> evaluate_bad_events(const NibbleState& state, const Proposal& prop,
                                          double L_next, const std::vector<double>& T_next);

struct MtLimits {
    std::uint64_t max_resamples = 10000;
    bool theory = false;  // theory mode treats list collapse as fatal
};

struct IterationOutcome {
    int iteration = 0;            // index of the iteration that just ran
    std::uint64_t resamples = 0;
    bool certified = false;       // accepted with zero violated events
    std::size_t residual_violations = 0;  // nonzero only when budget forced acceptance
    int uncolored_after = 0;
    int min_list_after = 0;       // over still-uncolored vertices
    double mean_list_after = 0.0;
    int emptied_lists = 0;
    std::uint64_t dummy_edges_used = 0;
    Proposal accepted;            // the state the transition was read from
};

// One full iteration: draw a proposal, resample the scope of the smallest
// violated event until none is violated (or the budget forces the
// best-seen proposal), then apply: next lists = available colors, uncolor
// deactivated or blocked vertices, strip dummies. The analysis assumes
// Q(i) (equalize first); the iteration itself is well defined on any
// state, which practical callers use with empirical thresholds since the
// tightness of P(i) is an analysis convenience.
IterationOutcome moser_tardos_iterate(NibbleState& state, double alpha, double L_next,
                                      const std::vector<double>& T_next, const MtLimits& limits);

// Variables a violated event may depend on (resampled together).
struct EventScope {
    std::vector<int> real_vertices;            // ascending
    std::vector<std::size_t> dummy_group_ids;  // indices into dummy_groups
};
EventScope event_scope(const NibbleState& state, const BadEvent& ev);

}  // namespace hgc
