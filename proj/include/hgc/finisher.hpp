#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/coloring.hpp"
#include "hgc/hypergraph.hpp"

namespace hgc {

struct GreedyExhausted : std::runtime_error {
    int vertex;
    int list_size;
    int forbidden_count;
    int blocked_count;
    GreedyExhausted(int v, int ls, int fc, int bc)
        : std::runtime_error("greedy: list exhausted at vertex " + std::to_string(v) +
                             " (list " + std::to_string(ls) + ", forbidden " + std::to_string(fc) +
                             ", edge-blocked " + std::to_string(bc) + ")"),
          vertex(v), list_size(ls), forbidden_count(fc), blocked_count(bc) {}
};

// Colors vertices in reverse elimination order. A color is admissible when
// it is in the vertex's list, not in its forbidden set, and does not turn
// any incident hyperedge monochromatic (an edge constrains the choice only
// once all its other vertices are colored with a common color). Each
// already-colored back-edge therefore blocks at most one color, so lists of
// size degeneracy+1 always suffice. Smallest admissible color wins.
// Throws GreedyExhausted when a vertex runs out.
Coloring greedy_degenerate(const Hypergraph& h, const ListAssignment& la,
                           const std::vector<int>& order,
                           const std::vector<std::vector<int>>& forbidden);

// Final-phase input: a proper partial coloring phi, lists for the uncolored
// vertices, and the bad-event family A_{h,c} (edge h would be fully colored
// c). Events exist for each edge with an uncolored vertex whose colored part
// is monochromatic in a color lying in every uncolored member's list (all
// colors in the common list when the edge is fully uncolored).
struct FinalPhaseEvent {
    int edge;
    int color;
};

struct FinalPhaseInstance {
    const Hypergraph* base = nullptr;
    ListAssignment lists;
    Coloring phi;
    std::vector<int> uncolored;            // ascending
    std::vector<FinalPhaseEvent> events;   // sorted by (edge, color)

    // Throws std::invalid_argument if phi already has a monochromatic fully
    // colored edge (the partial coloring must be proper).
    static FinalPhaseInstance make(const Hypergraph& h, const ListAssignment& la,
                                   const Coloring& phi);
};

struct FinalPhaseResult {
    bool success = false;
    Coloring coloring;
    std::uint64_t resamples = 0;
    std::string error;
};

// Moser-Tardos over the product distribution: every uncolored vertex draws
// uniformly from its list; while some A_{h,c} holds, the uncolored vertices
// of that edge (and only those) are redrawn. Smallest (edge, color) first.
// budget bounds the number of resampling steps; exhaustion returns a failed
// result with no coloring.
FinalPhaseResult final_phase(const FinalPhaseInstance& inst, std::uint64_t budget,
                             std::uint64_t seed);

struct CertEventReport {
    int edge;
    int color;
    double mu;
    double dep_sum;
    bool ok;
};

struct CertReport {
    std::size_t event_count = 0;
    bool prob_condition = true;  // mu(A) <= 1/4 for every event
    bool dep_condition = true;   // sum over D(A) of mu <= 1/4 for every event
    bool certified = true;       // both
    double max_mu = 0.0;
    double max_dep_sum = 0.0;
    // Moser-Tardos witness-tree bound with x(B) = 2 mu(B): expected total
    // resamples at most sum 2mu/(1-2mu). Meaningful when certified.
    double expected_resamples = 0.0;
    std::vector<CertEventReport> failing;  // capped at 32
};

// Evaluates both conditions of the local-lemma corollary for every event:
// mu(A_{h,c}) = 1 / prod |L_v| over uncolored members, and the dependency
// sum over edges competing for a color with some uncolored member of h.
CertReport lll_certificate(const FinalPhaseInstance& inst);

}  // namespace hgc
