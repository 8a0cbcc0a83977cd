#pragma once

#include <cstdint>
#include <vector>

#include "hgc/cycles.hpp"
#include "hgc/degeneracy.hpp"
#include "hgc/hypergraph.hpp"

namespace hgc {

enum class GenModel { binomial, fixed_count };

// Random k-uniform hypergraph parameters. The binomial model includes each
// k-subset independently with probability p = d / C(n, k-1); the fixed
// model draws exactly ceil(d n / k) distinct subsets uniformly.
struct GenParams {
    int k = 3;
    int n = 100;
    double d = 5.0;
    GenModel model = GenModel::binomial;
    std::uint64_t seed = 0;

    double edge_probability() const;  // d / C(n, k-1)
};

// The binomial model is realized by drawing the Binomial(C(n,k), p) edge
// count and then that many distinct uniform k-subsets, which has exactly
// the per-subset-Bernoulli distribution.
Hypergraph generate(const GenParams& params);

// Girth-reducibility decomposition certificates (Definition 1 plus the
// auxiliary thresholds the random-model analysis uses).
struct Decomposition {
    std::vector<int> U;            // ascending
    std::vector<char> in_U;
    double d = 0.0;                // average degree of the input
    double delta = 0.0;

    // clause (a): U holds every short-cycle witness vertex and every
    // over-degree vertex
    bool clause_a_pass = false;
    bool witnesses_complete = true;  // false if the cycle scan hit its cap
    // clause (b): degeneracy of H[U]
    int kappa_U = 0;
    double threshold_b_definition = 0.0;  // (d/ln d)^{1/(k-1)}
    double threshold_b_lemma = 0.0;       // k (d/(ln d)^2)^{1/(k-1)}
    bool clause_b_definition_pass = false;
    bool clause_b_lemma_pass = false;
    // clause (c): boundary neighbor counts of V \ U
    double threshold_c = 0.0;      // delta (d/ln d)^{1/(k-1)}
    double threshold_proof = 0.0;  // 9 k^2 (d/(ln d)^2)^{1/(k-1)}
    int max_boundary = 0;
    std::vector<int> boundary_counts;  // -1 for members of U
    bool clause_c_pass = false;
    // complement certificates
    CycleReport complement_cycles;
    int complement_max_degree = 0;
    bool complement_girth5 = false;
    bool complement_degree_ok = false;  // max degree <= (1+delta) d

    int expansion_rounds = 0;
    bool girth_reducible = false;  // all of the above and U != V
};

enum class DecomposeMode { definition, proof };

// U starts from the over-degree vertices and all short-cycle witness
// vertices, then absorbs boundary violators: definition mode adds every
// vertex of V\U with more than delta (d/ln d)^{1/(k-1)} U-neighbors; proof
// mode picks the smallest vertex with at least 9k^2 (d/(ln d)^2)^{1/(k-1)}
// U-neighbors and absorbs covering hyperedges (smallest edge id through the
// smallest uncovered neighbor) until none of its snapshot neighbors remain.
// Requires average degree > e. U = V comes back as not girth-reducible.
// scan_work_cap bounds the short-cycle enumeration; a capped scan marks the
// witnesses incomplete and the result not girth-reducible.
Decomposition decompose(const Hypergraph& h, double delta, DecomposeMode mode,
                        std::uint64_t scan_work_cap = 2'000'000'000ULL);

struct DegreeStats {
    int n = 0;
    double d = 0.0;
    int cap = 0;
    std::vector<std::int64_t> histogram;  // X_c for c in [0, cap]
    std::int64_t above_cap = 0;
    std::vector<int> degrees;             // full degree sequence
};

DegreeStats degree_stats(const Hypergraph& h, int cap = 64);

struct PoissonBand {
    int c;
    double observed;  // X_c / n
    double expected;  // d^c e^{-d} / c!
    double sigma;     // sqrt(expected (1-expected) / n)
    bool pass;
};

struct PoissonReport {
    std::vector<PoissonBand> bands;
    bool bands_pass = true;
    // vertices with degree in [(1+delta) d, 3 (k-1)^{k-1} d]
    std::int64_t midrange_count = 0;
    double midrange_bound = 0.0;  // n / d^2
    bool midrange_pass = false;
    // vertices with degree > (1+delta) d
    std::int64_t overdegree_count = 0;
    double overdegree_bound = 0.0;  // 2 n / d^2
    bool overdegree_pass = false;
};

PoissonReport check_poisson(const DegreeStats& stats, int c_max, double tol_sigma, double delta,
                            int k);

struct SparseSubsetReport {
    double bound_ratio = 0.0;  // (d/(ln d)^2)^{1/(k-1)}
    double max_ratio = 0.0;    // worst observed edges/|S|
    int worst_size = 0;
    int trials = 0;
    bool counterexample_found = false;
    bool pass = false;  // no counterexample found (not a proof)
};

// Randomized refutation search for the sparse-subset property: subset sizes
// are log-spaced up to n d^{-1/(k-1)}; each subset is drawn uniformly and
// densified by swapping in vertices with many edges into it. One trial per
// size seeds from the highest-degree vertices.
SparseSubsetReport sparse_subset_check(const Hypergraph& h, int trials, std::uint64_t seed);

// Rejection-sampled random k-uniform hypergraph of girth >= 5: edges are
// drawn uniformly and kept only when they close no 2-, 3- or 4-cycle.
// Used by experiments and tests that need high-girth inputs.
Hypergraph generate_girth5(int k, int n, double target_avg_degree, int max_degree,
                           std::uint64_t seed);

}  // namespace hgc
