#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hgc/hypergraph.hpp"

namespace hgc {

// An i-cycle is a set of i distinct hyperedges spanned by at most i(k-1)
// vertices. We count the *minimal* such sets (no proper subset of size >= 2
// is itself deficient); every deficient edge set contains a minimal one, so
// girth >= 5 holds iff counts[2..4] are all zero. Minimal sets are always
// connected, and for every k they take exactly three shapes:
//   i=2: two edges sharing >= 2 vertices;
//   i=3: a loose triangle (three pairwise intersections, each a distinct
//        single vertex);
//   i=4: a loose 4-cycle (cyclic singleton intersections through four
//        distinct corner vertices, opposite edges disjoint).
struct CycleReport {
    std::array<std::uint64_t, 5> counts{};  // indexed by cycle length i in {2,3,4}
    std::array<bool, 5> exact{true, true, true, true, true};
    std::array<std::vector<std::vector<int>>, 5> witnesses;  // edge-id sets, capped
    std::vector<int> vertices_in_short_cycles;               // sorted union over all sets found
    bool vertices_complete = true;  // false iff some stage hit its work cap

    bool girth_at_least_5() const {
        return counts[2] == 0 && counts[3] == 0 && counts[4] == 0 && exact[2] && exact[3] &&
               exact[4];
    }
};

struct CycleScanOptions {
    int max_len = 4;                         // count i-cycles for 2 <= i <= max_len
    std::size_t witness_cap = 64;            // stored witnesses per length
    std::uint64_t work_cap = 400'000'000ULL; // enumeration step budget per stage
};

CycleReport short_cycles(const Hypergraph& h, const CycleScanOptions& opt = {});
CycleReport short_cycles(const Hypergraph& h, int max_len, std::size_t witness_cap);

}  // namespace hgc
