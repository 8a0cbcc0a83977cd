#pragma once

#include <vector>

#include "hgc/hypergraph.hpp"

namespace hgc {

struct DegeneracyResult {
    int kappa = 0;
    std::vector<int> order;  // elimination order; order[0] deleted first
};

// Repeatedly deletes a vertex of minimum remaining degree (smallest id on
// ties); deleting a vertex removes every hyperedge containing it. kappa is
// the largest degree seen at deletion time, which equals the degeneracy:
// max over induced subhypergraphs of their minimum degree.
DegeneracyResult degeneracy(const Hypergraph& h);

}  // namespace hgc
