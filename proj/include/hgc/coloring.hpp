#pragma once

#include <iosfwd>
#include <vector>

#include "hgc/hypergraph.hpp"

namespace hgc {

// Per-vertex sorted sets of allowed color ids.
struct ListAssignment {
    std::vector<std::vector<int>> lists;

    static ListAssignment uniform(int n, int q);  // every list = [0, q)
};

// Partial coloring; kNone marks an uncolored vertex.
struct Coloring {
    static constexpr int kNone = -1;
    std::vector<int> assignment;

    explicit Coloring(int n = 0) : assignment(n, kNone) {}
    bool is_total() const;
    int colors_used() const;
};

struct VerifyReport {
    bool is_total = false;
    bool list_respecting = false;
    std::vector<int> monochromatic_edges;  // edge ids, all vertices colored and equal
    std::vector<int> off_list_vertices;    // assigned a color outside their list
    bool proper = false;                   // total && list_respecting && no mono edge
};

// Pure verification; never throws, malformed input yields a failing report.
VerifyReport verify(const Hypergraph& h, const ListAssignment& la, const Coloring& col);

// One line per vertex: "v c", or "v -" when uncolored.
void write_coloring(std::ostream& out, const Coloring& col);
Coloring read_coloring(std::istream& in, int n);

}  // namespace hgc
