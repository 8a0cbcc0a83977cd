#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hgc {

// Immutable k-uniform incidence structure. Edges are strictly sorted
// k-tuples of vertex ids in [0, n); the edge list itself is sorted
// lexicographically and duplicate-free. incidence[v] lists the ids of
// the edges containing v, ascending.
struct Hypergraph {
    int k = 2;
    int n = 0;
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<int>> incidence;
    int duplicates_removed = 0;

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(incidence[v].size()); }
    int max_degree() const;
    // Average degree d = k*m/n (degree counts incident hyperedges).
    double average_degree() const;
};

// Canonicalizes raw edges (sorts each tuple, dedups the list) and builds
// the incidence index. Throws std::invalid_argument on wrong arity,
// repeated vertices within a tuple, or ids outside [0, n).
Hypergraph build(int k, int n, const std::vector<std::vector<int>>& raw_edges);

// Subhypergraph induced by the vertices with keep[v] != 0, relabelled to
// [0, size). to_parent maps new ids back to the original ones.
struct InducedSubgraph {
    Hypergraph sub;
    std::vector<int> to_parent;
};
InducedSubgraph induced_subhypergraph(const Hypergraph& h, const std::vector<char>& keep);

// Text format: first line "k n m", then m lines of k space-separated
// vertex ids. '#' starts a comment line. Edges need not be pre-sorted.
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const std::string& path, const Hypergraph& h);

}  // namespace hgc
