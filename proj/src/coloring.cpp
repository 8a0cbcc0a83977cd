#include "hgc/coloring.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hgc {

ListAssignment ListAssignment::uniform(int n, int q) {
    ListAssignment la;
    std::vector<int> base(q);
    for (int c = 0; c < q; ++c) base[c] = c;
    la.lists.assign(n, base);
    return la;
}

bool Coloring::is_total() const {
    for (int c : assignment)
        if (c == kNone) return false;
    return true;
}

int Coloring::colors_used() const {
    std::set<int> used;
    for (int c : assignment)
        if (c != kNone) used.insert(c);
    return static_cast<int>(used.size());
}

VerifyReport verify(const Hypergraph& h, const ListAssignment& la, const Coloring& col) {
    VerifyReport rep;
    bool shape_ok = static_cast<int>(col.assignment.size()) == h.n &&
                    static_cast<int>(la.lists.size()) == h.n;
    if (!shape_ok) return rep;  // everything stays false

    rep.is_total = true;
    rep.list_respecting = true;
    for (int v = 0; v < h.n; ++v) {
        int c = col.assignment[v];
        if (c == Coloring::kNone) {
            rep.is_total = false;
            continue;
        }
        if (!std::binary_search(la.lists[v].begin(), la.lists[v].end(), c)) {
            rep.list_respecting = false;
            rep.off_list_vertices.push_back(v);
        }
    }
    for (int e = 0; e < h.m(); ++e) {
        const auto& ed = h.edges[e];
        int c0 = col.assignment[ed[0]];
        if (c0 == Coloring::kNone) continue;
        bool mono = true;
        for (size_t i = 1; i < ed.size(); ++i)
            if (col.assignment[ed[i]] != c0) { mono = false; break; }
        if (mono) rep.monochromatic_edges.push_back(e);
    }
    rep.proper = rep.is_total && rep.list_respecting && rep.monochromatic_edges.empty();
    return rep;
}

void write_coloring(std::ostream& out, const Coloring& col) {
    for (size_t v = 0; v < col.assignment.size(); ++v) {
        out << v << ' ';
        if (col.assignment[v] == Coloring::kNone) out << '-';
        else out << col.assignment[v];
        out << '\n';
    }
}

Coloring read_coloring(std::istream& in, int n) {
    Coloring col(n);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int v;
        std::string tok;
        if (!(ls >> v >> tok)) throw std::invalid_argument("read_coloring: malformed line");
        if (v < 0 || v >= n) throw std::invalid_argument("read_coloring: vertex out of range");
        col.assignment[v] = (tok == "-") ? Coloring::kNone : std::stoi(tok);
    }
    return col;
}

}  // namespace hgc
