#include "hgc/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hgc {

int Hypergraph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n; ++v) best = std::max(best, degree(v));
    return best;
}

double Hypergraph::average_degree() const {
    if (n == 0) return 0.0;
    return static_cast<double>(k) * static_cast<double>(m()) / static_cast<double>(n);
}

Hypergraph build(int k, int n, const std::vector<std::vector<int>>& raw_edges) {
    if (k < 2) throw std::invalid_argument("build: uniformity k must be >= 2");
    if (n < 0) throw std::invalid_argument("build: vertex count must be non-negative");

    Hypergraph h;
    h.k = k;
    h.n = n;
    h.edges.reserve(raw_edges.size());
    for (const auto& raw : raw_edges) {
        if (static_cast<int>(raw.size()) != k)
            throw std::invalid_argument("build: edge has wrong arity (expected " +
                                        std::to_string(k) + " vertices, got " +
                                        std::to_string(raw.size()) + ")");
        std::vector<int> e = raw;
        std::sort(e.begin(), e.end());
        for (int i = 0; i < k; ++i) {
            if (e[i] < 0 || e[i] >= n)
                throw std::invalid_argument("build: vertex id " + std::to_string(e[i]) +
                                            " out of range [0, " + std::to_string(n) + ")");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("build: edge repeats vertex " + std::to_string(e[i]));
        }
        h.edges.push_back(std::move(e));
    }
    std::sort(h.edges.begin(), h.edges.end());
    auto last = std::unique(h.edges.begin(), h.edges.end());
    h.duplicates_removed = static_cast<int>(h.edges.end() - last);
    h.edges.erase(last, h.edges.end());

    h.incidence.assign(n, {});
    for (int e = 0; e < h.m(); ++e)
        for (int v : h.edges[e]) h.incidence[v].push_back(e);
    return h;
}

InducedSubgraph induced_subhypergraph(const Hypergraph& h, const std::vector<char>& keep) {
    InducedSubgraph out;
    std::vector<int> to_sub(h.n, -1);
    for (int v = 0; v < h.n; ++v) {
        if (keep[v]) {
            to_sub[v] = static_cast<int>(out.to_parent.size());
            out.to_parent.push_back(v);
        }
    }
    std::vector<std::vector<int>> sub_edges;
    for (const auto& e : h.edges) {
        bool all = true;
        for (int v : e)
            if (!keep[v]) { all = false; break; }
        if (!all) continue;
        std::vector<int> mapped(e.size());
        for (size_t i = 0; i < e.size(); ++i) mapped[i] = to_sub[e[i]];
        sub_edges.push_back(std::move(mapped));
    }
    out.sub = build(h.k, static_cast<int>(out.to_parent.size()), sub_edges);
    return out;
}

Hypergraph read_hypergraph(std::istream& in) {
    std::string line;
    auto next_data_line = [&](std::string& out_line) -> bool {
        while (std::getline(in, out_line)) {
            size_t pos = out_line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (out_line[pos] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line(line)) throw std::invalid_argument("read_hypergraph: missing header line");
    std::istringstream header(line);
    int k = 0, n = 0;
    long long m = 0;
    if (!(header >> k >> n >> m) || m < 0)
        throw std::invalid_argument("read_hypergraph: malformed header (want 'k n m')");

    std::vector<std::vector<int>> raw;
    raw.reserve(static_cast<size_t>(m));
    for (long long e = 0; e < m; ++e) {
        if (!next_data_line(line))
            throw std::invalid_argument("read_hypergraph: expected " + std::to_string(m) +
                                        " edges, file ended after " + std::to_string(e));
        std::istringstream es(line);
        std::vector<int> edge(k);
        for (int i = 0; i < k; ++i)
            if (!(es >> edge[i]))
                throw std::invalid_argument("read_hypergraph: edge line " + std::to_string(e) +
                                            " has fewer than k ids");
        raw.push_back(std::move(edge));
    }
    return build(k, n, raw);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.k << ' ' << h.n << ' ' << h.m() << '\n';
    for (const auto& e : h.edges) {
        for (size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open hypergraph file: " + path);
    return read_hypergraph(in);
}

void write_hypergraph_file(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write hypergraph file: " + path);
    write_hypergraph(out, h);
}

}  // namespace hgc
