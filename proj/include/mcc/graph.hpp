#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcc/vertex_set.hpp"

namespace mcc {

// Simple undirected graph, adjacency kept as one bit row per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), rows_(size_t(n), VertexSet(n)) {}

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }

    bool adjacent(int u, int v) const { return u >= 0 && u < n_ && rows_[size_t(u)].test(v); }

    const VertexSet& neighbors(int v) const {
        check(v);
        return rows_[size_t(v)];
    }

    int degree(int v) const { return neighbors(v).count(); }

    void add_edge(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (rows_[size_t(u)].test(v)) throw std::invalid_argument("Graph: duplicate edge");
        rows_[size_t(u)].set(v);
        rows_[size_t(v)].set(u);
        ++m_;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(size_t(m_));
        for (int u = 0; u < n_; ++u)
            for (int v = rows_[size_t(u)].next(u); v >= 0; v = rows_[size_t(u)].next(v))
                out.emplace_back(u, v);
        return out;
    }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex out of range");
    }

    int n_ = 0;
    long long m_ = 0;
    std::vector<VertexSet> rows_;
};

struct ColoredEdge {
    int u, v, c;
};

// Edge-colored graph with colors 1..r; every edge has exactly one color.
// Each color layer keeps its own adjacency rows so monochromatic
// neighborhood queries stay word-parallel.
class ColoredGraph {
public:
    ColoredGraph() = default;
    ColoredGraph(int n, int r) : base_(n), r_(r), layers_(size_t(r), Graph(n)) {
        if (r < 1) throw std::invalid_argument("ColoredGraph: colors must be >= 1");
    }

    static ColoredGraph from_edges(int n, int r, const std::vector<ColoredEdge>& edges) {
        ColoredGraph g(n, r);
        for (const auto& e : edges) g.add_edge(e.u, e.v, e.c);
        return g;
    }

    int vertex_count() const { return base_.vertex_count(); }
    int colors() const { return r_; }
    long long edge_count() const { return base_.edge_count(); }

    const Graph& base() const { return base_; }

    const Graph& layer(int c) const {
        if (c < 1 || c > r_) throw std::invalid_argument("ColoredGraph: color out of range");
        return layers_[size_t(c - 1)];
    }

    // 0 when not an edge.
    int color_of(int u, int v) const {
        if (!base_.adjacent(u, v)) return 0;
        for (int c = 1; c <= r_; ++c)
            if (layers_[size_t(c - 1)].adjacent(u, v)) return c;
        return 0;
    }

    void add_edge(int u, int v, int c) {
        if (c < 1 || c > r_) throw std::invalid_argument("ColoredGraph: color out of range");
        base_.add_edge(u, v);
        layers_[size_t(c - 1)].add_edge(u, v);
    }

private:
    Graph base_;
    int r_ = 1;
    std::vector<Graph> layers_;
};

// N(v) restricted to `within`.
inline VertexSet neighborhood(const Graph& g, int v, const VertexSet& within) {
    return g.neighbors(v) & within;
}

// Common neighborhood of all members of S; S must be nonempty.
VertexSet common_neighborhood(const Graph& g, const VertexSet& s);
VertexSet common_neighborhood(const Graph& g, const VertexSet& s, const VertexSet& within);

// Union of neighborhoods over S.
VertexSet set_neighborhood(const Graph& g, const VertexSet& s);

// Number of edges with one end in A and the other in B; A and B must be disjoint.
long long edge_count_between(const Graph& g, const VertexSet& a, const VertexSet& b);

enum class CycleKind { vertex, edge, proper };

// Monochromatic cycle, degenerate forms included. color 0 means colorless
// (cycles living in an uncolored graph, validated against any edge).
struct Cycle {
    int color = 0;
    CycleKind kind = CycleKind::vertex;
    std::vector<int> vertices;

    static Cycle single(int v) { return {0, CycleKind::vertex, {v}}; }
    static Cycle of(int color, std::vector<int> vs) {
        CycleKind k = vs.size() <= 1 ? CycleKind::vertex
                                     : (vs.size() == 2 ? CycleKind::edge : CycleKind::proper);
        return {color, k, std::move(vs)};
    }

    VertexSet vertex_set(int n) const { return VertexSet::of(n, vertices); }
};

struct Cover {
    std::vector<Cycle> cycles;
    VertexSet target;
    VertexSet uncovered;
    bool disjoint = false;
};

struct CoverReport {
    bool valid = true;
    int covered_count = 0;
    int uncovered_count = 0;
    std::vector<std::string> violations;
};

bool is_valid_mono_cycle(const ColoredGraph& g, const Cycle& c);
bool is_valid_cycle(const Graph& g, const Cycle& c);

// Validates every cycle, recomputes target \ union, cross-checks the stored
// uncovered set, and (optionally) pairwise vertex-disjointness. Cycles may
// pass through vertices outside the target; those still count as used for
// disjointness but not as covered.
CoverReport verify_cover(const ColoredGraph& g, const Cover& cover, bool require_disjoint);
CoverReport verify_cover(const Graph& g, const Cover& cover, bool require_disjoint);

}  // namespace mcc
