#include "mcc/graph.hpp"

#include <functional>

namespace mcc {

VertexSet common_neighborhood(const Graph& g, const VertexSet& s) {
    int v = s.first();
    if (v < 0) throw std::invalid_argument("common_neighborhood: empty set");
    VertexSet acc = g.neighbors(v);
    for (v = s.next(v); v >= 0; v = s.next(v)) acc &= g.neighbors(v);
    return acc;
}

VertexSet common_neighborhood(const Graph& g, const VertexSet& s, const VertexSet& within) {
    return common_neighborhood(g, s) & within;
}

VertexSet set_neighborhood(const Graph& g, const VertexSet& s) {
    VertexSet acc(g.vertex_count());
    for (int v = s.first(); v >= 0; v = s.next(v)) acc |= g.neighbors(v);
    return acc;
}

long long edge_count_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.intersects(b)) throw std::invalid_argument("edge_count_between: sets overlap");
    long long total = 0;
    for (int v = a.first(); v >= 0; v = a.next(v)) total += intersection_size(g.neighbors(v), b);
    return total;
}

namespace {

// Empty string means the cycle is well-formed; otherwise the reason.
// edge_ok(u, v) answers adjacency in the required layer.
std::string cycle_reason(int n, const Cycle& c, int max_color,
                         const std::function<bool(int, int)>& edge_ok) {
    for (int v : c.vertices)
        if (v < 0 || v >= n) return "vertex out of range";
    for (size_t i = 0; i < c.vertices.size(); ++i)
        for (size_t j = i + 1; j < c.vertices.size(); ++j)
            if (c.vertices[i] == c.vertices[j]) return "repeated vertex";
    if (c.color < 0 || c.color > max_color) return "color out of range";
    switch (c.kind) {
        case CycleKind::vertex:
            if (c.vertices.size() != 1) return "vertex cycle must have exactly 1 vertex";
            return "";
        case CycleKind::edge: {
            if (c.vertices.size() != 2) return "edge cycle must have exactly 2 vertices";
            if (max_color > 0 && c.color == 0) return "colored graph cycle needs a stated color";
            if (!edge_ok(c.vertices[0], c.vertices[1])) return "missing edge of the stated color";
            return "";
        }
        case CycleKind::proper: {
            if (c.vertices.size() < 3) return "proper cycle needs at least 3 vertices";
            if (max_color > 0 && c.color == 0) return "colored graph cycle needs a stated color";
            size_t len = c.vertices.size();
            for (size_t i = 0; i < len; ++i)
                if (!edge_ok(c.vertices[i], c.vertices[(i + 1) % len]))
                    return "missing edge of the stated color";
            return "";
        }
    }
    return "unknown cycle kind";
}

std::string cycle_reason(const ColoredGraph& g, const Cycle& c) {
    auto edge_ok = [&](int u, int v) { return g.layer(c.color).adjacent(u, v); };
    return cycle_reason(g.vertex_count(), c, g.colors(), edge_ok);
}

std::string cycle_reason(const Graph& g, const Cycle& c) {
    auto edge_ok = [&](int u, int v) { return g.adjacent(u, v); };
    // max_color 0: colorless validation, any stated color is ignored.
    Cycle plain = c;
    plain.color = 0;
    return cycle_reason(g.vertex_count(), plain, 0, edge_ok);
}

constexpr size_t kMaxViolations = 20;

template <typename GraphT>
CoverReport verify_impl(const GraphT& g, const Cover& cover, bool require_disjoint) {
    CoverReport rep;
    int n = g.vertex_count();
    auto note = [&](std::string msg) {
        if (rep.violations.size() < kMaxViolations) rep.violations.push_back(std::move(msg));
        rep.valid = false;
    };

    if (cover.target.universe() != n) note("target universe mismatch");
    if (cover.uncovered.universe() != n) note("uncovered universe mismatch");

    VertexSet used(n);
    VertexSet covered(n);
    for (size_t i = 0; i < cover.cycles.size(); ++i) {
        const Cycle& c = cover.cycles[i];
        std::string why = cycle_reason(g, c);
        if (!why.empty()) {
            note("cycle " + std::to_string(i) + ": " + why);
            continue;
        }
        bool clash = false;
        for (int v : c.vertices) {
            if (used.test(v)) clash = true;
            used.set(v);
            covered.set(v);
        }
        if (clash && (require_disjoint || cover.disjoint))
            note("cycle " + std::to_string(i) + ": shares a vertex with an earlier cycle");
    }

    if (cover.target.universe() == n) {
        covered &= cover.target;
        rep.covered_count = covered.count();
        VertexSet missing = cover.target - covered;
        rep.uncovered_count = missing.count();
        if (cover.uncovered.universe() == n && !(missing == cover.uncovered))
            note("stored uncovered set does not match target minus cycle union");
    }
    return rep;
}

}  // namespace

bool is_valid_mono_cycle(const ColoredGraph& g, const Cycle& c) {
    return cycle_reason(g, c).empty();
}

bool is_valid_cycle(const Graph& g, const Cycle& c) {
    return cycle_reason(g, c).empty();
}

CoverReport verify_cover(const ColoredGraph& g, const Cover& cover, bool require_disjoint) {
    return verify_impl(g, cover, require_disjoint);
}

CoverReport verify_cover(const Graph& g, const Cover& cover, bool require_disjoint) {
    return verify_impl(g, cover, require_disjoint);
}

}  // namespace mcc
