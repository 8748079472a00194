#include "mcc/dfs_cover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mcc {
namespace {

void check_params(HoleParams hp) {
    if (hp.k < 2) throw std::invalid_argument("hole params: k must be >= 2");
    if (hp.m < 1) throw std::invalid_argument("hole params: m must be >= 1");
}

std::string set_str(const VertexSet& s) {
    std::string out = "{";
    for (int v = s.first(); v >= 0; v = s.next(v)) {
        if (out.size() > 1) out += ',';
        out += std::to_string(v);
    }
    return out + "}";
}

std::string path_str(const std::vector<int>& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    return out + ")";
}

void record(std::vector<std::string>* trace, const char* rule, const DfsState& st) {
    if (!trace) return;
    trace->push_back(std::string(rule) + ": D=" + set_str(st.discarded) + " P=" +
                     path_str(st.path) + " U=" + set_str(st.unexplored));
}

// DFS restricted to `within`; U starts as `within` and only shrinks, so the
// partition invariant D | V(P) | U = within holds throughout.
DfsState dfs_within(const Graph& g, const VertexSet& within, int m,
                    std::vector<std::string>* trace) {
    if (m < 0 || m > within.count())
        throw std::invalid_argument("dfs_decompose: m out of range");
    DfsState st{VertexSet(g.vertex_count()), {}, within};
    record(trace, "init", st);
    int discarded = 0;
    while (discarded < m) {
        if (st.path.empty()) {
            int w = st.unexplored.first();
            if (w < 0) break;  // cannot happen while discarded < m <= |within|
            st.unexplored.reset(w);
            st.path.push_back(w);
            record(trace, "restart", st);
            continue;
        }
        int v = st.path.back();
        VertexSet cand = g.neighbors(v) & st.unexplored;
        int w = cand.first();
        if (w >= 0) {
            st.unexplored.reset(w);
            st.path.push_back(w);
            record(trace, "explore", st);
        } else {
            st.discarded.set(v);
            st.path.pop_back();
            ++discarded;
            record(trace, "backtrack", st);
        }
    }
    return st;
}

// Covers path positions [lo, hi) with at most k-1 disjoint cycles, leaving
// at most k*m positions uncovered when the complement of the induced graph
// is K_k^m-free. Degenerate two-vertex segments are emitted as edge cycles.
void cover_segment(const Graph& g, const std::vector<int>& path, int lo, int hi, int k, int m,
                   std::vector<Cycle>* out) {
    int len = hi - lo;
    if (k < 2 || len <= k * m) return;
    if (k == 2) {
        // A chord between the first m and last m vertices must exist when
        // the complement has no two disjoint m-sets with no edge between.
        for (int a = lo; a < lo + m; ++a)
            for (int b = hi - 1; b >= hi - m; --b)
                if (g.adjacent(path[a], path[b])) {
                    out->push_back(Cycle::of(
                        0, std::vector<int>(path.begin() + a, path.begin() + b + 1)));
                    return;
                }
        return;
    }
    // Latest vertex attaching back into the first m closes the first cycle;
    // positions before its lowest anchor stay uncovered (< m of them).
    int attach = -1, from = -1;
    for (int i = hi - 1; i >= lo + m && attach < 0; --i)
        for (int a = lo; a < lo + m; ++a)
            if (g.adjacent(path[i], path[a])) {
                attach = i;
                from = a;
                break;
            }
    if (attach < 0) {
        // First m vertices see nothing ahead of them; they stay uncovered
        // and the tail inherits the k-1 premise.
        cover_segment(g, path, lo + m, hi, k - 1, m, out);
        return;
    }
    // A two-vertex segment would only close a degenerate cycle; its
    // vertices stay uncovered instead.
    if (attach - from + 1 >= 3)
        out->push_back(
            Cycle::of(0, std::vector<int>(path.begin() + from, path.begin() + attach + 1)));
    cover_segment(g, path, attach + 1, hi, k - 1, m, out);
}

struct PeelEdge {
    int i, j;  // set indices, i < j
    int a, b;  // a in sets[i], b in sets[j]
};

// Rotation of a cycle starting at its lowest vertex, in traversal order.
std::vector<int> rotate_to_min(const std::vector<int>& cyc) {
    size_t at = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
    std::vector<int> out(cyc.begin() + at, cyc.end());
    out.insert(out.end(), cyc.begin(), cyc.begin() + at);
    return out;
}

}  // namespace

DfsState dfs_decompose(const Graph& g, int m, std::vector<std::string>* trace) {
    return dfs_within(g, VertexSet::full(g.vertex_count()), m, trace);
}

std::vector<Cycle> cover_from_hamiltonian_path(const Graph& g, const std::vector<int>& path,
                                               HoleParams hp) {
    check_params(hp);
    int n = g.vertex_count();
    if (static_cast<int>(path.size()) != n)
        throw std::invalid_argument("cover_from_hamiltonian_path: path must visit every vertex");
    std::vector<char> seen(n, 0);
    for (int v : path) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("cover_from_hamiltonian_path: not a permutation of V");
        seen[v] = 1;
    }
    for (int i = 0; i + 1 < n; ++i)
        if (!g.adjacent(path[i], path[i + 1]))
            throw std::invalid_argument("cover_from_hamiltonian_path: missing path edge");
    std::vector<Cycle> out;
    cover_segment(g, path, 0, n, hp.k, hp.m, &out);
    return out;
}

std::optional<TwoDisjointEdges> find_two_disjoint_edges(const Graph& g,
                                                        const std::vector<VertexSet>& sets,
                                                        HoleParams hp) {
    check_params(hp);
    int n = g.vertex_count();
    int k = hp.k, m = hp.m;
    if (static_cast<int>(sets.size()) != k)
        throw std::invalid_argument("find_two_disjoint_edges: expected exactly k sets");
    VertexSet used(n);
    for (const auto& s : sets) {
        if (s.universe() != n)
            throw std::invalid_argument("find_two_disjoint_edges: universe mismatch");
        if (s.count() < m + k - 1)
            throw std::invalid_argument("find_two_disjoint_edges: set smaller than m+k-1");
        if (used.intersects(s))
            throw std::invalid_argument("find_two_disjoint_edges: sets overlap");
        used |= s;
    }

    std::vector<VertexSet> work(sets);
    std::vector<PeelEdge> removed;
    while (true) {
        // Lexicographically first pair of sets spanning an edge, lowest
        // endpoints within it.
        PeelEdge e{-1, -1, -1, -1};
        for (int i = 0; i < k && e.i < 0; ++i)
            for (int j = i + 1; j < k && e.i < 0; ++j)
                for (int a = work[i].first(); a >= 0; a = work[i].next(a)) {
                    VertexSet hit = g.neighbors(a) & work[j];
                    if (!hit.empty()) {
                        e = {i, j, a, hit.first()};
                        break;
                    }
                }
        if (e.i < 0) return std::nullopt;
        removed.push_back(e);
        work[e.i].reset(e.a);
        work[e.j].reset(e.b);
        for (int idx : {e.i, e.j}) {
            if (work[idx].count() != m - 1) continue;
            // At least k edges left this set; they meet only k-1 partners,
            // so some partner received two, and those two are disjoint
            // because each removal used fresh endpoints.
            std::vector<int> first_seen(k, -1);
            for (int t = 0; t < static_cast<int>(removed.size()); ++t) {
                const PeelEdge& r = removed[t];
                if (r.i != idx && r.j != idx) continue;
                int partner = r.i == idx ? r.j : r.i;
                if (first_seen[partner] < 0) {
                    first_seen[partner] = t;
                    continue;
                }
                const PeelEdge& f = removed[first_seen[partner]];
                TwoDisjointEdges res;
                res.i = idx;
                res.j = partner;
                res.e1 = {f.i == idx ? f.a : f.b, f.i == idx ? f.b : f.a};
                res.e2 = {r.i == idx ? r.a : r.b, r.i == idx ? r.b : r.a};
                return res;
            }
            return std::nullopt;  // not reachable with valid sizes
        }
    }
}

Cover gendfs_cover(const Graph& g, HoleParams hp) {
    check_params(hp);
    int n = g.vertex_count();
    std::vector<Cycle> cycles;
    VertexSet remaining = VertexSet::full(n);
    for (int level = hp.k; level >= 2; --level) {
        if (remaining.count() < hp.m) break;
        DfsState st = dfs_within(g, remaining, hp.m, nullptr);
        cover_segment(g, st.path, 0, static_cast<int>(st.path.size()), level, hp.m, &cycles);
        remaining = st.unexplored;  // discarded vertices and path leftovers stay uncovered
        if (remaining.empty()) break;
    }

    // Merge down to at most k-1 cycles. Each round either joins two cycles
    // through two disjoint edges between their leading segments or, when
    // that fails, drops the smallest cycle; either way the count falls by 1.
    int seg = hp.m + hp.k - 1;
    while (static_cast<int>(cycles.size()) > hp.k - 1) {
        auto smallest = std::min_element(
            cycles.begin(), cycles.end(), [](const Cycle& x, const Cycle& y) {
                if (x.vertices.size() != y.vertices.size())
                    return x.vertices.size() < y.vertices.size();
                return *std::min_element(x.vertices.begin(), x.vertices.end()) <
                       *std::min_element(y.vertices.begin(), y.vertices.end());
            });
        if (static_cast<int>(smallest->vertices.size()) < seg) {
            cycles.erase(smallest);
            continue;
        }
        // k cycles with the lowest ids, their first m+k-1 vertices as segments.
        std::vector<int> order(cycles.size());
        for (size_t t = 0; t < order.size(); ++t) order[t] = static_cast<int>(t);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return *std::min_element(cycles[x].vertices.begin(), cycles[x].vertices.end()) <
                   *std::min_element(cycles[y].vertices.begin(), cycles[y].vertices.end());
        });
        order.resize(hp.k);
        std::vector<std::vector<int>> rotated(hp.k);
        std::vector<VertexSet> segs(hp.k);
        for (int t = 0; t < hp.k; ++t) {
            rotated[t] = rotate_to_min(cycles[order[t]].vertices);
            segs[t] = VertexSet::of(n, std::vector<int>(rotated[t].begin(),
                                                        rotated[t].begin() + seg));
        }
        auto found = find_two_disjoint_edges(g, segs, hp);
        if (!found) {
            cycles.erase(cycles.begin() + *std::min_element(order.begin(), order.end(),
                                                            [&](int x, int y) {
                return cycles[x].vertices.size() < cycles[y].vertices.size() ||
                       (cycles[x].vertices.size() == cycles[y].vertices.size() && x < y);
            }));
            continue;
        }
        const std::vector<int>& ci = rotated[found->i];
        const std::vector<int>& cj = rotated[found->j];
        auto pos = [](const std::vector<int>& c, int v) {
            return static_cast<int>(std::find(c.begin(), c.end(), v) - c.begin());
        };
        int a1 = found->e1[0], b1 = found->e1[1];
        int a2 = found->e2[0], b2 = found->e2[1];
        if (pos(ci, a1) > pos(ci, a2)) {
            std::swap(a1, a2);
            std::swap(b1, b2);
        }
        // Keep the long arc of ci from a2 forward (wrapping) to a1, cross to
        // b1, walk cj to b2 avoiding the in-segment arc, close with b2-a2.
        std::vector<int> merged;
        int li = static_cast<int>(ci.size()), lj = static_cast<int>(cj.size());
        for (int t = pos(ci, a2); ci[t % li] != a1; ++t) merged.push_back(ci[t % li]);
        merged.push_back(a1);
        int pb1 = pos(cj, b1), pb2 = pos(cj, b2);
        int step = pb1 < pb2 ? -1 : 1;
        for (int t = pb1; cj[(t + lj) % lj] != b2; t += step)
            merged.push_back(cj[(t + lj) % lj]);
        merged.push_back(b2);
        int ra = order[found->i], rb = order[found->j];
        if (ra > rb) std::swap(ra, rb);
        cycles.erase(cycles.begin() + rb);
        cycles.erase(cycles.begin() + ra);
        cycles.push_back(Cycle::of(0, std::move(merged)));
    }

    Cover cov;
    cov.target = VertexSet::full(n);
    cov.uncovered = VertexSet::full(n);
    for (const auto& c : cycles) cov.uncovered -= c.vertex_set(n);
    cov.cycles = std::move(cycles);
    cov.disjoint = true;
    return cov;
}

}  // namespace mcc
