#include "mcc/approx_cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcc/dfs_cover.hpp"

namespace mcc {

ApproxParams ApproxParams::defaults(int n, double p, int r) {
    if (n < 0) throw std::invalid_argument("defaults: n must be nonnegative");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("defaults: p must be in (0,1]");
    if (r < 1) throw std::invalid_argument("defaults: r must be positive");
    ApproxParams a;
    a.r = r;
    a.p = p;
    a.hole_c = 384 * r;
    a.aux_threshold = static_cast<double>(n) * p * p / std::pow(50.0 * r, 4.0);
    a.budget_k = 3 * r;
    a.K_leftover = std::pow(20.0 * r, 4.0);
    a.hole_m = 0;
    return a;
}

std::vector<VertexSet> majority_color_partition(const ColoredGraph& cg, const VertexSet& w) {
    const int n = cg.vertex_count();
    if (w.universe() != n) throw std::invalid_argument("majority_color_partition: universe mismatch");
    const int r = cg.colors();
    VertexSet u = w.complement();
    std::vector<VertexSet> parts(static_cast<size_t>(r), VertexSet(n));
    for (int v = w.first(); v >= 0; v = w.next(v)) {
        int best_color = 1;
        int best_count = -1;
        for (int c = 1; c <= r; ++c) {
            int cnt = intersection_size(cg.layer(c).neighbors(v), u);
            if (cnt > best_count) {
                best_count = cnt;
                best_color = c;
            }
        }
        parts[static_cast<size_t>(best_color - 1)].set(v);
    }
    return parts;
}

AuxGraph build_auxiliary_graph_Hi(const ColoredGraph& cg, const VertexSet& w_i,
                                  const VertexSet& u, int color, double threshold) {
    const int n = cg.vertex_count();
    if (w_i.universe() != n || u.universe() != n)
        throw std::invalid_argument("build_auxiliary_graph_Hi: universe mismatch");
    if (w_i.intersects(u))
        throw std::invalid_argument("build_auxiliary_graph_Hi: W_i and U overlap");
    if (color < 1 || color > cg.colors())
        throw std::invalid_argument("build_auxiliary_graph_Hi: color out of range");

    AuxGraph aux;
    aux.verts = w_i.to_vector();
    const int k = static_cast<int>(aux.verts.size());
    aux.graph = Graph(k);

    const Graph& layer = cg.layer(color);
    std::vector<VertexSet> reach;
    reach.reserve(static_cast<size_t>(k));
    for (int v : aux.verts) reach.push_back(layer.neighbors(v) & u);

    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            int common = intersection_size(reach[static_cast<size_t>(a)], reach[static_cast<size_t>(b)]);
            if (static_cast<double>(common) >= threshold) aux.graph.add_edge(a, b);
        }
    return aux;
}

namespace {

// One auxiliary edge awaiting an interior vertex. Cycle order is kept so
// the lifted walk alternates original and matched vertices.
struct LiftEntry {
    int color;
    int v, w;             // original ids, consecutive on the auxiliary cycle
    size_t cycle;         // index into the flattened cycle list
    std::vector<int> candidates;
};

bool kuhn_augment(size_t l, const std::vector<LiftEntry>& entries,
                  std::vector<char>& visited, std::vector<int>& right_match,
                  std::vector<int>& left_match) {
    for (int cand : entries[l].candidates) {
        if (visited[static_cast<size_t>(cand)]) continue;
        visited[static_cast<size_t>(cand)] = 1;
        int other = right_match[static_cast<size_t>(cand)];
        if (other < 0 ||
            kuhn_augment(static_cast<size_t>(other), entries, visited, right_match, left_match)) {
            right_match[static_cast<size_t>(cand)] = static_cast<int>(l);
            left_match[l] = cand;
            return true;
        }
    }
    return false;
}

}  // namespace

LiftOutcome lift_auxiliary_cycles(
    const ColoredGraph& cg,
    const std::vector<std::pair<int, std::vector<Cycle>>>& per_color_cycles,
    const VertexSet& u) {
    const int n = cg.vertex_count();
    if (u.universe() != n) throw std::invalid_argument("lift_auxiliary_cycles: universe mismatch");

    struct FlatCycle {
        int color;
        const Cycle* cycle;
        size_t first_entry;
    };
    std::vector<FlatCycle> flat;
    std::vector<LiftEntry> entries;

    for (const auto& [color, cycles] : per_color_cycles) {
        if (color < 1 || color > cg.colors())
            throw std::invalid_argument("lift_auxiliary_cycles: color out of range");
        for (const Cycle& c : cycles) {
            const auto& vs = c.vertices;
            for (int v : vs) {
                if (v < 0 || v >= n || u.test(v))
                    throw std::invalid_argument("lift_auxiliary_cycles: cycle vertex not outside U");
            }
            flat.push_back({color, &c, entries.size()});
            const size_t t = vs.size();
            if (t < 2) continue;
            for (size_t j = 0; j < t; ++j) {
                int a = vs[j];
                int b = vs[(j + 1) % t];
                LiftEntry e;
                e.color = color;
                e.v = a;
                e.w = b;
                e.cycle = flat.size() - 1;
                VertexSet cand = cg.layer(color).neighbors(a);
                cand &= cg.layer(color).neighbors(b);
                cand &= u;
                e.candidates = cand.to_vector();
                entries.push_back(std::move(e));
            }
        }
    }

    if (entries.size() > static_cast<size_t>(u.count()))
        throw std::invalid_argument("lift_auxiliary_cycles: more auxiliary edges than interior vertices");

    LiftOutcome out;
    std::vector<int> right_match(static_cast<size_t>(n), -1);
    std::vector<int> left_match(entries.size(), -1);
    for (size_t l = 0; l < entries.size(); ++l) {
        std::vector<char> visited(static_cast<size_t>(n), 0);
        if (kuhn_augment(l, entries, visited, right_match, left_match)) {
            ++out.matching_size;
            continue;
        }
        // Alternating tree from the failed entry: those edges jointly see
        // fewer interior vertices than their number.
        out.saturated = false;
        std::vector<char> in_witness(entries.size(), 0);
        in_witness[l] = 1;
        for (size_t j = 0; j < entries.size(); ++j)
            if (left_match[j] >= 0 && visited[static_cast<size_t>(left_match[j])]) in_witness[j] = 1;
        for (size_t j = 0; j < entries.size(); ++j)
            if (in_witness[j])
                out.hall_witness.push_back({entries[j].color, {entries[j].v, entries[j].w}});
        return out;
    }

    out.saturated = true;
    for (const FlatCycle& fc : flat) {
        const auto& vs = fc.cycle->vertices;
        if (vs.size() < 2) {
            if (vs.size() == 1) out.cycles.push_back(Cycle::single(vs[0]));
            continue;
        }
        std::vector<int> lifted;
        lifted.reserve(vs.size() * 2);
        for (size_t j = 0; j < vs.size(); ++j) {
            lifted.push_back(vs[j]);
            lifted.push_back(left_match[fc.first_entry + j]);
        }
        out.cycles.push_back(Cycle::of(fc.color, lifted));
    }
    return out;
}

Cover approx_cover_small_set(const ColoredGraph& cg, const VertexSet& w,
                             const ApproxParams& params, ApproxDiagnostics* diag) {
    const int n = cg.vertex_count();
    if (w.universe() != n) throw std::invalid_argument("approx_cover_small_set: universe mismatch");
    if (params.r != cg.colors())
        throw std::invalid_argument("approx_cover_small_set: params.r does not match the coloring");
    if (!(params.p > 0.0) || params.p > 1.0)
        throw std::invalid_argument("approx_cover_small_set: p must be in (0,1]");
    if (params.hole_c < 1 || params.budget_k < 2 || !(params.aux_threshold > 0.0) ||
        !(params.K_leftover > 0.0) || params.hole_m < 0)
        throw std::invalid_argument("approx_cover_small_set: parameters must be positive");

    const int r = params.r;
    const int k = params.budget_k;
    VertexSet u = w.complement();

    ApproxDiagnostics local;
    ApproxDiagnostics& d = diag ? *diag : local;
    d = ApproxDiagnostics{};

    std::vector<VertexSet> parts = majority_color_partition(cg, w);
    std::vector<std::pair<int, std::vector<Cycle>>> per_color;

    for (int c = 1; c <= r; ++c) {
        const VertexSet& wi = parts[static_cast<size_t>(c - 1)];
        d.part_sizes.push_back(wi.count());
        AuxGraph aux = build_auxiliary_graph_Hi(cg, wi, u, c, params.aux_threshold);
        d.aux_edge_counts.push_back(static_cast<long long>(aux.graph.edges().size()));

        // The nominal hole size hole_c/p targets dense instances; on small
        // auxiliary graphs it would swallow the whole part, so it is capped
        // to keep k*m well under |W_i|.
        int m_raw = static_cast<int>(std::ceil(static_cast<double>(params.hole_c) / params.p));
        if (m_raw < 1) m_raw = 1;
        int m_eff = params.hole_m > 0 ? params.hole_m : m_raw;
        int cap = std::max(1, aux.graph.vertex_count() / (4 * k * k));
        bool capped = false;
        if (params.hole_m == 0 && m_eff > cap) {
            m_eff = cap;
            capped = true;
        }
        d.hole_m_used.push_back(m_eff);
        d.hole_m_capped.push_back(capped ? 1 : 0);

        Cover hole_cover = gendfs_cover(aux.graph, HoleParams{k, m_eff});
        d.cycles_per_color.push_back(static_cast<int>(hole_cover.cycles.size()));

        std::vector<Cycle> mapped;
        for (const Cycle& cyc : hole_cover.cycles) {
            std::vector<int> orig;
            orig.reserve(cyc.vertices.size());
            for (int idx : cyc.vertices) orig.push_back(aux.verts[static_cast<size_t>(idx)]);
            mapped.push_back(Cycle::of(0, orig));
        }
        per_color.emplace_back(c, std::move(mapped));
    }

    // Hard budget: at most r*(budget_k - 1) cycles survive to lifting.
    const size_t budget = static_cast<size_t>(r) * static_cast<size_t>(k - 1);
    auto total_cycles = [&per_color] {
        size_t t = 0;
        for (const auto& pc : per_color) t += pc.second.size();
        return t;
    };
    while (total_cycles() > budget) {
        size_t best_color = 0, best_idx = 0, best_size = SIZE_MAX;
        for (size_t ci = 0; ci < per_color.size(); ++ci)
            for (size_t j = 0; j < per_color[ci].second.size(); ++j)
                if (per_color[ci].second[j].vertices.size() < best_size) {
                    best_size = per_color[ci].second[j].vertices.size();
                    best_color = ci;
                    best_idx = j;
                }
        per_color[best_color].second.erase(
            per_color[best_color].second.begin() + static_cast<std::ptrdiff_t>(best_idx));
    }

    // Lift; a failed matching drops one implicated cycle and retries, so a
    // local shortage degrades that cycle to uncovered vertices only.
    LiftOutcome lifted;
    for (;;) {
        lifted = lift_auxiliary_cycles(cg, per_color, u);
        if (lifted.saturated) break;
        ++d.lift_retries;
        bool removed = false;
        if (!lifted.hall_witness.empty()) {
            const AuxEdgeRef& ref = lifted.hall_witness.front();
            for (auto& [color, cycles] : per_color) {
                if (color != ref.color) continue;
                for (size_t j = 0; j < cycles.size(); ++j) {
                    const auto& vs = cycles[j].vertices;
                    bool has_v = std::find(vs.begin(), vs.end(), ref.ends[0]) != vs.end();
                    bool has_w = std::find(vs.begin(), vs.end(), ref.ends[1]) != vs.end();
                    if (has_v && has_w) {
                        cycles.erase(cycles.begin() + static_cast<std::ptrdiff_t>(j));
                        removed = true;
                        break;
                    }
                }
                if (removed) break;
            }
        }
        if (!removed) {
            for (auto& pc : per_color)
                if (!pc.second.empty()) {
                    pc.second.erase(pc.second.begin());
                    removed = true;
                    break;
                }
        }
        if (!removed) break;  // nothing left to lift
    }

    d.matching_size = lifted.matching_size;

    Cover cover;
    cover.cycles = std::move(lifted.cycles);
    cover.target = w;
    cover.disjoint = true;
    VertexSet covered(n);
    for (const Cycle& c : cover.cycles)
        for (int v : c.vertices) covered.set(v);
    covered &= w;
    cover.uncovered = w - covered;
    d.uncovered_count = cover.uncovered.count();
    return cover;
}

}  // namespace mcc
