#include "mcc/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

namespace mcc {

namespace {

constexpr int kMaxOracleN = 12;

using HamTable = std::vector<std::array<uint16_t, kMaxOracleN>>;

// ham[mask][v] = bitmask of vertices u such that the layer induced on mask
// has a Hamiltonian path from u to v.
HamTable ham_paths(int n, const std::vector<uint16_t>& adj) {
    HamTable dp(size_t(1) << n);
    for (auto& a : dp) a.fill(0);
    for (int v = 0; v < n; ++v) dp[size_t(1) << v][size_t(v)] = uint16_t(1u << v);
    uint32_t full = (n == 0) ? 0 : ((uint32_t(1) << n) - 1);
    for (uint32_t mask = 1; mask <= full && n > 0; ++mask) {
        uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            uint16_t starts = dp[mask][size_t(v)];
            if (!starts) continue;
            uint32_t ext = adj[size_t(v)] & ~mask;
            while (ext) {
                int w = std::countr_zero(ext);
                ext &= ext - 1;
                dp[mask | (uint32_t(1) << w)][size_t(w)] |= starts;
            }
        }
    }
    return dp;
}

// Recover the vertex order of a Hamiltonian cycle on mask that closes the
// path u..v with the edge vu.
std::vector<int> recover_cycle(const HamTable& dp, const std::vector<uint16_t>& adj,
                               uint32_t mask, int u, int v) {
    std::vector<int> rev{v};
    uint32_t cur = mask;
    int at = v;
    while (cur != (uint32_t(1) << u)) {
        uint32_t prev = cur & ~(uint32_t(1) << at);
        uint32_t cand = adj[size_t(at)] & prev;
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            if (dp[prev][size_t(w)] & (uint16_t(1) << u)) {
                rev.push_back(w);
                at = w;
                cur = prev;
                break;
            }
        }
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

struct Piece {
    uint32_t mask;
    int color;  // 0 for singletons
    CycleKind kind;
};

}  // namespace

OracleCover min_mono_cycle_cover_exact(const ColoredGraph& g, bool disjoint_mode) {
    int n = g.vertex_count();
    if (n > kMaxOracleN)
        throw std::length_error("min_mono_cycle_cover_exact: limited to 12 vertices");
    OracleCover out;
    if (n == 0) return out;

    int r = g.colors();
    std::vector<std::vector<uint16_t>> adj(size_t(r) + 1);
    for (int c = 1; c <= r; ++c) {
        adj[size_t(c)].assign(size_t(n), 0);
        for (int v = 0; v < n; ++v) {
            const VertexSet& nb = g.layer(c).neighbors(v);
            for (int w = nb.first(); w >= 0; w = nb.next(w))
                adj[size_t(c)][size_t(v)] |= uint16_t(1u << w);
        }
    }
    std::vector<HamTable> ham(size_t(r) + 1);
    for (int c = 1; c <= r; ++c) ham[size_t(c)] = ham_paths(n, adj[size_t(c)]);

    // Collect usable pieces keyed by vertex mask; the first (lowest-color)
    // representative wins.
    std::vector<int> owner(size_t(1) << n, -1);  // mask -> piece index
    std::vector<Piece> pieces;
    auto offer = [&](uint32_t mask, int color, CycleKind kind) {
        if (owner[mask] >= 0) return;
        owner[mask] = int(pieces.size());
        pieces.push_back({mask, color, kind});
    };
    for (int v = 0; v < n; ++v) offer(uint32_t(1) << v, 0, CycleKind::vertex);
    for (int c = 1; c <= r; ++c)
        for (auto [u, v] : g.layer(c).edges())
            offer((uint32_t(1) << u) | (uint32_t(1) << v), c, CycleKind::edge);
    uint32_t full = (uint32_t(1) << n) - 1;
    for (int c = 1; c <= r; ++c) {
        const HamTable& dp = ham[size_t(c)];
        for (uint32_t mask = 0; mask <= full; ++mask) {
            if (std::popcount(mask) < 3) continue;
            bool cyc = false;
            uint32_t rest = mask;
            while (rest && !cyc) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                if (dp[mask][size_t(v)] & adj[size_t(c)][size_t(v)]) cyc = true;
            }
            if (cyc) offer(mask, c, CycleKind::proper);
        }
    }

    std::vector<Piece> usable;
    if (disjoint_mode) {
        usable = pieces;
    } else {
        // With overlap allowed only maximal pieces matter.
        for (const Piece& p : pieces) {
            bool dominated = false;
            for (const Piece& q : pieces)
                if (p.mask != q.mask && (p.mask & q.mask) == p.mask) {
                    dominated = true;
                    break;
                }
            if (!dominated) usable.push_back(p);
        }
    }

    std::vector<std::vector<int>> at_vertex(static_cast<size_t>(n));
    for (size_t i = 0; i < usable.size(); ++i) {
        uint32_t rest = usable[i].mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            at_vertex[size_t(v)].push_back(int(i));
        }
    }

    std::vector<int8_t> best(size_t(1) << n, -1);
    std::vector<int> choice(size_t(1) << n, -1);
    best[0] = 0;
    auto solve = [&](auto&& self, uint32_t uncovered) -> int {
        if (best[uncovered] >= 0) return best[uncovered];
        int v = std::countr_zero(uncovered);
        int opt = n + 1;
        int pick = -1;
        for (int pi : at_vertex[size_t(v)]) {
            const Piece& p = usable[size_t(pi)];
            if (disjoint_mode && (p.mask & ~uncovered)) continue;
            int sub = self(self, uncovered & ~p.mask);
            if (sub + 1 < opt) {
                opt = sub + 1;
                pick = pi;
            }
        }
        best[uncovered] = int8_t(opt);
        choice[uncovered] = pick;
        return opt;
    };
    solve(solve, full);

    uint32_t cur = full;
    while (cur) {
        const Piece& p = usable[size_t(choice[cur])];
        uint32_t rest = p.mask;
        std::vector<int> vs;
        while (rest) {
            vs.push_back(std::countr_zero(rest));
            rest &= rest - 1;
        }
        Cycle cyc;
        switch (p.kind) {
            case CycleKind::vertex:
                cyc = Cycle::single(vs[0]);
                break;
            case CycleKind::edge:
                cyc = Cycle{p.color, CycleKind::edge, vs};
                break;
            case CycleKind::proper: {
                const HamTable& dp = ham[size_t(p.color)];
                int cu = -1, cv = -1;
                for (int v : vs) {
                    uint16_t closing = dp[p.mask][size_t(v)] & adj[size_t(p.color)][size_t(v)];
                    if (closing) {
                        cv = v;
                        cu = std::countr_zero(uint32_t(closing));
                        break;
                    }
                }
                cyc = Cycle{p.color, CycleKind::proper,
                            recover_cycle(dp, adj[size_t(p.color)], p.mask, cu, cv)};
                break;
            }
        }
        out.cycles.push_back(std::move(cyc));
        cur &= ~p.mask;
    }
    return out;
}

namespace {

struct KkmSearch {
    const Graph& g;
    int m;

    bool find_parts(const VertexSet& avail, int parts_left, int min_start) {
        if (parts_left == 0) return true;
        if (avail.count() < m * parts_left) return false;
        std::vector<int> av = avail.to_vector();
        std::vector<int> part;
        for (size_t i = 0; i < av.size(); ++i) {
            if (av[i] <= min_start) continue;
            part.assign(1, av[i]);
            if (extend(avail, av, i + 1, m - 1, part, parts_left)) return true;
        }
        return false;
    }

    bool extend(const VertexSet& avail, const std::vector<int>& av, size_t from, int need,
                std::vector<int>& part, int parts_left) {
        if (need == 0) {
            VertexSet next = avail;
            for (int b : part) {
                next.reset(b);
                next -= g.neighbors(b);
            }
            return find_parts(next, parts_left - 1, part[0]);
        }
        for (size_t i = from; i + size_t(need) <= av.size(); ++i) {
            part.push_back(av[i]);
            if (extend(avail, av, i + 1, need - 1, part, parts_left)) return true;
            part.pop_back();
        }
        return false;
    }
};

}  // namespace

bool is_complement_Kkm_free(const Graph& g, int k, int m) {
    if (k < 1) throw std::invalid_argument("is_complement_Kkm_free: k must be >= 1");
    if (m < 1) throw std::invalid_argument("is_complement_Kkm_free: m must be >= 1");
    KkmSearch s{g, m};
    return !s.find_parts(VertexSet::full(g.vertex_count()), k, -1);
}

namespace {

std::vector<std::vector<uint32_t>> family_masks(const HypergraphFamily& fam) {
    if (fam.arity < 1) throw std::invalid_argument("hypergraph family: arity must be >= 1");
    if (fam.ground_size < 0 || fam.ground_size > 32)
        throw std::invalid_argument("hypergraph family: bad ground size");
    std::vector<std::vector<uint32_t>> out(fam.members.size());
    for (size_t i = 0; i < fam.members.size(); ++i) {
        for (const auto& e : fam.members[i]) {
            if (int(e.size()) != fam.arity)
                throw std::invalid_argument("hypergraph family: hyperedge arity mismatch");
            uint32_t mask = 0;
            for (int v : e) {
                if (v < 0 || v >= fam.ground_size)
                    throw std::invalid_argument("hypergraph family: vertex out of range");
                if (mask & (uint32_t(1) << v))
                    throw std::invalid_argument("hypergraph family: repeated vertex in hyperedge");
                mask |= uint32_t(1) << v;
            }
            out[i].push_back(mask);
        }
    }
    return out;
}

int greedy_packing(const std::vector<uint32_t>& edges) {
    uint32_t used = 0;
    int count = 0;
    for (uint32_t e : edges)
        if (!(e & used)) {
            used |= e;
            ++count;
        }
    return count;
}

// Whether a hitting set of size <= limit exists.
bool exists_hitting(const std::vector<uint32_t>& edges, int limit) {
    if (edges.empty()) return true;
    if (limit <= 0) return false;
    if (greedy_packing(edges) > limit) return false;
    uint32_t e = edges.front();
    while (e) {
        int v = std::countr_zero(e);
        e &= e - 1;
        std::vector<uint32_t> rest;
        rest.reserve(edges.size());
        for (uint32_t f : edges)
            if (!(f & (uint32_t(1) << v))) rest.push_back(f);
        if (exists_hitting(rest, limit - 1)) return true;
    }
    return false;
}

}  // namespace

bool haxell_condition_check(const HypergraphFamily& fam) {
    int t = int(fam.members.size());
    if (t > 12) throw std::length_error("haxell_condition_check: limited to 12 families");
    if (fam.ground_size > 20)
        throw std::length_error("haxell_condition_check: limited to 20 ground vertices");
    auto masks = family_masks(fam);
    int a = fam.arity;
    for (uint32_t sub = 1; sub < (uint32_t(1) << t); ++sub) {
        std::vector<uint32_t> pool;
        for (int i = 0; i < t; ++i)
            if (sub & (uint32_t(1) << i))
                pool.insert(pool.end(), masks[size_t(i)].begin(), masks[size_t(i)].end());
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        int limit = (2 * a - 1) * (std::popcount(sub) - 1);
        if (greedy_packing(pool) > limit) continue;
        if (exists_hitting(pool, limit)) return false;  // cover number <= limit
    }
    return true;
}

namespace {

struct SystemSearch {
    const std::vector<std::vector<uint32_t>>& masks;
    const std::vector<int>& order;  // family indices, fewest edges first
    long long budget;
    std::vector<int> chosen;  // edge index per order position
    bool exhausted = false;

    bool run(size_t pos, uint32_t used) {
        if (pos == order.size()) return true;
        const auto& edges = masks[size_t(order[pos])];
        for (size_t i = 0; i < edges.size(); ++i) {
            if (--budget < 0) {
                exhausted = true;
                return false;
            }
            if (edges[i] & used) continue;
            chosen[pos] = int(i);
            if (run(pos + 1, used | edges[i])) return true;
            if (exhausted) return false;
        }
        return false;
    }
};

}  // namespace

DisjointSystem find_disjoint_hyperedge_system(const HypergraphFamily& fam, long long node_budget) {
    auto masks = family_masks(fam);
    int t = int(fam.members.size());
    std::vector<int> order(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) order[size_t(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return masks[size_t(a)].size() < masks[size_t(b)].size();
    });
    SystemSearch s{masks, order, node_budget, std::vector<int>(size_t(t), -1)};
    DisjointSystem out;
    if (s.run(0, 0)) {
        out.status = SearchStatus::found;
        out.picks.resize(size_t(t));
        for (size_t pos = 0; pos < order.size(); ++pos)
            out.picks[size_t(order[pos])] = fam.members[size_t(order[pos])][size_t(s.chosen[pos])];
    } else {
        out.status = s.exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    return out;
}

}  // namespace mcc
