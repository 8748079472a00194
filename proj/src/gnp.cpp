#include "mcc/gnp.hpp"

#include <cmath>

namespace mcc {

namespace {

// Pairs (u,v), u<v, ranked row-major: (0,1),(0,2),...,(0,n-1),(1,2),...
// rank_base(u) is the rank of (u, u+1).
uint64_t rank_base(uint64_t u, uint64_t n) { return u * (n - 1) - u * (u - 1) / 2; }

std::pair<int, int> unrank_pair(uint64_t t, uint64_t n) {
    uint64_t lo = 0, hi = n - 1;  // find largest u with rank_base(u) <= t
    while (lo < hi) {
        uint64_t mid = (lo + hi + 1) / 2;
        if (rank_base(mid, n) <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t u = lo;
    uint64_t v = u + 1 + (t - rank_base(u, n));
    return {int(u), int(v)};
}

}  // namespace

Graph sample_gnp(const GnpParams& params) {
    if (params.n < 0) throw std::invalid_argument("sample_gnp: negative n");
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw std::invalid_argument("sample_gnp: p outside [0,1]");
    int n = params.n;
    double p = params.p;
    Graph g(n);
    if (n < 2 || p == 0.0) return g;
    uint64_t total = uint64_t(n) * uint64_t(n - 1) / 2;
    if (p == 1.0) return Graph::complete(n);

    Rng rng = Rng(params.seed).substream(0x676e7000);
    if (p >= 0.1) {
        // Dense regime: one draw per pair, integer threshold compare.
        uint64_t threshold = uint64_t(p * 0x1.0p64);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next() < threshold) g.add_edge(u, v);
        return g;
    }
    // Sparse regime: skip lengths are geometric with success probability p.
    double log1mp = std::log1p(-p);
    uint64_t idx = 0;
    for (;;) {
        double u = rng.unit();
        double skip = std::floor(std::log1p(-u) / log1mp);
        if (skip >= double(total)) break;  // also catches inf
        idx += uint64_t(skip);
        if (idx >= total) break;
        auto [a, b] = unrank_pair(idx, uint64_t(n));
        g.add_edge(a, b);
        ++idx;
    }
    return g;
}

ColoredGraph color_uniform(const Graph& g, int r, uint64_t seed) {
    if (r < 1) throw std::invalid_argument("color_uniform: r must be >= 1");
    int n = g.vertex_count();
    ColoredGraph cg(n, r);
    Rng rng = Rng(seed).substream(0x636f6c00);
    for (int u = 0; u < n; ++u) {
        const VertexSet& row = g.neighbors(u);
        for (int v = row.next(u); v >= 0; v = row.next(v))
            cg.add_edge(u, v, 1 + int(rng.below(uint64_t(r))));
    }
    return cg;
}

VertexSet find_sparse_independent_set(const Graph& g, int r, uint64_t seed, int retries) {
    if (r < 1) throw std::invalid_argument("find_sparse_independent_set: r must be >= 1");
    if (retries < 1) retries = 1;
    int n = g.vertex_count();
    VertexSet best(n);
    Rng base = Rng(seed).substream(0x78736574);
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[size_t(i)] = i;
    for (int attempt = 0; attempt < retries; ++attempt) {
        Rng rng = base.substream(uint64_t(attempt));
        rng.shuffle(order);
        VertexSet x(n);
        std::vector<int> load(size_t(n), 0);  // |N(v) & X|
        for (int v : order) {
            if (load[size_t(v)] > 0) continue;  // adjacent to X: not independent
            const VertexSet& nb = g.neighbors(v);
            bool ok = true;
            for (int w = nb.first(); w >= 0; w = nb.next(w))
                if (load[size_t(w)] >= r - 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            x.set(v);
            for (int w = nb.first(); w >= 0; w = nb.next(w)) ++load[size_t(w)];
        }
        if (x.count() > best.count()) best = x;
    }
    return best;
}

ColoredGraph color_adversarial_bal_debiasio(const Graph& g, int r, const VertexSet& x) {
    int n = g.vertex_count();
    if (r < 1) throw std::invalid_argument("bal_debiasio coloring: r must be >= 1");
    if (x.universe() != n) throw std::invalid_argument("bal_debiasio coloring: set universe mismatch");
    for (int v = x.first(); v >= 0; v = x.next(v))
        if (g.neighbors(v).intersects(x))
            throw std::invalid_argument("bal_debiasio coloring: X is not independent at vertex " +
                                        std::to_string(v));
    for (int v = 0; v < n; ++v) {
        if (x.test(v)) continue;
        if (intersection_size(g.neighbors(v), x) > r - 1)
            throw std::invalid_argument("bal_debiasio coloring: vertex " + std::to_string(v) +
                                        " has more than r-1 neighbors in X");
    }
    ColoredGraph cg(n, r);
    for (auto [u, v] : g.edges()) {
        if (!x.test(u) && !x.test(v)) cg.add_edge(u, v, r);
    }
    for (int v = 0; v < n; ++v) {
        if (x.test(v)) continue;
        int c = 1;
        VertexSet into = g.neighbors(v) & x;
        for (int w = into.first(); w >= 0; w = into.next(w)) cg.add_edge(std::min(v, w), std::max(v, w), c++);
    }
    return cg;
}

bool mono_components_meet_once(const ColoredGraph& g, const VertexSet& x) {
    int n = g.vertex_count();
    if (x.universe() != n) throw std::invalid_argument("mono_components_meet_once: universe mismatch");
    std::vector<int> stack;
    for (int c = 1; c <= g.colors(); ++c) {
        const Graph& layer = g.layer(c);
        VertexSet seen(n);
        for (int s = 0; s < n; ++s) {
            if (seen.test(s)) continue;
            seen.set(s);
            stack.assign(1, s);
            int hits = x.test(s) ? 1 : 0;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                const VertexSet& nb = layer.neighbors(v);
                for (int w = nb.first(); w >= 0; w = nb.next(w)) {
                    if (seen.test(w)) continue;
                    seen.set(w);
                    if (x.test(w) && ++hits > 1) return false;
                    stack.push_back(w);
                }
            }
        }
    }
    return true;
}

}  // namespace mcc
