#include "mcc/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mcc/oracle.hpp"
#include "mcc/rng.hpp"

namespace mcc {

const VertexSet& LevelPartition::level(int k) const {
    if (k < 0 || k >= static_cast<int>(levels.size()))
        throw std::out_of_range("LevelPartition::level: no such level");
    return levels[static_cast<size_t>(k)];
}

LevelPartition build_levels(const VertexSet& w, double eps, uint64_t seed) {
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("build_levels: eps must be in (0,1]");
    const int n = w.universe();
    int t = static_cast<int>(std::llround(1.0 / eps));
    if (t < 1) t = 1;

    VertexSet u = w.complement();
    if (u.count() < t) throw std::invalid_argument("build_levels: fewer outside vertices than levels");

    std::vector<int> order = u.to_vector();
    Rng rng(seed);
    rng.shuffle(order);

    LevelPartition lp;
    lp.eps = eps;
    lp.t = t;
    lp.levels.push_back(w);
    const int total = static_cast<int>(order.size());
    const int base = total / t;
    const int extra = total % t;
    size_t pos = 0;
    for (int k = 0; k < t; ++k) {
        int size = base + (k < extra ? 1 : 0);
        VertexSet level(n);
        for (int j = 0; j < size; ++j) level.set(order[pos++]);
        lp.levels.push_back(level);
    }
    return lp;
}

CascadeParams compute_params(int n, double p, int r, double eps, int level_size,
                             bool strict) {
    (void)n;
    if (r < 1) throw std::invalid_argument("compute_params: r must be positive");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("compute_params: p must be in (0,1]");
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("compute_params: eps must be in (0,1]");
    if (level_size < 1) throw std::invalid_argument("compute_params: level_size must be positive");

    CascadeParams cp;
    cp.r = r;
    cp.p = p;
    cp.eps = eps;
    cp.mu_raw = static_cast<double>(level_size) * std::pow(p, r) / (2.0 * std::pow(r, r));
    cp.mu = static_cast<long long>(std::floor(cp.mu_raw));
    if (cp.mu < 1) {
        if (strict) throw std::runtime_error("compute_params: mu below 1 at this scale");
        cp.mu = 1;
        cp.mu_floored = true;
    }

    const double q0 = 1.0 / (eps * r);
    long long q = std::llround(q0);
    if (q < 1) q = 1;
    auto degenerate = [r](long long qq) { return (qq - 1) % r == 0; };
    if (degenerate(q)) {
        // Nearest admissible integer, lower side first on ties.
        long long lo = q - 1, hi = q + 1;
        bool lo_first = std::abs(static_cast<double>(lo) - q0) <=
                        std::abs(static_cast<double>(hi) - q0);
        for (long long c : {lo_first ? lo : hi, lo_first ? hi : lo})
            if (c >= 1 && !degenerate(c)) {
                q = c;
                break;
            }
    }
    cp.q = static_cast<int>(q);
    cp.q_degenerate = degenerate(q);
    if (cp.q_degenerate && strict)
        throw std::invalid_argument("compute_params: r divides q-1, no strict m exists");
    int m = static_cast<int>((q - 1) / r) + 1;
    int t = static_cast<int>(std::llround(1.0 / eps));
    if (t < 1) t = 1;
    cp.m = std::min(std::max(m, 1), t);
    return cp;
}

namespace {

long long ipow(long long b, int e) {
    long long v = 1;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
}

// Common neighborhood with the empty-set convention N*(empty) = everything.
VertexSet common_or_full(const Graph& g, const VertexSet& s, const VertexSet& within) {
    if (s.count() == 0) return within;
    return common_neighborhood(g, s, within);
}

void validate_tower_shape(const ColoredGraph& cg, const LevelPartition& levels,
                          const CascadeParams& params, const Tower& tw) {
    const int n = cg.vertex_count();
    if (tw.color < 1 || tw.color > cg.colors())
        throw std::invalid_argument("tower: color out of range");
    if (tw.base < 0 || tw.base >= n) throw std::invalid_argument("tower: bad base vertex");
    if (tw.s < 1 || tw.s > tw.f || tw.f > params.m)
        throw std::invalid_argument("tower: levels must satisfy 1 <= s <= f <= m");
    if (tw.f >= static_cast<int>(levels.levels.size()))
        throw std::invalid_argument("tower: top level beyond the partition");
    if (static_cast<int>(tw.sets.size()) != tw.f - tw.s + 2)
        throw std::invalid_argument("tower: set sequence length mismatch");
    if (static_cast<int>(tw.witness.size()) != tw.f - tw.s + 1)
        throw std::invalid_argument("tower: witness sequence length mismatch");
    for (const VertexSet& s : tw.sets)
        if (s.universe() != n) throw std::invalid_argument("tower: set universe mismatch");
    for (const VertexSet& t : tw.witness) {
        if (t.universe() != n) throw std::invalid_argument("tower: witness universe mismatch");
        if (t.count() != params.r - 1)
            throw std::invalid_argument("tower: witness sets must have size r-1");
        if (!levels.level(0).contains(t))
            throw std::invalid_argument("tower: witness sets must live in L_0");
    }
    if (!levels.level(0).test(tw.base)) throw std::invalid_argument("tower: base outside L_0");
}

}  // namespace

TowerCheck check_tower(const ColoredGraph& cg, const LevelPartition& levels,
                       const CascadeParams& params, const Tower& tw) {
    validate_tower_shape(cg, levels, params, tw);
    auto set_at = [&tw](int k) -> const VertexSet& {
        return tw.sets[static_cast<size_t>(k - (tw.s - 1))];
    };
    auto witness_at = [&tw](int k) -> const VertexSet& {
        return tw.witness[static_cast<size_t>(k - tw.s)];
    };

    for (int k = tw.s - 1; k <= tw.f; ++k) {
        const VertexSet& sk = set_at(k);
        if (!levels.level(k).contains(sk)) return TowerCheck::t1;
        if (static_cast<long long>(sk.count()) != ipow(params.mu, k)) return TowerCheck::t1;
    }

    const Graph& base = cg.base();
    const Graph& layer = cg.layer(tw.color);
    {
        VertexSet need = layer.neighbors(tw.base);
        need &= set_neighborhood(base, set_at(tw.s - 1));
        need &= common_or_full(base, witness_at(tw.s), VertexSet::full(cg.vertex_count()));
        if (!need.contains(set_at(tw.s))) return TowerCheck::t2;
    }
    for (int k = tw.s + 1; k <= tw.f; ++k) {
        VertexSet need = set_neighborhood(layer, set_at(k - 1));
        need &= common_or_full(base, witness_at(k), VertexSet::full(cg.vertex_count()));
        if (!need.contains(set_at(k))) return TowerCheck::t3;
    }
    if (tw.s > 1) {
        if (!witness_at(tw.s).test(tw.base)) return TowerCheck::t4;
    } else {
        if (set_at(0) != VertexSet::of(cg.vertex_count(), {tw.base})) return TowerCheck::t4;
        if (witness_at(1).test(tw.base)) return TowerCheck::t4;
    }
    return TowerCheck::ok;
}

std::optional<Cascade> cascade_between(const ColoredGraph& cg, const CascadeParams& params,
                                       const Tower& tower_v, const Tower& tower_w) {
    if (tower_v.color != tower_w.color)
        throw std::invalid_argument("cascade_between: towers differ in color");
    if (tower_v.f != tower_w.f)
        throw std::invalid_argument("cascade_between: towers differ in top level");
    if (tower_v.base == tower_w.base)
        throw std::invalid_argument("cascade_between: towers share the base vertex");

    const VertexSet& top_v = tower_v.sets.back();
    const VertexSet& top_w = tower_w.sets.back();

    Cascade c;
    c.color = tower_v.color;
    c.v = tower_v.base;
    c.w = tower_w.base;
    c.tower_v = tower_v;
    c.tower_w = tower_w;

    if (top_v == top_w) {
        c.mode = CascadeMode::C1;
        return c;
    }
    if (tower_v.f != params.m) return std::nullopt;

    VertexSet rv = top_v - top_w;
    VertexSet rw = top_w - top_v;
    long long e = edge_count_between(cg.base(), rv, rw);
    long long ei = edge_count_between(cg.layer(c.color), rv, rw);
    if (ei * params.r >= e) {
        c.mode = CascadeMode::C2;
        c.vacuous_c2 = e == 0;
        return c;
    }
    return std::nullopt;
}

TowersOrCascade towers_or_cascade(const ColoredGraph& cg, const LevelPartition& levels,
                                  const CascadeParams& params, const VertexSet& xhat) {
    const int n = cg.vertex_count();
    const int r = params.r;
    if (r < 2) throw std::invalid_argument("towers_or_cascade: needs at least two colors");
    if (cg.colors() != r) throw std::invalid_argument("towers_or_cascade: color count mismatch");
    if (xhat.universe() != n) throw std::invalid_argument("towers_or_cascade: universe mismatch");
    if (!levels.level(0).contains(xhat))
        throw std::invalid_argument("towers_or_cascade: base vertices outside L_0");
    if (xhat.count() != 2 * r - 1)
        throw std::invalid_argument("towers_or_cascade: need exactly 2r-1 base vertices");
    if (params.m < 1 || params.m >= static_cast<int>(levels.levels.size()))
        throw std::invalid_argument("towers_or_cascade: m does not fit the partition");

    const Graph& base = cg.base();
    const std::vector<int> xs = xhat.to_vector();

    // Largest color-pattern bucket; map order makes ties lex-least.
    auto pick_bucket = [](const std::map<std::vector<int>, std::vector<int>>& buckets) {
        const std::pair<const std::vector<int>, std::vector<int>>* best = nullptr;
        for (const auto& kv : buckets)
            if (!best || kv.second.size() > best->second.size()) best = &kv;
        return best;
    };
    auto first_repeat = [r](const std::vector<int>& pat) {
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b)
                if (pat[static_cast<size_t>(a)] == pat[static_cast<size_t>(b)])
                    return std::pair<int, int>{a, b};
        return std::pair<int, int>{-1, -1};
    };

    TowersOrCascade out;

    // Base level: common neighborhood of the first r vertices.
    std::vector<int> x1(xs.begin(), xs.begin() + r);
    VertexSet x1set = VertexSet::of(n, x1);
    VertexSet z1 = common_neighborhood(base, x1set, levels.level(1));

    std::map<std::vector<int>, std::vector<int>> buckets;
    for (int z = z1.first(); z >= 0; z = z1.next(z)) {
        std::vector<int> pat(static_cast<size_t>(r));
        for (int a = 0; a < r; ++a) pat[static_cast<size_t>(a)] = cg.color_of(z, x1[static_cast<size_t>(a)]);
        buckets[pat].push_back(z);
    }
    const auto* chosen = pick_bucket(buckets);
    if (!chosen || static_cast<long long>(chosen->second.size()) < params.mu) {
        out.kind = TowersOrCascade::Kind::infeasible;
        out.failed_level = 1;
        out.z_size = z1.count();
        out.largest_bucket = chosen ? static_cast<long long>(chosen->second.size()) : 0;
        return out;
    }
    VertexSet s_cur(n);
    for (long long j = 0; j < params.mu; ++j) s_cur.set(chosen->second[static_cast<size_t>(j)]);

    auto base_tower = [&](int a, const std::vector<int>& pat) {
        Tower tw;
        tw.color = pat[static_cast<size_t>(a)];
        tw.base = x1[static_cast<size_t>(a)];
        tw.s = 1;
        tw.f = 1;
        tw.sets = {VertexSet::of(n, {tw.base}), s_cur};
        VertexSet t1 = x1set;
        t1.reset(tw.base);
        tw.witness = {t1};
        return tw;
    };

    std::vector<Tower> by_color(static_cast<size_t>(r + 1));
    {
        const std::vector<int>& pat = chosen->first;
        auto [a, b] = first_repeat(pat);
        if (a >= 0) {
            out.kind = TowersOrCascade::Kind::cascade;
            out.cascade.color = pat[static_cast<size_t>(a)];
            out.cascade.v = x1[static_cast<size_t>(a)];
            out.cascade.w = x1[static_cast<size_t>(b)];
            out.cascade.tower_v = base_tower(a, pat);
            out.cascade.tower_w = base_tower(b, pat);
            out.cascade.mode = CascadeMode::C1;
            return out;
        }
        for (int a2 = 0; a2 < r; ++a2) by_color[static_cast<size_t>(pat[static_cast<size_t>(a2)])] = base_tower(a2, pat);
    }

    for (int k = 2; k <= params.m; ++k) {
        VertexSet bases(n);
        for (int c = 1; c <= r; ++c) bases.set(by_color[static_cast<size_t>(c)].base);
        VertexSet xp_set = xhat - bases;
        std::vector<int> xp = xp_set.to_vector();

        VertexSet zk = common_or_full(base, xp_set, levels.level(k));
        zk &= set_neighborhood(base, s_cur);

        std::map<std::vector<int>, std::vector<int>> bk;
        for (int z = zk.first(); z >= 0; z = zk.next(z)) {
            int anchor = (base.neighbors(z) & s_cur).first();
            std::vector<int> pat(static_cast<size_t>(r));
            for (size_t j = 0; j < xp.size(); ++j) pat[j] = cg.color_of(z, xp[j]);
            pat[static_cast<size_t>(r - 1)] = cg.color_of(z, anchor);
            bk[pat].push_back(z);
        }
        const auto* pick = pick_bucket(bk);
        const long long need = ipow(params.mu, k);
        if (!pick || static_cast<long long>(pick->second.size()) < need) {
            out.kind = TowersOrCascade::Kind::infeasible;
            out.failed_level = k;
            out.z_size = zk.count();
            out.largest_bucket = pick ? static_cast<long long>(pick->second.size()) : 0;
            return out;
        }
        VertexSet s_next(n);
        for (long long j = 0; j < need; ++j) s_next.set(pick->second[static_cast<size_t>(j)]);

        const std::vector<int>& pat = pick->first;
        auto fresh_tower = [&](int j) {
            Tower tw;
            tw.color = pat[static_cast<size_t>(j)];
            tw.base = xp[static_cast<size_t>(j)];
            tw.s = k;
            tw.f = k;
            tw.sets = {s_cur, s_next};
            tw.witness = {xp_set};
            return tw;
        };
        auto extended_tower = [&] {
            Tower tw = by_color[static_cast<size_t>(pat[static_cast<size_t>(r - 1)])];
            tw.f = k;
            tw.sets.push_back(s_next);
            tw.witness.push_back(xp_set);
            return tw;
        };

        auto [a, b] = first_repeat(pat);
        if (a >= 0) {
            out.kind = TowersOrCascade::Kind::cascade;
            out.cascade.color = pat[static_cast<size_t>(a)];
            out.cascade.mode = CascadeMode::C1;
            out.cascade.tower_v = fresh_tower(a);
            out.cascade.tower_w = b < r - 1 ? fresh_tower(b) : extended_tower();
            out.cascade.v = out.cascade.tower_v.base;
            out.cascade.w = out.cascade.tower_w.base;
            return out;
        }

        std::vector<Tower> next(static_cast<size_t>(r + 1));
        for (int j = 0; j < r - 1; ++j) next[static_cast<size_t>(pat[static_cast<size_t>(j)])] = fresh_tower(j);
        next[static_cast<size_t>(pat[static_cast<size_t>(r - 1)])] = extended_tower();
        by_color = std::move(next);
        s_cur = s_next;
    }

    out.kind = TowersOrCascade::Kind::towers;
    for (int c = 1; c <= r; ++c) out.towers.push_back(by_color[static_cast<size_t>(c)]);
    return out;
}

CascadeGraph build_cascade_graph(const ColoredGraph& cg, const LevelPartition& levels,
                                 const CascadeParams& params, long long sample_budget,
                                 uint64_t seed, const VertexSet* focus) {
    const int n = cg.vertex_count();
    const int r = params.r;
    CascadeGraph h;
    h.verts = levels.level(0).to_vector();
    const int nl = static_cast<int>(h.verts.size());
    h.graph = ColoredGraph(nl, cg.colors());
    if (nl < 2 * r - 1 || sample_budget <= 0) return h;

    std::vector<int> index_of(static_cast<size_t>(n), -1);
    for (int i = 0; i < nl; ++i) index_of[static_cast<size_t>(h.verts[static_cast<size_t>(i)])] = i;

    std::vector<int> focus_pool;
    if (focus) {
        VertexSet f = *focus & levels.level(0);
        focus_pool = f.to_vector();
    }

    auto try_add = [&](const Cascade& c) {
        int a = std::min(c.v, c.w), b = std::max(c.v, c.w);
        int ia = index_of[static_cast<size_t>(a)], ib = index_of[static_cast<size_t>(b)];
        if (h.graph.base().adjacent(ia, ib)) {
            ++h.duplicate_edges;
            return;
        }
        h.graph.add_edge(ia, ib, c.color);
        h.payloads.emplace(std::make_pair(a, b), c);
        if (c.mode == CascadeMode::C1)
            ++h.c1_edges;
        else
            ++h.c2_edges;
    };

    Rng rng(seed);
    const long long all_pairs = static_cast<long long>(nl) * (nl - 1) / 2;
    std::vector<std::vector<Tower>> families;

    for (long long it = 0; it < sample_budget; ++it) {
        if (static_cast<long long>(h.payloads.size()) == all_pairs) break;
        std::vector<int> pick = rng.sample_distinct(2 * r - 1, nl);
        if (!focus_pool.empty()) {
            int fv = focus_pool[static_cast<size_t>(rng.below(focus_pool.size()))];
            int fi = index_of[static_cast<size_t>(fv)];
            if (std::find(pick.begin(), pick.end(), fi) == pick.end()) pick[0] = fi;
        }
        VertexSet xhat(n);
        for (int idx : pick) xhat.set(h.verts[static_cast<size_t>(idx)]);

        ++h.samples;
        TowersOrCascade res = towers_or_cascade(cg, levels, params, xhat);
        if (res.kind == TowersOrCascade::Kind::cascade) {
            try_add(res.cascade);
        } else if (res.kind == TowersOrCascade::Kind::towers) {
            for (const auto& other : families) {
                for (int c = 1; c <= r; ++c) {
                    const Tower& tv = res.towers[static_cast<size_t>(c - 1)];
                    const Tower& tw = other[static_cast<size_t>(c - 1)];
                    if (tv.base == tw.base) continue;
                    auto casc = cascade_between(cg, params, tv, tw);
                    // A vacuous C2 has no cross edge to route through, so it
                    // could never lift; keep the pair slot for a usable one.
                    if (casc && !casc->vacuous_c2) {
                        try_add(*casc);
                        break;
                    }
                }
            }
            families.push_back(res.towers);
        } else {
            ++h.infeasible_samples;
        }
    }
    h.budget_exhausted = h.samples == sample_budget &&
                         static_cast<long long>(h.payloads.size()) < all_pairs;
    return h;
}

std::vector<int> select_independent_towers(const std::vector<Tower>& towers) {
    const int t = static_cast<int>(towers.size());
    if (t == 0) return {};
    std::set<int> bases;
    for (const Tower& tw : towers) {
        if (!bases.insert(tw.base).second)
            throw std::invalid_argument("select_independent_towers: bases must be distinct");
        if (tw.s != towers[0].s || tw.f != towers[0].f)
            throw std::invalid_argument("select_independent_towers: towers must share s and f");
    }

    // Collision keys: T_s together with one vertex of S_{s-1}.
    std::vector<std::set<std::vector<int>>> keys(static_cast<size_t>(t));
    for (int j = 0; j < t; ++j) {
        const Tower& tw = towers[static_cast<size_t>(j)];
        std::vector<int> ts = tw.witness.front().to_vector();
        for (int v = tw.sets.front().first(); v >= 0; v = tw.sets.front().next(v)) {
            std::vector<int> key = ts;
            key.push_back(v);
            std::sort(key.begin(), key.end());
            key.erase(std::unique(key.begin(), key.end()), key.end());
            keys[static_cast<size_t>(j)].insert(std::move(key));
        }
    }
    auto collide = [&keys](int a, int b) {
        for (const auto& k : keys[static_cast<size_t>(a)])
            if (keys[static_cast<size_t>(b)].count(k)) return true;
        return false;
    };

    std::vector<int> kept;
    for (int j = 0; j < t; ++j) {
        bool ok = true;
        for (int prev : kept)
            if (collide(prev, j)) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(j);
    }
    return kept;
}

namespace {

struct Propagation {
    std::vector<VertexSet> bad;  // aligned with tower levels s..f
};

Propagation propagate_bad(const Graph& base, const Tower& tw, const VertexSet& y) {
    auto set_at = [&tw](int k) -> const VertexSet& {
        return tw.sets[static_cast<size_t>(k - (tw.s - 1))];
    };
    Propagation pr;
    VertexSet cur = y & set_at(tw.s);
    pr.bad.push_back(cur);
    for (int k = tw.s + 1; k <= tw.f; ++k) {
        VertexSet next = set_neighborhood(base, cur) & set_at(k);
        next |= y & set_at(k);
        pr.bad.push_back(next);
        cur = pr.bad.back();
    }
    return pr;
}

// Walks from the tower top back to the base, one level per step, always
// keeping clear of the bad sets and the avoid set.
std::optional<std::vector<int>> chain_down(const ColoredGraph& cg, const Tower& tw,
                                           const Propagation& pr, int top,
                                           const VertexSet& avoid) {
    auto set_at = [&tw](int k) -> const VertexSet& {
        return tw.sets[static_cast<size_t>(k - (tw.s - 1))];
    };
    auto bad_at = [&pr, &tw](int k) -> const VertexSet& {
        return pr.bad[static_cast<size_t>(k - tw.s)];
    };
    const Graph& layer = cg.layer(tw.color);
    std::vector<int> rev{top};
    int cur = top;
    for (int k = tw.f; k > tw.s; --k) {
        VertexSet cand = layer.neighbors(cur) & set_at(k - 1);
        cand -= bad_at(k - 1);
        cand -= avoid;
        int nxt = cand.first();
        if (nxt < 0) return std::nullopt;
        rev.push_back(nxt);
        cur = nxt;
    }
    if (cg.color_of(tw.base, cur) != tw.color) return std::nullopt;
    rev.push_back(tw.base);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

}  // namespace

std::optional<std::vector<int>> find_robust_path(const ColoredGraph& cg, const Cascade& cascade,
                                                 const VertexSet& y, double c_frac) {
    const int n = cg.vertex_count();
    if (y.universe() != n) throw std::invalid_argument("find_robust_path: universe mismatch");
    if (!(c_frac >= 0.0)) throw std::invalid_argument("find_robust_path: c_frac must be nonnegative");
    if (y.test(cascade.v) || y.test(cascade.w))
        throw std::invalid_argument("find_robust_path: Y may not contain the endpoints");

    for (const Tower* tw : {&cascade.tower_v, &cascade.tower_w}) {
        for (int k = tw->s; k <= tw->f; ++k) {
            const VertexSet& sk = tw->sets[static_cast<size_t>(k - (tw->s - 1))];
            if (static_cast<double>(intersection_size(sk, y)) >
                c_frac * static_cast<double>(sk.count()))
                throw std::invalid_argument("find_robust_path: Y takes too much of a tower level");
        }
    }

    const Graph& base = cg.base();
    const Tower& tv = cascade.tower_v;
    const Tower& tw = cascade.tower_w;
    Propagation pv = propagate_bad(base, tv, y);
    Propagation pw = propagate_bad(base, tw, y);
    const VertexSet& top_v = tv.sets.back();
    const VertexSet& top_w = tw.sets.back();
    VertexSet good_v = top_v - pv.bad.back();
    VertexSet good_w = top_w - pw.bad.back();

    // Shared-top route: climb both towers to the same vertex.
    VertexSet shared = good_v & good_w;
    for (int z = shared.first(); z >= 0; z = shared.next(z)) {
        auto p1 = chain_down(cg, tv, pv, z, VertexSet(n));
        if (!p1) continue;
        VertexSet used(n);
        for (int x : *p1) used.set(x);
        used.reset(z);
        auto p2 = chain_down(cg, tw, pw, z, used);
        if (!p2) continue;
        std::vector<int> path = *p1;
        for (size_t j = p2->size() - 1; j-- > 0;) path.push_back((*p2)[j]);
        return path;
    }

    // Cross-edge route between the top difference sets.
    const Graph& layer = cg.layer(cascade.color);
    VertexSet rv = (top_v - top_w) - pv.bad.back();
    VertexSet rw = (top_w - top_v) - pw.bad.back();
    for (int zv = rv.first(); zv >= 0; zv = rv.next(zv)) {
        VertexSet partners = layer.neighbors(zv) & rw;
        for (int zw = partners.first(); zw >= 0; zw = partners.next(zw)) {
            auto p1 = chain_down(cg, tv, pv, zv, VertexSet(n));
            if (!p1) break;
            VertexSet used(n);
            for (int x : *p1) used.set(x);
            auto p2 = chain_down(cg, tw, pw, zw, used);
            if (!p2) continue;
            std::vector<int> path = *p1;
            for (size_t j = p2->size(); j-- > 0;) path.push_back((*p2)[j]);
            return path;
        }
    }
    return std::nullopt;
}

std::vector<Cycle> cover_auxiliary_subgraph(const CascadeGraph& h, const VertexSet& q,
                                            long long budget) {
    (void)budget;  // overruns are the caller's diagnostic, not an error here
    std::vector<int> qverts;
    {
        VertexSet l0 = VertexSet::of(q.universe(), h.verts);
        if (!l0.contains(q))
            throw std::invalid_argument("cover_auxiliary_subgraph: q outside the auxiliary graph");
    }
    std::vector<int> index_of(static_cast<size_t>(q.universe()), -1);
    for (size_t i = 0; i < h.verts.size(); ++i) index_of[static_cast<size_t>(h.verts[i])] = static_cast<int>(i);
    for (int v = q.first(); v >= 0; v = q.next(v)) qverts.push_back(v);

    const int nq = static_cast<int>(qverts.size());
    std::vector<Cycle> out;
    if (nq == 0) return out;

    const int r = h.graph.colors();
    ColoredGraph sub(nq, r);
    for (int a = 0; a < nq; ++a)
        for (int b = a + 1; b < nq; ++b) {
            int ia = index_of[static_cast<size_t>(qverts[static_cast<size_t>(a)])];
            int ib = index_of[static_cast<size_t>(qverts[static_cast<size_t>(b)])];
            int c = h.graph.color_of(ia, ib);
            if (c > 0) sub.add_edge(a, b, c);
        }

    auto emit = [&out, &qverts](int color, const std::vector<int>& sub_cycle) {
        std::vector<int> orig;
        orig.reserve(sub_cycle.size());
        for (int s : sub_cycle) orig.push_back(qverts[static_cast<size_t>(s)]);
        if (orig.size() == 1)
            out.push_back(Cycle::single(orig[0]));
        else
            out.push_back(Cycle::of(color, orig));
    };

    if (nq <= 10) {
        OracleCover oc = min_mono_cycle_cover_exact(sub, true);
        for (const Cycle& c : oc.cycles) emit(c.color, c.vertices);
        return out;
    }

    VertexSet remaining = VertexSet::full(nq);
    while (remaining.count() > 0) {
        std::vector<int> best;
        int best_color = 0;
        for (int c = 1; c <= r; ++c) {
            const Graph& layer = sub.layer(c);
            for (int s = remaining.first(); s >= 0; s = remaining.next(s)) {
                std::vector<int> path{s};
                VertexSet used(nq);
                used.set(s);
                int cur = s;
                for (;;) {
                    VertexSet cand = layer.neighbors(cur) & remaining;
                    cand -= used;
                    int nxt = cand.first();
                    if (nxt < 0) break;
                    path.push_back(nxt);
                    used.set(nxt);
                    cur = nxt;
                }
                for (size_t j = path.size(); j-- > 1;) {
                    if (layer.adjacent(path[j], path[0])) {
                        if (j + 1 > best.size()) {
                            best.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j + 1));
                            best_color = c;
                        }
                        break;
                    }
                }
            }
        }
        if (best.size() < 2) break;
        emit(best_color, best);
        for (int s : best) remaining.reset(s);
    }
    for (int s = remaining.first(); s >= 0; s = remaining.next(s)) emit(0, {s});
    return out;
}

CycleLift lift_cycle_via_disjoint_paths(const ColoredGraph& cg, const std::vector<int>& aux_cycle,
                                        int color, const std::vector<Cascade>& payloads,
                                        const VertexSet& reserved, long long node_budget,
                                        double c_frac) {
    const int n = cg.vertex_count();
    const size_t len = aux_cycle.size();
    if (len < 2)
        throw std::invalid_argument("lift_cycle_via_disjoint_paths: a single vertex or edge is not a cycle");
    if (payloads.size() != len)
        throw std::invalid_argument("lift_cycle_via_disjoint_paths: one payload per cycle edge required");
    if (reserved.universe() != n)
        throw std::invalid_argument("lift_cycle_via_disjoint_paths: universe mismatch");
    {
        std::set<int> uniq(aux_cycle.begin(), aux_cycle.end());
        if (uniq.size() != len)
            throw std::invalid_argument("lift_cycle_via_disjoint_paths: repeated cycle vertex");
    }
    std::vector<bool> forward(len);
    for (size_t j = 0; j < len; ++j) {
        int a = aux_cycle[j];
        int b = aux_cycle[(j + 1) % len];
        const Cascade& c = payloads[j];
        if (c.color != color)
            throw std::invalid_argument("lift_cycle_via_disjoint_paths: payload color mismatch");
        if (c.v == a && c.w == b)
            forward[j] = true;
        else if (c.v == b && c.w == a)
            forward[j] = false;
        else
            throw std::invalid_argument("lift_cycle_via_disjoint_paths: payload does not match its edge");
    }

    auto level_room = [&](const Cascade& c, const VertexSet& y) {
        for (const Tower* tw : {&c.tower_v, &c.tower_w})
            for (size_t j = 1; j < tw->sets.size(); ++j) {
                const VertexSet& sk = tw->sets[j];
                if (static_cast<double>(intersection_size(sk, y)) >
                    c_frac * static_cast<double>(sk.count()))
                    return false;
            }
        return y.test(c.v) == false && y.test(c.w) == false;
    };
    // Only vertices inside the towers' level sets can block an edge; the
    // robust-path search never consults anything else.
    auto conflict_zone = [&](const Cascade& c) {
        VertexSet zone(n);
        for (const Tower* tw : {&c.tower_v, &c.tower_w})
            for (size_t k = 1; k < tw->sets.size(); ++k) zone |= tw->sets[k];
        return zone;
    };

    CycleLift out;
    std::vector<std::vector<int>> interior(len);
    std::vector<VertexSet> banned(len, VertexSet(n));
    // Conflict-directed backjumping: each edge remembers which earlier edges
    // contributed to its failures, and a jump merges that blame backwards.
    std::vector<std::set<int>> confl(len);
    VertexSet used = reserved;
    size_t j = 0;
    while (j < len) {
        if (++out.nodes > node_budget) {
            out.stuck_edge = static_cast<int>(j);
            return out;
        }
        VertexSet y = used | banned[j];
        std::optional<std::vector<int>> path;
        if (level_room(payloads[j], y)) path = find_robust_path(cg, payloads[j], y, c_frac);
        if (path) {
            std::vector<int> inner(path->begin() + 1, path->end() - 1);
            if (!forward[j]) std::reverse(inner.begin(), inner.end());
            interior[j] = inner;
            for (int x : inner) used.set(x);
            ++j;
            continue;
        }
        // Only interiors inside this edge's tower sets can be the cause; the
        // robust-path search never consults anything else.
        VertexSet zone = conflict_zone(payloads[j]);
        for (size_t j2 = 0; j2 < j; ++j2)
            for (int x : interior[j2])
                if (zone.test(x)) {
                    confl[j].insert(static_cast<int>(j2));
                    break;
                }
        if (confl[j].empty()) {
            out.stuck_edge = static_cast<int>(j);
            return out;
        }
        const size_t back = static_cast<size_t>(*confl[j].rbegin());
        for (int c : confl[j])
            if (static_cast<size_t>(c) != back) confl[back].insert(c);
        for (int x : interior[back]) banned[back].set(x);
        for (size_t j2 = back; j2 < j; ++j2) {
            for (int x : interior[j2]) used.reset(x);
            interior[j2].clear();
        }
        for (size_t j2 = back + 1; j2 < len; ++j2) {
            banned[j2] = VertexSet(n);
            confl[j2].clear();
        }
        j = back;
    }

    std::vector<int> verts;
    for (size_t e = 0; e < len; ++e) {
        verts.push_back(aux_cycle[e]);
        verts.insert(verts.end(), interior[e].begin(), interior[e].end());
    }
    out.ok = true;
    out.cycle = Cycle::of(color, verts);
    return out;
}

Cover cover_small_set(const ColoredGraph& cg, const LevelPartition& levels, const VertexSet& q,
                      const CascadeParams& params, long long sample_budget, uint64_t seed,
                      CascadeDiagnostics* diag) {
    const int n = cg.vertex_count();
    if (q.universe() != n) throw std::invalid_argument("cover_small_set: universe mismatch");
    if (!levels.level(0).contains(q))
        throw std::invalid_argument("cover_small_set: q must live in L_0");

    CascadeDiagnostics local;
    CascadeDiagnostics& d = diag ? *diag : local;
    d = CascadeDiagnostics{};
    d.cycle_budget = 400.0 * std::pow(params.r, 4) * std::log(4.0 * params.r * params.r);

    Cover cover;
    cover.target = q;
    cover.uncovered = VertexSet(n);
    cover.disjoint = true;
    if (q.count() == 0) return cover;

    CascadeGraph h = build_cascade_graph(cg, levels, params, sample_budget, seed, &q);
    d.samples = h.samples;
    d.infeasible_samples = h.infeasible_samples;
    d.c1_edges = h.c1_edges;
    d.c2_edges = h.c2_edges;

    // Measured per-level overlap between payload tower sets.
    {
        std::vector<std::vector<const VertexSet*>> at_level(static_cast<size_t>(params.m + 1));
        for (const auto& kv : h.payloads)
            for (const Tower* tw : {&kv.second.tower_v, &kv.second.tower_w})
                for (int k = tw->s; k <= tw->f; ++k)
                    at_level[static_cast<size_t>(k)].push_back(
                        &tw->sets[static_cast<size_t>(k - (tw->s - 1))]);
        for (int k = 1; k <= params.m; ++k) {
            const auto& sets = at_level[static_cast<size_t>(k)];
            if (sets.size() < 2) {
                d.level_overlap.push_back(0.0);
                continue;
            }
            double acc = 0;
            for (size_t a = 0; a < sets.size(); ++a) {
                VertexSet others(n);
                for (size_t b = 0; b < sets.size(); ++b)
                    if (b != a) others |= *sets[b];
                acc += static_cast<double>(intersection_size(*sets[a], others)) /
                       static_cast<double>(sets[a]->count());
            }
            d.level_overlap.push_back(acc / static_cast<double>(sets.size()));
        }
    }

    std::vector<Cycle> aux =
        cover_auxiliary_subgraph(h, q, static_cast<long long>(std::ceil(d.cycle_budget)));
    d.aux_cycles = static_cast<int>(aux.size());

    VertexSet reserved(n);
    for (const Cycle& ac : aux) {
        if (ac.vertices.size() < 2) {
            cover.cycles.push_back(ac);
            continue;
        }
        std::vector<Cascade> payloads;
        bool have_all = true;
        for (size_t j = 0; j < ac.vertices.size(); ++j) {
            int a = ac.vertices[j];
            int b = ac.vertices[(j + 1) % ac.vertices.size()];
            auto it = h.payloads.find({std::min(a, b), std::max(a, b)});
            if (it == h.payloads.end() || it->second.color != ac.color) {
                have_all = false;
                break;
            }
            payloads.push_back(it->second);
        }
        CycleLift lift;
        if (have_all)
            lift = lift_cycle_via_disjoint_paths(cg, ac.vertices, ac.color, payloads, reserved);
        if (have_all && lift.ok) {
            ++d.lifted_ok;
            for (int x : lift.cycle.vertices)
                if (!levels.level(0).test(x)) reserved.set(x);
            cover.cycles.push_back(lift.cycle);
        } else {
            ++d.lifted_failed;
            for (int x : ac.vertices) cover.cycles.push_back(Cycle::single(x));
        }
    }

    VertexSet covered(n);
    for (const Cycle& c : cover.cycles)
        for (int x : c.vertices) covered.set(x);
    covered &= q;
    cover.uncovered = q - covered;
    return cover;
}

}  // namespace mcc
