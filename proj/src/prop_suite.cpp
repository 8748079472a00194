#include "mcc/prop_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mcc/rng.hpp"

namespace mcc {

namespace {

void validate(const PropCheckConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("PropCheckConfig: trials < 1");
    auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
    if (!in_unit(cfg.confidence) || !in_unit(cfg.alpha) || !in_unit(cfg.beta) ||
        !in_unit(cfg.eps_tilde))
        throw std::invalid_argument("PropCheckConfig: thresholds must lie in (0,1)");
}

void validate_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("prop check: p outside (0,1]");
}

// Vertices ordered by degree, ties by id. Tilted samples draw from the
// extremes of this order; uniform sampling alone rarely touches the tails
// the estimates are about.
std::vector<int> degree_order(const Graph& g, bool ascending) {
    std::vector<int> order(size_t(g.vertex_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        return ascending ? da < db : da > db;
    });
    return order;
}

enum class Style { uniform, low, high };

// k distinct vertices: uniform over all of [n), or uniform inside a pool of
// the 2k most extreme degrees. The pool keeps tilted samples varied instead
// of repeating one fixed worst set.
std::vector<int> draw(Rng& rng, Style style, int k, int n, const std::vector<int>& asc,
                      const std::vector<int>& desc) {
    if (style == Style::uniform) return rng.sample_distinct(k, n);
    const std::vector<int>& order = style == Style::low ? asc : desc;
    int pool = std::min(n, 2 * k);
    std::vector<int> idx = rng.sample_distinct(k, pool);
    std::vector<int> out(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) out[size_t(i)] = order[size_t(idx[size_t(i)])];
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

double chernoff_tail_bound(long long n, double p, double a, Tail tail) {
    if (n < 0) throw std::invalid_argument("chernoff_tail_bound: negative n");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("chernoff_tail_bound: p outside [0,1]");
    if (a <= 0.0) throw std::invalid_argument("chernoff_tail_bound: a must be positive");
    if (tail == Tail::upper && a >= 1.5)
        throw std::invalid_argument("chernoff_tail_bound: upper tail needs a < 3/2");
    double denom = tail == Tail::lower ? 2.0 : 3.0;
    return std::exp(-a * a * double(n) * p / denom);
}

DensityXYReport check_density_xy(const Graph& g, double p, const PropCheckConfig& cfg) {
    validate(cfg);
    validate_p(p);
    const int n = g.vertex_count();
    const double logn = n >= 2 ? std::log(double(n)) : 0.0;
    const std::vector<int> asc = degree_order(g, true);
    const std::vector<int> desc = degree_order(g, false);

    // Sizes follow the analytic floors until the graph runs out of room,
    // then cap and say so; only an empty side makes a regime infeasible.
    auto run = [&](const char* regime, long long want_x, long long want_y, long long cap_x,
                   long long cap_y, uint64_t stream) {
        RegimeStats st;
        st.check = "density_xy";
        st.regime = regime;
        long long sx = std::min(want_x, cap_x);
        long long sy = std::min(want_y, cap_y);
        st.capped = sx < want_x || sy < want_y;
        std::ostringstream ps;
        ps << "alpha=" << fmt(cfg.alpha) << " beta=" << fmt(cfg.beta) << " sx=" << sx
           << " sy=" << sy << " floor_x=" << want_x << " floor_y=" << want_y;
        if (sx < 1 || sy < 1) {
            st.feasible = false;
            st.params = ps.str() + " infeasible";
            return st;
        }
        st.params = ps.str() + (st.capped ? " capped" : "");
        Rng base = Rng(cfg.seed).substream(stream);
        for (int i = 0; i < cfg.trials; ++i) {
            Rng rng = base.substream(uint64_t(i));
            Style style = i % 3 == 0 ? Style::uniform : (i % 3 == 1 ? Style::low : Style::high);
            std::vector<int> both = draw(rng, style, int(sx + sy), n, asc, desc);
            VertexSet x(n), y(n);
            for (long long j = 0; j < sx; ++j) x.set(both[size_t(j)]);
            for (long long j = sx; j < sx + sy; ++j) y.set(both[size_t(j)]);
            double mid = double(sx) * double(sy) * p;
            double e = double(edge_count_between(g, x, y));
            if (e < (1.0 - cfg.alpha) * mid || e > (1.0 + cfg.alpha) * mid) ++st.violations;
            ++st.samples;
        }
        return st;
    };

    DensityXYReport rep;
    long long floor1 = std::llround(std::ceil(cfg.big_d() * logn / p));
    rep.case1 = run("case1", std::max(floor1, 1LL), std::max(floor1, 1LL), n / 2, n / 2, 1);
    long long floor_x2 = std::llround(std::ceil(cfg.big_c() / p));
    long long floor_y2 = std::max(std::llround(std::ceil(cfg.beta * n)), 1LL);
    long long sy2 = std::min(floor_y2, (long long)n - 1);
    rep.case2 = run("case2", std::max(floor_x2, 1LL), floor_y2, n - sy2, n - 1, 2);
    return rep;
}

DensityTriplesReport check_density_triples(const Graph& g, double p, const PropCheckConfig& cfg) {
    validate(cfg);
    validate_p(p);
    const int n = g.vertex_count();
    const double logn = n >= 2 ? std::log(double(n)) : 0.0;
    const std::vector<int> asc = degree_order(g, true);
    const std::vector<int> desc = degree_order(g, false);

    DensityTriplesReport rep;
    uint64_t stream = 0;
    for (long long ell : cfg.ell_values) {
        ++stream;
        RegimeStats st;
        st.check = "density_triples";
        bool small = double(ell) <= 6.0 * logn / (p * p);
        st.regime = small ? "small_ell" : "large_ell";
        double bound = small ? 72.0 * double(ell) * logn : 2.0 * double(ell) * (3.0 * double(ell)) * p * p;
        std::ostringstream ps;
        ps << "ell=" << ell << " bound=" << fmt(bound);
        if (ell < 1 || 5 * ell > n) {
            st.feasible = false;
            st.params = ps.str() + " infeasible";
            rep.rows.push_back(st);
            continue;
        }
        st.params = ps.str();
        Rng base = Rng(cfg.seed).substream(100 + stream);
        for (int i = 0; i < cfg.trials; ++i) {
            Rng rng = base.substream(uint64_t(i));
            // The bound is one-sided from above, so the tilt that matters
            // pushes toward high degrees.
            Style style = i % 2 == 0 ? Style::uniform : Style::high;
            std::vector<int> ids = draw(rng, style, int(5 * ell), n, asc, desc);
            VertexSet y(n);
            for (long long j = 2 * ell; j < 5 * ell; ++j) y.set(ids[size_t(j)]);
            long long q = 0;
            for (long long j = 0; j < 2 * ell; j += 2) {
                VertexSet common = g.neighbors(ids[size_t(j)]) & g.neighbors(ids[size_t(j + 1)]);
                q += (common & y).count();
            }
            if (double(q) > bound) ++st.violations;
            ++st.samples;
        }
        rep.rows.push_back(st);
    }
    return rep;
}

TuplesExpandReport check_tuples_expand(const Graph& g, double p, int r,
                                       const PropCheckConfig& cfg) {
    validate(cfg);
    validate_p(p);
    if (r < 1) throw std::invalid_argument("check_tuples_expand: r < 1");
    const int n = g.vertex_count();
    const double logn = n >= 2 ? std::log(double(n)) : 0.0;
    const double pr = std::pow(p, double(r));

    RegimeStats st;
    st.check = "tuples_expand";
    st.regime = "union_window";

    long long floor_l = std::llround(std::ceil(50.0 * double(r) * logn / (cfg.eps_tilde * pr)));
    floor_l = std::max(floor_l, 1LL);
    long long lsize = std::min(floor_l, (long long)n / 2);
    st.capped = lsize < floor_l;
    long long t_cap = std::max(1LL, (long long)std::floor(cfg.eps_tilde / p));
    if (lsize >= 1) t_cap = std::min(t_cap, (long long)(n - lsize) / std::max(r, 1));

    std::ostringstream ps;
    ps << "r=" << r << " eps_tilde=" << fmt(cfg.eps_tilde) << " lsize=" << lsize
       << " floor_l=" << floor_l << " t_cap=" << t_cap;
    if (lsize < 1 || t_cap < 1) {
        st.feasible = false;
        st.params = ps.str() + " infeasible";
        return {st};
    }
    st.params = ps.str() + (st.capped ? " capped" : "");

    Rng base = Rng(cfg.seed).substream(1000);
    Rng lrng = base.substream(0);
    VertexSet lset = VertexSet::of(n, lrng.sample_distinct(int(lsize), n));
    std::vector<int> outside;
    outside.reserve(size_t(n - lsize));
    for (int v = 0; v < n; ++v)
        if (!lset.test(v)) outside.push_back(v);

    // Degree order restricted to the complement of L.
    auto by_degree = [&](bool ascending) {
        std::vector<int> o = outside;
        std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
            int da = g.degree(a), db = g.degree(b);
            return ascending ? da < db : da > db;
        });
        return o;
    };
    const std::vector<int> asc = by_degree(true);
    const std::vector<int> desc = by_degree(false);

    const double root = std::sqrt(cfg.eps_tilde);
    for (int i = 0; i < cfg.trials; ++i) {
        Rng rng = base.substream(uint64_t(i) + 1);
        long long t = 1 + (long long)rng.below(uint64_t(t_cap));
        Style style = i % 3 == 0 ? Style::uniform : (i % 3 == 1 ? Style::low : Style::high);
        // Disjoint r-chunks, so the t sets are distinct for free.
        std::vector<int> ids = draw(rng, style, int(t * r), int(outside.size()), asc, desc);
        if (style == Style::uniform)
            for (int& v : ids) v = outside[size_t(v)];
        VertexSet got(n);
        for (long long j = 0; j < t; ++j) {
            VertexSet xs(n);
            for (int k = 0; k < r; ++k) xs.set(ids[size_t(j * r + k)]);
            got |= common_neighborhood(g, xs, lset);
        }
        double mid = double(t) * double(lsize) * pr;
        double u = double(got.count());
        if (u < (1.0 - root) * mid || u > (1.0 + root) * mid) ++st.violations;
        ++st.samples;
    }
    return {st};
}

std::vector<RegimeStats> run_prop_suite(const Graph& g, double p, int r,
                                        const PropCheckConfig& cfg) {
    std::vector<RegimeStats> rows;
    DensityXYReport xy = check_density_xy(g, p, cfg);
    rows.push_back(xy.case1);
    rows.push_back(xy.case2);
    for (RegimeStats& row : check_density_triples(g, p, cfg).rows) rows.push_back(std::move(row));
    rows.push_back(check_tuples_expand(g, p, r, cfg).stats);
    return rows;
}

std::string prop_rows_to_csv(const std::vector<RegimeStats>& rows) {
    std::ostringstream os;
    os << "check,regime,parameters,samples,violations\n";
    for (const RegimeStats& row : rows)
        os << row.check << ',' << row.regime << ',' << row.params << ',' << row.samples << ','
           << row.violations << '\n';
    return os.str();
}

}  // namespace mcc
