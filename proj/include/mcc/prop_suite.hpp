#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcc/graph.hpp"

namespace mcc {

enum class Tail { lower, upper };

// Closed-form binomial tail bounds for Bin(n, p):
//   lower: Pr[X < (1-a)np] < e^{-a^2 np/2}, any a > 0
//   upper: Pr[X > (1+a)np] < e^{-a^2 np/3}, 0 < a < 3/2
// Throws std::invalid_argument outside those ranges.
double chernoff_tail_bound(long long n, double p, double a, Tail tail);

// Knobs for the statistical spot checks below. The density and expansion
// estimates only kick in above size floors that scale like log n / p^k;
// at bench sizes those floors usually exceed n, so the samplers cap the
// set sizes at what fits and flag the row instead of refusing to run.
struct PropCheckConfig {
    int trials = 500;
    double confidence = 0.05;  // tolerated failure rate, reporting only
    double alpha = 0.25;       // density window half-width
    double beta = 0.25;        // fractional floor for the second regime
    double eps_tilde = 0.25;   // expansion slack
    std::vector<long long> ell_values = {10, 10000};
    uint64_t seed = 0;

    double big_c() const { return 6.0 / (alpha * alpha * beta); }
    double big_d() const { return 9.0 / (alpha * alpha); }
};

// One regime of one check: how many sampled set systems broke the bound.
struct RegimeStats {
    std::string check;   // "density_xy", "density_triples", "tuples_expand"
    std::string regime;
    std::string params;  // rendered sizes, floors, cap markers
    long long samples = 0;
    long long violations = 0;
    bool feasible = true;  // false: no valid sample fits in the graph
    bool capped = false;   // true: sizes shrunk below the analytic floor

    double fail_rate() const { return samples > 0 ? double(violations) / double(samples) : 0.0; }
};

// e(X,Y) in (1 +- alpha)|X||Y|p over two size regimes:
//   case 1: |X|, |Y| >= D log n / p
//   case 2: |X| >= C / p and |Y| >= beta n
struct DensityXYReport {
    RegimeStats case1;
    RegimeStats case2;

    double fail_rate_case1() const { return case1.fail_rate(); }
    double fail_rate_case2() const { return case2.fail_rate(); }
};
DensityXYReport check_density_xy(const Graph& g, double p, const PropCheckConfig& cfg);

// For ell disjoint pairs and a disjoint 3*ell-set Y,
//   sum |N(v,Y) cap N(w,Y)| <= 72 ell log n   when ell <= 6 log n / p^2,
//                           <= 2 ell |Y| p^2  otherwise.
// One row per requested ell.
struct DensityTriplesReport {
    std::vector<RegimeStats> rows;
};
DensityTriplesReport check_density_triples(const Graph& g, double p, const PropCheckConfig& cfg);

// For t <= eps_tilde/p distinct r-sets outside a fixed L,
//   |union N*(X_i, L)| in (1 +- sqrt(eps_tilde)) t |L| p^r.
// L wants at least 50 r log n / (eps_tilde p^r) vertices; below that the
// row is marked capped.
struct TuplesExpandReport {
    RegimeStats stats;
};
TuplesExpandReport check_tuples_expand(const Graph& g, double p, int r, const PropCheckConfig& cfg);

// All rows from the three checks, in a fixed order.
std::vector<RegimeStats> run_prop_suite(const Graph& g, double p, int r,
                                        const PropCheckConfig& cfg);

// Header plus one line per row: check,regime,parameters,samples,violations.
std::string prop_rows_to_csv(const std::vector<RegimeStats>& rows);

}  // namespace mcc
