#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mcc/graph.hpp"

namespace mcc {

// levels[0] is the target set W; levels[1..t] split the rest of the graph
// into near-equal parts.
struct LevelPartition {
    std::vector<VertexSet> levels;
    double eps = 0;
    int t = 0;

    const VertexSet& level(int k) const;
};

LevelPartition build_levels(const VertexSet& w, double eps, uint64_t seed);

struct CascadeParams {
    int r = 0;
    double p = 0;
    double eps = 0;
    int q = 0;          // eps = 1/(q*r) up to rounding
    long long mu = 0;   // tower growth factor
    int m = 0;          // top tower level
    bool mu_floored = false;   // raw mu fell below 1
    bool q_degenerate = false; // r divides q-1, no integer m fits strictly
    double mu_raw = 0;
};

// mu = floor(level_size * p^r / (2 r^r)), m the integer strictly between
// (q-1)/r and its neighbors. strict refuses the desk-scale fixups
// (flooring mu, rounding m) instead of flagging them.
CascadeParams compute_params(int n, double p, int r, double eps, int level_size,
                             bool strict = false);

// Monochromatic reachability structure: from base, every vertex of sets[k]
// is reachable by a color-colored path climbing one level at a time.
// sets[0] = S_{s-1}, sets.back() = S_f; witness[j] certifies level s+j.
struct Tower {
    int color = 0;
    int base = -1;
    int s = 1;
    int f = 1;
    std::vector<VertexSet> sets;
    std::vector<VertexSet> witness;
};

enum class TowerCheck { ok, t1, t2, t3, t4 };

// First failing tower condition, literally evaluated. Malformed shapes
// (wrong vector lengths, witness size != r-1) throw.
TowerCheck check_tower(const ColoredGraph& cg, const LevelPartition& levels,
                       const CascadeParams& params, const Tower& tw);

enum class CascadeMode { C1, C2 };

struct Cascade {
    int color = 0;
    int v = -1;
    int w = -1;
    Tower tower_v;
    Tower tower_w;
    CascadeMode mode = CascadeMode::C1;
    bool vacuous_c2 = false;  // no cross edges at all between the difference sets
};

// C1 when the towers share their top set; C2 when both reach level m and
// color-i edges carry at least a 1/r share between the top difference
// sets. Towers must agree on color and top level.
std::optional<Cascade> cascade_between(const ColoredGraph& cg, const CascadeParams& params,
                                       const Tower& tower_v, const Tower& tower_w);

struct TowersOrCascade {
    enum class Kind { cascade, towers, infeasible };
    Kind kind = Kind::infeasible;
    Cascade cascade;             // kind == cascade
    std::vector<Tower> towers;   // kind == towers: one per color, shared top
    int failed_level = 0;        // kind == infeasible
    long long z_size = 0;
    long long largest_bucket = 0;
};

// Level-by-level growth from a (2r-1)-set of base vertices: bucket the
// common neighborhood by color pattern, largest bucket first (lex-least on
// ties). A repeated color in the pattern short-circuits into a C1 cascade;
// otherwise all r towers extend and share each level's chosen set.
TowersOrCascade towers_or_cascade(const ColoredGraph& cg, const LevelPartition& levels,
                                  const CascadeParams& params, const VertexSet& xhat);

struct CascadeGraph {
    std::vector<int> verts;  // members of L_0, ascending; graph indices
    ColoredGraph graph;
    std::map<std::pair<int, int>, Cascade> payloads;  // key: original ids, min first
    long long samples = 0;
    long long infeasible_samples = 0;
    long long c1_edges = 0;
    long long c2_edges = 0;
    long long duplicate_edges = 0;
    bool budget_exhausted = false;
};

// Seeded sampling of Xhat sets (each containing a focus vertex when focus
// is nonempty), one edge per vertex pair kept. Full tower families are
// also paired across samples for C2 edges.
CascadeGraph build_cascade_graph(const ColoredGraph& cg, const LevelPartition& levels,
                                 const CascadeParams& params, long long sample_budget,
                                 uint64_t seed, const VertexSet* focus = nullptr);

// Greedy independent set in the collision graph of witness-set unions;
// towers must share s and f and have distinct bases. Max collision degree
// r-1 makes the greedy pick at least t/r towers.
std::vector<int> select_independent_towers(const std::vector<Tower>& towers);

// Level-wise bad-set propagation: Y-avoiding color-i path between the
// cascade endpoints of length at most 2f+1. Y may take at most a c_frac
// share of every tower level (argument error otherwise).
std::optional<std::vector<int>> find_robust_path(const ColoredGraph& cg, const Cascade& cascade,
                                                 const VertexSet& y, double c_frac);

// Vertex-disjoint monochromatic cycles (degenerate allowed) covering q
// inside the auxiliary graph, original vertex ids. Small q is solved
// exactly, larger q by a greedy longest-cycle heuristic. Exceeding the
// budget is reported by the caller, never fatal.
std::vector<Cycle> cover_auxiliary_subgraph(const CascadeGraph& h, const VertexSet& q,
                                            long long budget);

struct CycleLift {
    bool ok = false;
    Cycle cycle;
    int stuck_edge = -1;
    long long nodes = 0;
};

// One interior path per auxiliary edge, pairwise disjoint and disjoint
// from reserved, found by backtracking over robust-path candidates.
// payloads[j] must realize the edge cycle[j]..cycle[j+1] in this color.
CycleLift lift_cycle_via_disjoint_paths(const ColoredGraph& cg, const std::vector<int>& aux_cycle,
                                        int color, const std::vector<Cascade>& payloads,
                                        const VertexSet& reserved, long long node_budget = 10000,
                                        double c_frac = 0.5);

struct CascadeDiagnostics {
    long long samples = 0;
    long long infeasible_samples = 0;
    long long c1_edges = 0;
    long long c2_edges = 0;
    int aux_cycles = 0;
    int lifted_ok = 0;
    int lifted_failed = 0;
    double cycle_budget = 0;  // reference bound 400 r^4 log(4 r^2)
    std::vector<double> level_overlap;
};

// Residual cover: Q-focused cascade graph, auxiliary cover, lifting.
// Vertices of cycles that fail to lift fall back to degenerate cycles, so
// the result always covers q.
Cover cover_small_set(const ColoredGraph& cg, const LevelPartition& levels, const VertexSet& q,
                      const CascadeParams& params, long long sample_budget, uint64_t seed,
                      CascadeDiagnostics* diag = nullptr);

}  // namespace mcc
