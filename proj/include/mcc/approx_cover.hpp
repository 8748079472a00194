#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mcc/graph.hpp"

namespace mcc {

// Constants of the approximate covering stage. defaults() fills the
// standard values; every field must end up positive.
struct ApproxParams {
    int r = 0;                  // colors
    double p = 0;               // edge density the graph was sampled at
    int hole_c = 0;             // peeling constant, standard 384r
    double aux_threshold = 0;   // auxiliary-edge cut, standard n*p^2/(50r)^4
    int budget_k = 0;           // per-color hole parameter, standard 3r
    double K_leftover = 0;      // leftover constant, standard (20r)^4
    int hole_m = 0;             // per-color hole size; 0 derives it from hole_c/p

    static ApproxParams defaults(int n, double p, int r);
};

// W_i = vertices of W whose most common color toward U = V \ W is i;
// ties and isolated vertices go to the lowest color.
std::vector<VertexSet> majority_color_partition(const ColoredGraph& cg, const VertexSet& w);

// Auxiliary graph on a subset of original vertices; graph indices are
// positions in verts.
struct AuxGraph {
    Graph graph;
    std::vector<int> verts;
};

// Edge between v,w of W_i iff their color-i common neighborhood inside U
// has size >= threshold (inclusive).
AuxGraph build_auxiliary_graph_Hi(const ColoredGraph& cg, const VertexSet& w_i,
                                  const VertexSet& u, int color, double threshold);

struct AuxEdgeRef {
    int color = 0;
    std::array<int, 2> ends{};  // original vertex ids
};

struct LiftOutcome {
    bool saturated = false;
    std::vector<Cycle> cycles;             // lifted cycles when saturated
    std::vector<AuxEdgeRef> hall_witness;  // aux edges with too-small joint neighborhood
    int matching_size = 0;
};

// Replaces every auxiliary edge vw by a path v,f(vw),w through a matched
// vertex f(vw) of U with vf, fw both of the cycle's color. One maximum
// matching over the combined edge multiset of all colors; two-vertex
// auxiliary cycles contribute their edge twice. Fails with a Hall witness
// when the matching cannot saturate the multiset.
LiftOutcome lift_auxiliary_cycles(
    const ColoredGraph& cg,
    const std::vector<std::pair<int, std::vector<Cycle>>>& per_color_cycles,
    const VertexSet& u);

struct ApproxDiagnostics {
    std::vector<int> part_sizes;
    std::vector<long long> aux_edge_counts;
    std::vector<int> cycles_per_color;
    std::vector<int> hole_m_used;
    std::vector<char> hole_m_capped;
    int matching_size = 0;
    int lift_retries = 0;
    int uncovered_count = 0;
};

// Majority partition, per-color auxiliary graphs, hole covering, lifting.
// At most r*(budget_k-1) vertex-disjoint monochromatic cycles; cycles
// whose lift fails degrade to uncovered vertices rather than aborting.
Cover approx_cover_small_set(const ColoredGraph& cg, const VertexSet& w,
                             const ApproxParams& params, ApproxDiagnostics* diag = nullptr);

}  // namespace mcc
