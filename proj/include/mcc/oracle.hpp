#pragma once

#include <vector>

#include "mcc/graph.hpp"

namespace mcc {

struct OracleCover {
    std::vector<Cycle> cycles;
};

// Minimum number of monochromatic cycles (single vertices and edges count
// as degenerate cycles) covering every vertex. Overlap between cycles is
// allowed unless disjoint_mode. Exhaustive; n <= 12 enforced.
OracleCover min_mono_cycle_cover_exact(const ColoredGraph& g, bool disjoint_mode = false);

// Whether the complement of g contains no complete k-partite subgraph with
// parts of size m (cross-part non-edges of g, any adjacency inside parts).
bool is_complement_Kkm_free(const Graph& g, int k, int m);

struct HypergraphFamily {
    int ground_size = 0;  // vertices 0..ground_size-1
    int arity = 0;        // every hyperedge has exactly this many vertices
    std::vector<std::vector<std::vector<int>>> members;
};

// For every nonempty subset I' of the families, the union of their edge
// sets must have vertex-cover number greater than (2a-1)(|I'|-1).
// Exhaustive; caps: families <= 12, ground <= 20.
bool haxell_condition_check(const HypergraphFamily& fam);

enum class SearchStatus { found, none, budget_exhausted };

struct DisjointSystem {
    SearchStatus status = SearchStatus::none;
    std::vector<std::vector<int>> picks;  // one hyperedge per family when found
};

// One hyperedge per family, pairwise vertex-disjoint. Backtracking with a
// node budget; an exhausted search is reported as budget_exhausted, which
// is distinct from a completed search proving none exists.
DisjointSystem find_disjoint_hyperedge_system(const HypergraphFamily& fam,
                                              long long node_budget = 2000000);

}  // namespace mcc
