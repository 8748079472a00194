#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcc/graph.hpp"

namespace mcc {

// Parameters of the multipartite hole: k parts of size m.
struct HoleParams {
    int k = 2;
    int m = 1;
};

struct DfsState {
    VertexSet discarded;  // D
    std::vector<int> path;  // P, last element is the active endpoint
    VertexSet unexplored;  // U
};

// Four-rule DFS automaton (restart / explore / back-track / terminate) with
// lowest-id tie-breaking, run until |D| = m. Throughout, e(D,U) = 0 and
// D, V(P), U partition V. Pass `trace` to record the state after every step.
DfsState dfs_decompose(const Graph& g, int m, std::vector<std::string>* trace = nullptr);

// Given a Hamiltonian path of g, produce <= k-1 vertex-disjoint proper
// cycles covering all but <= k*m vertices (guaranteed when the complement
// of g is K_k^m-free). Recursive first-m / last-m construction.
std::vector<Cycle> cover_from_hamiltonian_path(const Graph& g, const std::vector<int>& path,
                                               HoleParams hp);

struct TwoDisjointEdges {
    int i, j;                 // set indices
    std::array<int, 2> e1;    // {a1 in sets[i], b1 in sets[j]}
    std::array<int, 2> e2;    // {a2 in sets[i], b2 in sets[j]}
};

// Peeling + pigeonhole: repeatedly remove single cross edges while every
// set keeps >= m vertices; the first set to drop to m-1 has had k edges
// removed, two of which go to the same partner set and are vertex-disjoint
// by construction. none only when peeling runs out of cross edges (the
// K_k^m-free precondition failed).
std::optional<TwoDisjointEdges> find_two_disjoint_edges(const Graph& g,
                                                        const std::vector<VertexSet>& sets,
                                                        HoleParams hp);

// Full cover of the Lemma: DFS decomposition per k-level, Hamiltonian-path
// covering of each G[V(P)], then the merging loop (drop short cycles, merge
// long ones through two disjoint segment edges) down to <= k-1 cycles.
// The cycle-count cap is unconditional; the uncovered bound 2k^2m + k^3
// holds when the complement of g is K_k^m-free.
Cover gendfs_cover(const Graph& g, HoleParams hp);

}  // namespace mcc
