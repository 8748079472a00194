#pragma once

#include <cstdint>
#include <string>

#include "mcc/graph.hpp"
#include "mcc/rng.hpp"

namespace mcc {

struct GnpParams {
    int n = 0;
    double p = 0.0;
    uint64_t seed = 0;
};

// Erdos-Renyi sample. Sparse p uses geometric skipping over the ranked pair
// space, so generation is O(|E|) rather than O(n^2).
Graph sample_gnp(const GnpParams& params);

// Each edge gets an independent uniform color from 1..r.
ColoredGraph color_uniform(const Graph& g, int r, uint64_t seed);

// Greedy independent set X such that every vertex outside X has at most
// r-1 neighbors inside X; several seeded passes, largest result kept.
VertexSet find_sparse_independent_set(const Graph& g, int r, uint64_t seed, int retries = 8);

// Lower-bound coloring: edges outside X get color r; the edges from each
// v outside X into X get distinct colors 1..r-1, assigned in neighbor-id
// order. Requires X independent and every outside vertex to have at most
// r-1 neighbors in X.
ColoredGraph color_adversarial_bal_debiasio(const Graph& g, int r, const VertexSet& x);

// True when every monochromatic component contains at most one vertex of X;
// the structural fact that forces covers of size >= |X|.
bool mono_components_meet_once(const ColoredGraph& g, const VertexSet& x);

struct ColoringSpec {
    enum class Mode { uniform, bal_debiasio, from_file };
    Mode mode = Mode::uniform;
    int r = 2;
    uint64_t seed = 0;
    std::string path;  // from_file only
};

}  // namespace mcc
