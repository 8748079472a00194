#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mcc/approx_cover.hpp"
#include "mcc/gnp.hpp"
#include "mcc/graph.hpp"

using namespace mcc;

namespace {

ColoredGraph colored_from(int n, int r, const std::vector<std::array<int, 3>>& edges) {
    ColoredGraph cg(n, r);
    for (const auto& [u, v, c] : edges) cg.add_edge(u, v, c);
    return cg;
}

}  // namespace

TEST_CASE("majority partition follows counts and breaks ties low") {
    // 0 has three color-1 edges and one color-2 edge into U.
    ColoredGraph cg = colored_from(6, 2, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 2}});
    VertexSet w = VertexSet::of(6, {0});
    auto parts = majority_color_partition(cg, w);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].test(0));
    CHECK(parts[1].count() == 0);

    // Two edges of each color: tie goes to color 1.
    ColoredGraph tie = colored_from(6, 2, {{0, 1, 1}, {0, 2, 1}, {0, 4, 2}, {0, 5, 2}});
    auto tie_parts = majority_color_partition(tie, w);
    CHECK(tie_parts[0].test(0));
    CHECK(tie_parts[1].count() == 0);

    // Isolated vertices also land in W_1.
    ColoredGraph iso(4, 3);
    auto iso_parts = majority_color_partition(iso, VertexSet::of(4, {2}));
    CHECK(iso_parts[0].test(2));

    CHECK_THROWS_AS(majority_color_partition(cg, VertexSet(5)), std::invalid_argument);
}

TEST_CASE("majority partition is a partition of W") {
    Graph g = sample_gnp({40, 0.3, 77});
    ColoredGraph cg = color_uniform(g, 3, 78);
    Rng rng(79);
    std::vector<int> pick = rng.sample_distinct(15, 40);
    VertexSet w(40);
    for (int v : pick) w.set(v);

    auto parts = majority_color_partition(cg, w);
    VertexSet seen(40);
    int total = 0;
    for (const auto& part : parts) {
        CHECK(w.contains(part));
        CHECK_FALSE(seen.intersects(part));
        seen |= part;
        total += part.count();
    }
    CHECK(total == w.count());
    CHECK(seen == w);
}

TEST_CASE("auxiliary edge threshold is inclusive") {
    // 0 and 1 share exactly one color-1 neighbor in U.
    ColoredGraph cg = colored_from(3, 1, {{0, 2, 1}, {1, 2, 1}});
    VertexSet wi = VertexSet::of(3, {0, 1});
    VertexSet u = VertexSet::of(3, {2});

    AuxGraph at1 = build_auxiliary_graph_Hi(cg, wi, u, 1, 1.0);
    REQUIRE(at1.verts == std::vector<int>{0, 1});
    CHECK(at1.graph.adjacent(0, 1));

    AuxGraph at2 = build_auxiliary_graph_Hi(cg, wi, u, 1, 2.0);
    CHECK_FALSE(at2.graph.adjacent(0, 1));

    CHECK_THROWS_AS(build_auxiliary_graph_Hi(cg, wi, wi, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_auxiliary_graph_Hi(cg, wi, u, 2, 1.0), std::invalid_argument);
}

TEST_CASE("auxiliary graph matches direct recount on a sampled instance") {
    Graph g = sample_gnp({500, 0.3, 4});
    ColoredGraph cg = color_uniform(g, 2, 5);
    VertexSet w(500);
    for (int v = 0; v < 25; ++v) w.set(v);
    VertexSet u = w.complement();
    auto parts = majority_color_partition(cg, w);

    const double threshold = 10.0;
    AuxGraph aux = build_auxiliary_graph_Hi(cg, parts[0], u, 1, threshold);

    // Recount through single adjacency queries instead of set intersections.
    const Graph& layer = cg.layer(1);
    long long brute_edges = 0;
    for (size_t a = 0; a < aux.verts.size(); ++a)
        for (size_t b = a + 1; b < aux.verts.size(); ++b) {
            int common = 0;
            for (int x = u.first(); x >= 0; x = u.next(x))
                if (layer.adjacent(aux.verts[a], x) && layer.adjacent(aux.verts[b], x)) ++common;
            bool expect = static_cast<double>(common) >= threshold;
            CHECK(aux.graph.adjacent(static_cast<int>(a), static_cast<int>(b)) == expect);
            if (expect) ++brute_edges;
        }
    CHECK(static_cast<long long>(aux.graph.edges().size()) == brute_edges);
    CHECK(brute_edges == 65);  // frozen from the recount above
}

TEST_CASE("lifting a two-vertex cycle yields a four-cycle") {
    ColoredGraph cg = colored_from(4, 1, {{0, 2, 1}, {1, 2, 1}, {0, 3, 1}, {1, 3, 1}});
    VertexSet u = VertexSet::of(4, {2, 3});
    std::vector<std::pair<int, std::vector<Cycle>>> in{{1, {Cycle::of(0, {0, 1})}}};

    LiftOutcome out = lift_auxiliary_cycles(cg, in, u);
    REQUIRE(out.saturated);
    REQUIRE(out.cycles.size() == 1);
    CHECK(out.cycles[0].vertices == std::vector<int>{0, 3, 1, 2});
    CHECK(out.cycles[0].color == 1);
    CHECK(is_valid_mono_cycle(cg, out.cycles[0]));
    CHECK(out.matching_size == 2);
}

TEST_CASE("lifting an auxiliary triangle yields a six-cycle") {
    ColoredGraph cg = colored_from(
        6, 1, {{0, 3, 1}, {1, 3, 1}, {1, 4, 1}, {2, 4, 1}, {0, 5, 1}, {2, 5, 1}});
    VertexSet u = VertexSet::of(6, {3, 4, 5});
    std::vector<std::pair<int, std::vector<Cycle>>> in{{1, {Cycle::of(0, {0, 1, 2})}}};

    LiftOutcome out = lift_auxiliary_cycles(cg, in, u);
    REQUIRE(out.saturated);
    REQUIRE(out.cycles.size() == 1);
    CHECK(out.cycles[0].vertices == std::vector<int>{0, 3, 1, 4, 2, 5});
    CHECK(is_valid_mono_cycle(cg, out.cycles[0]));
}

TEST_CASE("lift failure reports a Hall witness") {
    // Both copies of the auxiliary edge 01 compete for the single shared
    // interior vertex 2.
    ColoredGraph cg = colored_from(4, 1, {{0, 2, 1}, {1, 2, 1}});
    VertexSet u = VertexSet::of(4, {2, 3});
    std::vector<std::pair<int, std::vector<Cycle>>> in{{1, {Cycle::of(0, {0, 1})}}};

    LiftOutcome out = lift_auxiliary_cycles(cg, in, u);
    CHECK_FALSE(out.saturated);
    REQUIRE(out.hall_witness.size() == 2);
    for (const auto& ref : out.hall_witness) {
        CHECK(ref.color == 1);
        std::array<int, 2> sorted = ref.ends;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::array<int, 2>{0, 1});
    }
    CHECK(out.matching_size == 1);
}

TEST_CASE("lift input validation") {
    ColoredGraph cg = colored_from(4, 2, {{0, 2, 1}, {1, 2, 1}});
    VertexSet u = VertexSet::of(4, {2});
    std::vector<std::pair<int, std::vector<Cycle>>> bad_color{{3, {Cycle::of(0, {0, 1})}}};
    CHECK_THROWS_AS(lift_auxiliary_cycles(cg, bad_color, u), std::invalid_argument);

    std::vector<std::pair<int, std::vector<Cycle>>> inside_u{{1, {Cycle::of(0, {0, 2})}}};
    CHECK_THROWS_AS(lift_auxiliary_cycles(cg, inside_u, u), std::invalid_argument);

    // Two auxiliary edges but only one interior vertex.
    std::vector<std::pair<int, std::vector<Cycle>>> too_many{{1, {Cycle::of(0, {0, 1})}}};
    CHECK_THROWS_AS(lift_auxiliary_cycles(cg, too_many, u), std::invalid_argument);
}

TEST_CASE("empty target gives an empty cover") {
    Graph g = sample_gnp({30, 0.4, 21});
    ColoredGraph cg = color_uniform(g, 2, 22);
    ApproxParams params = ApproxParams::defaults(30, 0.4, 2);
    Cover cover = approx_cover_small_set(cg, VertexSet(30), params);
    CHECK(cover.cycles.empty());
    CHECK(cover.uncovered.count() == 0);
    CHECK(verify_cover(cg, cover, true).valid);
}

TEST_CASE("monochromatic clique needs one cycle") {
    Graph g = Graph::complete(50);
    ColoredGraph cg = color_uniform(g, 1, 0);  // r=1 puts every edge in color 1
    VertexSet w(50);
    for (int v = 0; v < 10; ++v) w.set(v);
    ApproxParams params = ApproxParams::defaults(50, 1.0, 1);

    ApproxDiagnostics diag;
    Cover cover = approx_cover_small_set(cg, w, params, &diag);
    REQUIRE(cover.cycles.size() == 1);
    CHECK(cover.cycles[0].vertices.size() == 18);
    CHECK(cover.cycles[0].color == 1);
    // The hole search sacrifices one vertex of the part; everything else
    // rides the single lifted cycle.
    CHECK(cover.uncovered == VertexSet::of(50, {9}));
    CHECK(verify_cover(cg, cover, true).valid);
    CHECK(diag.part_sizes == std::vector<int>{10});
    CHECK(diag.hole_m_used == std::vector<int>{1});
    CHECK(diag.hole_m_capped == std::vector<char>{1});
    CHECK(diag.matching_size == 9);
}

TEST_CASE("sampled instance stays within the cycle budget") {
    Graph g = sample_gnp({3000, 0.15, 11});
    ColoredGraph cg = color_uniform(g, 2, 12);
    VertexSet w(3000);
    for (int v = 0; v < 150; ++v) w.set(v);
    ApproxParams params = ApproxParams::defaults(3000, 0.15, 2);

    ApproxDiagnostics diag;
    Cover cover = approx_cover_small_set(cg, w, params, &diag);
    CoverReport report = verify_cover(cg, cover, true);
    CHECK(report.valid);
    CHECK(cover.disjoint);
    CHECK(cover.cycles.size() <= 12);
    CHECK(cover.cycles.size() <=
          static_cast<size_t>(params.r) * static_cast<size_t>(params.budget_k - 1));
    for (const Cycle& c : cover.cycles) CHECK(is_valid_mono_cycle(cg, c));
    CHECK(diag.part_sizes[0] + diag.part_sizes[1] == 150);
    CHECK(diag.uncovered_count == cover.uncovered.count());
    CHECK(cover.uncovered.count() == 2);  // frozen from this instance
}

TEST_CASE("random small instances give valid disjoint covers") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        Graph g = sample_gnp({60, 0.45, 500 + seed});
        ColoredGraph cg = color_uniform(g, 2, 600 + seed);
        Rng rng(700 + seed);
        std::vector<int> pick = rng.sample_distinct(20, 60);
        VertexSet w(60);
        for (int v : pick) w.set(v);

        ApproxParams params = ApproxParams::defaults(60, 0.45, 2);
        ApproxDiagnostics diag;
        Cover cover = approx_cover_small_set(cg, w, params, &diag);
        CoverReport report = verify_cover(cg, cover, true);
        REQUIRE(report.valid);
        CHECK(cover.cycles.size() <=
              static_cast<size_t>(params.r) * static_cast<size_t>(params.budget_k - 1));
        for (const Cycle& c : cover.cycles) CHECK(is_valid_mono_cycle(cg, c));
    }
}

TEST_CASE("parameter validation in the covering entry point") {
    Graph g = sample_gnp({20, 0.5, 1});
    ColoredGraph cg = color_uniform(g, 2, 2);
    VertexSet w = VertexSet::of(20, {0, 1, 2});

    ApproxParams wrong_r = ApproxParams::defaults(20, 0.5, 3);
    CHECK_THROWS_AS(approx_cover_small_set(cg, w, wrong_r), std::invalid_argument);

    ApproxParams bad_p = ApproxParams::defaults(20, 0.5, 2);
    bad_p.p = 0.0;
    CHECK_THROWS_AS(approx_cover_small_set(cg, w, bad_p), std::invalid_argument);

    ApproxParams bad_threshold = ApproxParams::defaults(20, 0.5, 2);
    bad_threshold.aux_threshold = 0.0;
    CHECK_THROWS_AS(approx_cover_small_set(cg, w, bad_threshold), std::invalid_argument);

    CHECK_THROWS_AS(ApproxParams::defaults(20, 1.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(ApproxParams::defaults(20, 0.5, 0), std::invalid_argument);
}
