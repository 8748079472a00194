#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcc/gnp.hpp"
#include "mcc/harness.hpp"
#include "mcc/io.hpp"
#include "mcc/rng.hpp"

using namespace mcc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(bool(in), "cannot open " << path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string dump(const ColoredGraph& cg) {
    std::ostringstream os;
    write_colored_graph(cg, os);
    return os.str();
}

fs::path scratch_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("mcc_harness_" + tag);
    fs::remove_all(dir);
    return dir;
}

int parse_error_line(const std::string& text) {
    std::istringstream is(text);
    try {
        read_colored_graph(is);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("read_colored_graph parses a minimal file") {
    std::istringstream is("2 1\n0 1 1\n");
    ColoredGraph cg = read_colored_graph(is);
    CHECK(cg.vertex_count() == 2);
    CHECK(cg.colors() == 1);
    CHECK(cg.edge_count() == 1);
    CHECK(cg.color_of(0, 1) == 1);
}

TEST_CASE("reader skips comments and blank lines") {
    std::istringstream is(
        "# colored graph\n"
        "\n"
        "   # indented comment\n"
        "3 2\n"
        "0 1 2\n"
        "\n"
        "1 2 1\n");
    ColoredGraph cg = read_colored_graph(is);
    CHECK(cg.vertex_count() == 3);
    CHECK(cg.colors() == 2);
    CHECK(cg.edge_count() == 2);
    CHECK(cg.color_of(0, 1) == 2);
    CHECK(cg.color_of(1, 2) == 1);
    CHECK(cg.color_of(0, 2) == 0);
}

TEST_CASE("reader rejects malformed input with 1-based line numbers") {
    // Empty text: the missing header is charged to the line after the end.
    CHECK(parse_error_line("") == 1);
    CHECK(parse_error_line("# only a comment\n") == 2);

    CHECK(parse_error_line("0 1\n") == 1);        // n < 1
    CHECK(parse_error_line("2 0\n") == 1);        // r < 1
    CHECK(parse_error_line("4\n") == 1);          // r missing
    CHECK(parse_error_line("4 2 9\n") == 1);      // trailing junk
    CHECK(parse_error_line("x 2\n") == 1);        // not a number

    CHECK(parse_error_line("4 2\n1 1 1\n") == 2);    // u == v
    CHECK(parse_error_line("4 2\n1 0 1\n") == 2);    // u > v
    CHECK(parse_error_line("4 2\n0 9 1\n") == 2);    // v out of range
    CHECK(parse_error_line("4 2\n0 1 0\n") == 2);    // color below 1
    CHECK(parse_error_line("4 2\n0 1 3\n") == 2);    // color above r
    CHECK(parse_error_line("4 2\n0 1 1 9\n") == 2);  // trailing junk
    CHECK(parse_error_line("4 2\n0 1 one\n") == 2);  // not a number

    // Duplicate pairs are an error even with matching colors, and the
    // reported line is the repeat, comments included in the count.
    CHECK(parse_error_line("4 2\n0 1 1\n# sep\n0 1 1\n") == 4);
    CHECK(parse_error_line("4 2\n0 1 1\n0 1 2\n") == 3);

    std::istringstream is("4 2\n0 1 9\n");
    CHECK_THROWS_WITH_AS(read_colored_graph(is), "line 2: color outside 1..r", ParseError);
}

TEST_CASE("write then read returns the same graph") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        int n = 1 + int(rng.below(40));
        int r = 1 + int(rng.below(3));
        Graph g = sample_gnp({n, 0.3, rng.next()});
        ColoredGraph cg = color_uniform(g, r, rng.next());

        std::istringstream is(dump(cg));
        ColoredGraph back = read_colored_graph(is);
        CHECK(back.vertex_count() == cg.vertex_count());
        CHECK(back.colors() == cg.colors());
        CHECK(dump(back) == dump(cg));
    }
}

TEST_CASE("load and save work through real files") {
    fs::path dir = scratch_dir("io");
    fs::create_directories(dir);
    fs::path file = dir / "roundtrip.graph";

    ColoredGraph cg = color_uniform(sample_gnp({25, 0.4, 9}), 3, 10);
    save_colored_graph(cg, file.string());
    ColoredGraph back = load_colored_graph(file.string());
    CHECK(dump(back) == dump(cg));

    CHECK_THROWS_AS(load_colored_graph((dir / "missing.graph").string()), std::runtime_error);
    CHECK_THROWS_AS(save_colored_graph(cg, (dir / "no_such_dir" / "x.graph").string()),
                    std::runtime_error);
    fs::remove_all(dir);
}

TEST_CASE("committed fixture loads as written") {
    ColoredGraph cg = load_colored_graph(MCC_SOURCE_DIR "/tests/fixtures/sample12.graph");
    CHECK(cg.vertex_count() == 12);
    CHECK(cg.colors() == 2);
    CHECK(cg.edge_count() == 20);
    CHECK(cg.color_of(0, 1) == 1);
    CHECK(cg.color_of(1, 11) == 2);
}

TEST_CASE("validate_config names the offending field") {
    auto field_of = [](ExperimentConfig cfg) -> std::string {
        try {
            validate_config(cfg);
        } catch (const ConfigError& e) {
            return e.field;
        }
        return "";
    };
    ExperimentConfig ok;
    CHECK_NOTHROW(validate_config(ok));

    ExperimentConfig c = ok;
    c.gnp.n = 0;
    CHECK(field_of(c) == "gnp.n");
    c = ok;
    c.gnp.p = 1.5;
    CHECK(field_of(c) == "gnp.p");
    c = ok;
    c.gnp.p = -0.1;
    CHECK(field_of(c) == "gnp.p");
    c = ok;
    c.coloring.r = 0;
    CHECK(field_of(c) == "coloring.r");
    c = ok;
    c.coloring.mode = ColoringSpec::Mode::bal_debiasio;
    c.coloring.r = 1;
    CHECK(field_of(c) == "coloring.r");
    c = ok;
    c.coloring.mode = ColoringSpec::Mode::from_file;
    CHECK(field_of(c) == "coloring.path");
    c = ok;
    c.parts = -1;
    CHECK(field_of(c) == "parts");
    c = ok;
    c.trials = 0;
    CHECK(field_of(c) == "trials");
    c = ok;
    c.jobs = 0;
    CHECK(field_of(c) == "jobs");
    c = ok;
    c.eps = 0.0;
    CHECK(field_of(c) == "eps");
    c = ok;
    c.eps = 1.0;
    CHECK(field_of(c) == "eps");
    c = ok;
    c.residual_samples = 0;
    CHECK(field_of(c) == "residual_samples");

    // from_file mode takes n and r from the file, so gnp.n is free.
    c = ok;
    c.coloring.mode = ColoringSpec::Mode::from_file;
    c.coloring.path = "whatever";
    c.gnp.n = 0;
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("budgets_for follows the r powers") {
    BudgetReport b2 = budgets_for(2);
    CHECK(b2.per_part_approx == doctest::Approx(12.0));
    CHECK(b2.per_part_residual == doctest::Approx(6400.0 * std::log(16.0)));
    CHECK(b2.total == doctest::Approx(std::pow(200.0, 8.0) * std::log(2.0)));

    // One color degenerates the total bound to zero; the per-part budgets stay.
    BudgetReport b1 = budgets_for(1);
    CHECK(b1.per_part_approx == doctest::Approx(3.0));
    CHECK(b1.per_part_residual == doctest::Approx(400.0 * std::log(4.0)));
    CHECK(b1.total == doctest::Approx(0.0));
}

TEST_CASE("cover_all closes a monochromatic clique in one cycle") {
    ColoredGraph cg = color_uniform(Graph::complete(20), 1, 0);
    ExperimentConfig cfg;
    cfg.gnp = {20, 1.0, 0};
    cfg.coloring.r = 1;
    cfg.parts = 1;

    TrialReport tr;
    Cover cover = cover_all(cg, cfg, 3, &tr);
    CHECK(cover.cycles.size() == 1);
    CHECK(cover.cycles[0].kind == CycleKind::proper);
    CHECK(cover.cycles[0].vertices.size() == 20);
    CHECK(tr.valid);
    CHECK(tr.uncovered == 0);
    CHECK(tr.proper == 1);
    CHECK(tr.vertex_kind == 0);
    // With one part there is nothing outside the residual set, so the
    // level stage has no material and the direct fallback does the work.
    CHECK(tr.direct_cycles == 1);
    CHECK(tr.residual_degraded == 1);
    CHECK(tr.approx_degraded == 0);
}

TEST_CASE("cover_all falls back to one-vertex cycles on an edgeless graph") {
    ColoredGraph cg(15, 2);
    ExperimentConfig cfg;
    cfg.coloring.r = 2;
    cfg.parts = 3;

    SUBCASE("declared density keeps both stages alive") {
        cfg.gnp = {15, 0.3, 0};
        TrialReport tr;
        Cover cover = cover_all(cg, cfg, 7, &tr);
        CHECK(cover.cycles.size() == 15);
        CHECK(tr.vertex_kind == 15);
        CHECK(tr.proper == 0);
        CHECK(tr.valid);
        CHECK(tr.uncovered == 0);
    }
    SUBCASE("density zero degrades both stages") {
        cfg.gnp = {15, 0.0, 0};
        TrialReport tr;
        Cover cover = cover_all(cg, cfg, 7, &tr);
        CHECK(cover.cycles.size() == 15);
        CHECK(tr.vertex_kind == 15);
        CHECK(tr.approx_degraded == 3);
        CHECK(tr.residual_degraded == 3);
        CHECK(tr.direct_cycles == 15);
        CHECK(tr.valid);
    }
}

TEST_CASE("cover_all never beats the exact oracle") {
    for (uint64_t seed : {3u, 8u, 21u}) {
        ColoredGraph cg = color_uniform(sample_gnp({8, 0.5, seed}), 2, seed + 1);
        ExperimentConfig cfg;
        cfg.gnp = {8, 0.5, seed};
        cfg.coloring.r = 2;
        cfg.parts = 2;
        cfg.oracle_check = true;

        TrialReport tr;
        cover_all(cg, cfg, seed, &tr);
        CHECK(tr.valid);
        CHECK(tr.oracle_size >= 1);
        CHECK(tr.cycles >= tr.oracle_size);
    }
}

TEST_CASE("cover_all covers a random graph end-to-end with four parts") {
    ColoredGraph cg = color_uniform(sample_gnp({10000, 0.1, 31}), 2, 32);
    ExperimentConfig cfg;
    cfg.gnp = {10000, 0.1, 31};
    cfg.coloring.r = 2;
    cfg.parts = 4;

    TrialReport tr;
    Cover cover = cover_all(cg, cfg, 33, &tr);
    CHECK(tr.valid);
    CHECK(tr.uncovered == 0);
    CHECK(tr.cycles == (long long)cover.cycles.size());
    CHECK(tr.approx_cycles + tr.residual_cycles + tr.direct_cycles == tr.cycles);
    BudgetReport b = budgets_for(2);
    CHECK(double(tr.cycles) <= b.total);
    CHECK(tr.cycles == 61);  // frozen
}

TEST_CASE("run_experiment aggregates trials deterministically") {
    ExperimentConfig cfg;
    cfg.gnp = {60, 0.3, 7};
    cfg.coloring.r = 2;
    cfg.coloring.seed = 11;
    cfg.parts = 2;
    cfg.trials = 4;

    ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.trials.size() == 4);
    CHECK(rep.parts_used == 2);
    CHECK_FALSE(rep.parts_capped);
    CHECK(rep.all_valid);
    for (int t = 0; t < 4; ++t) CHECK(rep.trials[size_t(t)].trial == t);
    CHECK(rep.min_cycles <= rep.median_cycles);
    CHECK(rep.median_cycles <= rep.max_cycles);
    CHECK(rep.mean_cycles >= double(rep.min_cycles));
    CHECK(rep.mean_cycles <= double(rep.max_cycles));

    SUBCASE("same config, same bytes") {
        ExperimentReport again = run_experiment(cfg);
        CHECK(report_to_json(again) == report_to_json(rep));
    }
    SUBCASE("parallel equals serial") {
        ExperimentConfig par = cfg;
        par.jobs = 4;
        ExperimentReport rep4 = run_experiment(par);
        CHECK(report_to_json(rep4) == report_to_json(rep));
    }
    SUBCASE("coloring seed is independent of the graph seed") {
        ExperimentConfig recolored = cfg;
        recolored.coloring.seed = 12;
        ExperimentReport other = run_experiment(recolored);
        CHECK(report_to_json(other) != report_to_json(rep));
    }
}

TEST_CASE("run_experiment honours the analytic part cap") {
    ExperimentConfig cfg;
    cfg.gnp = {30, 0.5, 1};
    cfg.coloring.r = 1;
    cfg.parts = 0;

    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.parts_used == 30);  // (101)^4 capped by n
    CHECK(rep.parts_capped);
    CHECK(rep.all_valid);

    cfg.parts = 5;
    ExperimentReport fixed = run_experiment(cfg);
    CHECK(fixed.parts_used == 5);
    CHECK_FALSE(fixed.parts_capped);
}

TEST_CASE("run_experiment writes report, meta, and csv files") {
    fs::path dir = scratch_dir("out");
    ExperimentConfig cfg;
    cfg.gnp = {40, 0.3, 2};
    cfg.coloring.r = 2;
    cfg.parts = 2;
    cfg.trials = 2;
    cfg.out_dir = dir.string();

    ExperimentReport rep = run_experiment(cfg);
    CHECK(slurp(dir / "report.json") == report_to_json(rep));

    nlohmann::json meta = nlohmann::json::parse(slurp(dir / "meta.json"));
    CHECK(meta.at("jobs") == 1);
    CHECK(meta.at("trial_seconds").size() == 2);
    CHECK(meta.at("total_seconds").is_number());
    CHECK(meta.at("timestamp").is_string());

    std::string csv = slurp(dir / "summary.csv");
    CHECK(csv == report_to_csv(rep));
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "schema_version,trial,n,p,r,pipeline,parts,cycles,proper,edge,vertex,uncovered,valid,"
          "approx_cycles,residual_cycles,direct_cycles,lift_ok,lift_failed,approx_degraded,"
          "residual_degraded,oracle_size");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.rfind("1,", 0) == 0);
        ++rows;
    }
    CHECK(rows == 2);

    nlohmann::json parsed = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(parsed.at("schema") == "mcc-report-1");
    CHECK(parsed.at("trials").size() == 2);
    CHECK(parsed.at("config").contains("gnp"));
    CHECK_FALSE(parsed.at("config").contains("jobs"));
    CHECK_FALSE(parsed.at("config").contains("out_dir"));
    fs::remove_all(dir);
}

TEST_CASE("fixture experiment matches the committed report") {
    ExperimentConfig cfg;
    cfg.gnp = {12, 0.3, 5};
    cfg.coloring.mode = ColoringSpec::Mode::from_file;
    cfg.coloring.r = 2;
    cfg.coloring.seed = 5;  // the cli reuses --seed here; match its reports
    cfg.coloring.path = MCC_SOURCE_DIR "/tests/fixtures/sample12.graph";
    cfg.parts = 2;
    cfg.trials = 1;
    cfg.oracle_check = true;

    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.all_valid);
    CHECK(report_to_json(rep) == slurp(MCC_SOURCE_DIR "/tests/golden/fixture_report.json"));
}

TEST_CASE("cli exit codes distinguish config, io, and success") {
    fs::path bin = fs::path(MCC_BINARY_DIR) / "mcc_cli";
    REQUIRE_MESSAGE(fs::exists(bin), "build mcc_cli before running this test");
    fs::path dir = scratch_dir("cli");
    auto run = [&](const std::string& args) {
        std::string cmd = bin.string() + " " + args + " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("--n 20 --p 0.3 --r 2 --seed 1 --parts 2 --out " + (dir / "a").string()) == 0);
    CHECK(run("--n 20 --p 1.5 --r 2") == 2);
    CHECK(run("--n 20 --p 0.3 --r 2 --bogus") == 2);
    CHECK(run("--coloring file:" + (dir / "missing.graph").string()) == 3);
    CHECK(run("--n 40 --p 0.2 --r 2 --props --trials 20") == 0);
    CHECK(fs::exists(dir / "a" / "report.json"));
    fs::remove_all(dir);
}
