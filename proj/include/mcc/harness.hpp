#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcc/approx_cover.hpp"
#include "mcc/gnp.hpp"
#include "mcc/graph.hpp"

namespace mcc {

enum class Pipeline { approx, cascade, full };

// A config field failed validation; `field` names it.
struct ConfigError : std::invalid_argument {
    ConfigError(std::string f, const std::string& what)
        : std::invalid_argument("config error: " + f + " " + what), field(std::move(f)) {}
    std::string field;
};

// One experiment: sample, color, cover, verify, repeat `trials` times.
// `parts` = 0 requests the analytic part count min((101r)^4, n); at bench
// sizes that cap always bites and the report flags it. A from_file
// coloring replaces both the graph and the colors, so gnp is ignored
// except as a seed source for the cover stages.
struct ExperimentConfig {
    GnpParams gnp{100, 0.1, 0};
    ColoringSpec coloring;
    Pipeline pipeline = Pipeline::full;
    int parts = 0;
    int trials = 1;
    int jobs = 1;
    double eps = 0.25;         // residual stage level fraction
    int residual_samples = 200;  // base-set samples per part in the residual stage
    bool oracle_check = false;   // n <= 12: compare against the exact cover size
    std::string out_dir;         // run_experiment writes report.json, meta.json, summary.csv
};

void validate_config(const ExperimentConfig& cfg);

// Cycle-count budgets the covers are reported against.
struct BudgetReport {
    double per_part_approx = 0;    // 3 r^2
    double per_part_residual = 0;  // 400 r^4 log(4 r^2)
    double total = 0;              // (100 r)^8 log r
};
BudgetReport budgets_for(int r);

struct TrialReport {
    int trial = 0;
    bool valid = false;
    long long cycles = 0;
    long long proper = 0;
    long long edge_kind = 0;
    long long vertex_kind = 0;
    long long uncovered = 0;
    long long approx_cycles = 0;
    long long residual_cycles = 0;
    long long max_part_approx = 0;
    long long max_part_residual = 0;
    long long lift_ok = 0;
    long long lift_failed = 0;
    long long approx_degraded = 0;    // parts whose first stage threw
    long long residual_degraded = 0;  // parts whose second stage threw
    long long direct_cycles = 0;      // fallback cycles, degenerate included
    long long oracle_size = -1;       // -1: not checked
    double seconds = 0;               // serialized to meta.json only
};

struct ExperimentReport {
    std::string schema = "mcc-report-1";
    ExperimentConfig config;
    BudgetReport budgets;
    int parts_used = 0;
    bool parts_capped = false;
    std::vector<TrialReport> trials;
    bool all_valid = false;
    double mean_cycles = 0;
    double median_cycles = 0;
    long long min_cycles = 0;
    long long max_cycles = 0;
};

// Near-equal contiguous split of V into s parts; per part the approximate
// stage covers most of W_i and the residual stage covers what it left,
// with level sets built over everything outside the residual. Vertices
// surviving both stages get greedy direct cycles in the original layers,
// then one-vertex cycles. Cycles may overlap across parts and stages;
// uncovered is always empty. The returned cover has been through
// verify_cover already.
Cover cover_all(const ColoredGraph& cg, const ExperimentConfig& cfg, uint64_t seed,
                TrialReport* rep = nullptr);

// Runs all trials (concurrently up to cfg.jobs, one RNG substream per
// trial, merged in trial order). Throws ConfigError for bad configs and
// std::runtime_error for unwritable outputs.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Deterministic serialization of everything except timings.
std::string report_to_json(const ExperimentReport& rep);
// Timestamp, wall times, job count.
std::string meta_to_json(const ExperimentReport& rep, const std::string& timestamp);
// Fixed columns, one row per trial, schema_version first.
std::string report_to_csv(const ExperimentReport& rep);

}  // namespace mcc
