// Command-line front end over the C API. Exit codes match mcc_status:
// 0 ok, 1 invalid cover, 2 config, 3 io.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mcc.h"

namespace {

int status_to_exit(mcc_status st) {
    switch (st) {
        case MCC_OK: return 0;
        case MCC_ERR_INVALID_COVER: return 1;
        case MCC_ERR_CONFIG: return 2;
        default: return 3;
    }
}

int complain(mcc_status st) {
    std::fprintf(stderr, "error: %s\n", mcc_last_error());
    return status_to_exit(st);
}

struct ConfigDeleter {
    void operator()(mcc_config* c) const { mcc_config_free(c); }
};
struct ReportDeleter {
    void operator()(mcc_report* r) const { mcc_report_free(r); }
};

int run_props(int n, double p, int r, uint64_t seed, int trials, const std::string& out_dir) {
    char* csv = nullptr;
    mcc_status st = mcc_prop_suite_csv(n, p, r, seed, trials, &csv);
    if (st != MCC_OK) return complain(st);
    std::fputs(csv, stdout);
    int code = 0;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(std::filesystem::path(out_dir) / "props.csv");
        out << csv;
        out.flush();
        if (!out) {
            std::fprintf(stderr, "error: cannot write props.csv under %s\n", out_dir.c_str());
            code = 3;
        }
    }
    mcc_string_free(csv);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covers every vertex of an edge-colored random graph by few "
                 "monochromatic cycles and reports the statistics."};

    int n = 100;
    double p = 0.1;
    int r = 2;
    uint64_t seed = 0;
    std::string coloring = "uniform";
    std::string pipeline = "full";
    int trials = 1;
    int parts = 0;
    int jobs = 1;
    std::string out_dir;
    bool props = false;
    bool oracle_check = false;

    app.add_option("--n", n, "vertex count");
    app.add_option("--p", p, "edge density");
    app.add_option("--r", r, "number of colors");
    app.add_option("--seed", seed, "root seed for graphs, colors, and covers");
    app.add_option("--coloring", coloring, "uniform, bal-debiasio, or file:PATH");
    app.add_option("--pipeline", pipeline, "approx, cascade, or full");
    auto* trials_opt = app.add_option("--trials", trials, "independent trials");
    app.add_option("--parts", parts, "vertex partition count, 0 = analytic default");
    app.add_option("--jobs", jobs, "max concurrent trials");
    app.add_option("--out", out_dir, "directory for report.json, meta.json, summary.csv");
    app.add_flag("--props", props, "run the statistical property suite instead of covering");
    app.add_flag("--oracle-check", oracle_check,
                 "compare against the exact minimum on tiny instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (props) {
        int prop_trials = trials_opt->count() ? trials : 0;
        return run_props(n, p, r, seed, prop_trials, out_dir);
    }

    std::string mode = coloring;
    std::string path;
    if (coloring.rfind("file:", 0) == 0) {
        mode = "file";
        path = coloring.substr(5);
    }

    mcc_config* raw = nullptr;
    if (mcc_status st = mcc_config_new(&raw); st != MCC_OK) return complain(st);
    std::unique_ptr<mcc_config, ConfigDeleter> cfg(raw);

    mcc_config_set_gnp(cfg.get(), n, p, seed);
    if (mcc_status st =
            mcc_config_set_coloring(cfg.get(), mode.c_str(), r, seed, path.c_str());
        st != MCC_OK)
        return complain(st);
    if (mcc_status st = mcc_config_set_pipeline(cfg.get(), pipeline.c_str()); st != MCC_OK)
        return complain(st);
    mcc_config_set_parts(cfg.get(), parts);
    mcc_config_set_trials(cfg.get(), trials);
    mcc_config_set_jobs(cfg.get(), jobs);
    mcc_config_set_oracle_check(cfg.get(), oracle_check ? 1 : 0);
    mcc_config_set_out_dir(cfg.get(), out_dir.c_str());

    mcc_report* rep_raw = nullptr;
    if (mcc_status st = mcc_run_experiment(cfg.get(), &rep_raw); st != MCC_OK)
        return complain(st);
    std::unique_ptr<mcc_report, ReportDeleter> rep(rep_raw);

    std::printf("trials %d  parts %d%s  cycles mean %.2f min %lld max %lld\n",
                mcc_report_trials(rep.get()), mcc_report_parts_used(rep.get()),
                mcc_report_parts_capped(rep.get()) ? " (capped)" : "",
                mcc_report_mean_cycles(rep.get()), mcc_report_min_cycles(rep.get()),
                mcc_report_max_cycles(rep.get()));
    if (!out_dir.empty()) std::printf("reports written to %s\n", out_dir.c_str());

    if (!mcc_report_all_valid(rep.get())) {
        std::fprintf(stderr, "error: at least one cover failed verification\n");
        return 1;
    }
    return 0;
}
