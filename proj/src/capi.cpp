#include "mcc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "mcc/gnp.hpp"
#include "mcc/harness.hpp"
#include "mcc/io.hpp"
#include "mcc/prop_suite.hpp"

using namespace mcc;

struct mcc_graph {
    ColoredGraph cg;
};
struct mcc_config {
    ExperimentConfig cfg;
};
struct mcc_cover {
    Cover cover;
    TrialReport trial;
};
struct mcc_report {
    ExperimentReport rep;
};

namespace {

thread_local std::string t_error;

void set_error(const std::string& msg) { t_error = msg; }

mcc_status fail(mcc_status st, const std::string& msg) {
    set_error(msg);
    return st;
}

// Exceptions cross the C boundary as status codes: config complaints keep
// their field names in the message, parse errors their line numbers.
template <typename F>
mcc_status guarded(F&& f) {
    try {
        f();
        t_error.clear();
        return MCC_OK;
    } catch (const ConfigError& e) {
        return fail(MCC_ERR_CONFIG, e.what());
    } catch (const ParseError& e) {
        return fail(MCC_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MCC_ERR_CONFIG, e.what());
    } catch (const std::runtime_error& e) {
        return fail(MCC_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(MCC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MCC_ERR_INTERNAL, "unknown error");
    }
}

char* copy_out(const std::string& s) {
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (buf) std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

mcc_status need(bool ok, const char* what) {
    return ok ? MCC_OK : fail(MCC_ERR_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* mcc_last_error(void) { return t_error.c_str(); }

void mcc_string_free(char* s) { std::free(s); }

const char* mcc_version(void) { return "1.0.0"; }

mcc_status mcc_graph_load(const char* path, mcc_graph** out) {
    if (need(path && out, "mcc_graph_load: null argument")) return MCC_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] { *out = new mcc_graph{load_colored_graph(path)}; });
}

mcc_status mcc_graph_save(const mcc_graph* g, const char* path) {
    if (need(g && path, "mcc_graph_save: null argument")) return MCC_ERR_ARGUMENT;
    return guarded([&] { save_colored_graph(g->cg, path); });
}

mcc_status mcc_graph_gnp_uniform(int n, double p, int r, uint64_t graph_seed,
                                 uint64_t color_seed, mcc_graph** out) {
    if (need(out != nullptr, "mcc_graph_gnp_uniform: null out")) return MCC_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        if (n < 1) throw ConfigError("gnp.n", "must be >= 1");
        if (p < 0.0 || p > 1.0) throw ConfigError("gnp.p", "must lie in [0,1]");
        if (r < 1) throw ConfigError("coloring.r", "must be >= 1");
        Graph base = sample_gnp({n, p, graph_seed});
        *out = new mcc_graph{color_uniform(base, r, color_seed)};
    });
}

int mcc_graph_vertices(const mcc_graph* g) { return g ? g->cg.vertex_count() : -1; }

int mcc_graph_colors(const mcc_graph* g) { return g ? g->cg.colors() : -1; }

long long mcc_graph_edges(const mcc_graph* g) { return g ? g->cg.edge_count() : -1; }

void mcc_graph_free(mcc_graph* g) { delete g; }

mcc_status mcc_config_new(mcc_config** out) {
    if (need(out != nullptr, "mcc_config_new: null out")) return MCC_ERR_ARGUMENT;
    *out = new mcc_config{};
    t_error.clear();
    return MCC_OK;
}

mcc_status mcc_config_set_gnp(mcc_config* c, int n, double p, uint64_t seed) {
    if (need(c != nullptr, "mcc_config_set_gnp: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.gnp = {n, p, seed};
    return MCC_OK;
}

mcc_status mcc_config_set_coloring(mcc_config* c, const char* mode, int r, uint64_t seed,
                                   const char* path) {
    if (need(c && mode, "mcc_config_set_coloring: null argument")) return MCC_ERR_ARGUMENT;
    std::string m = mode;
    if (m == "uniform") {
        c->cfg.coloring.mode = ColoringSpec::Mode::uniform;
    } else if (m == "bal-debiasio") {
        c->cfg.coloring.mode = ColoringSpec::Mode::bal_debiasio;
    } else if (m == "file") {
        c->cfg.coloring.mode = ColoringSpec::Mode::from_file;
    } else {
        return fail(MCC_ERR_CONFIG, "coloring.mode: expected uniform, bal-debiasio, or file");
    }
    c->cfg.coloring.r = r;
    c->cfg.coloring.seed = seed;
    c->cfg.coloring.path = path ? path : "";
    return MCC_OK;
}

mcc_status mcc_config_set_pipeline(mcc_config* c, const char* pipeline) {
    if (need(c && pipeline, "mcc_config_set_pipeline: null argument")) return MCC_ERR_ARGUMENT;
    std::string p = pipeline;
    if (p == "approx")
        c->cfg.pipeline = Pipeline::approx;
    else if (p == "cascade")
        c->cfg.pipeline = Pipeline::cascade;
    else if (p == "full")
        c->cfg.pipeline = Pipeline::full;
    else
        return fail(MCC_ERR_CONFIG, "pipeline: expected approx, cascade, or full");
    return MCC_OK;
}

mcc_status mcc_config_set_parts(mcc_config* c, int parts) {
    if (need(c != nullptr, "mcc_config_set_parts: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.parts = parts;
    return MCC_OK;
}

mcc_status mcc_config_set_trials(mcc_config* c, int trials) {
    if (need(c != nullptr, "mcc_config_set_trials: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.trials = trials;
    return MCC_OK;
}

mcc_status mcc_config_set_jobs(mcc_config* c, int jobs) {
    if (need(c != nullptr, "mcc_config_set_jobs: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.jobs = jobs;
    return MCC_OK;
}

mcc_status mcc_config_set_residual(mcc_config* c, double eps, int samples) {
    if (need(c != nullptr, "mcc_config_set_residual: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.eps = eps;
    c->cfg.residual_samples = samples;
    return MCC_OK;
}

mcc_status mcc_config_set_oracle_check(mcc_config* c, int enabled) {
    if (need(c != nullptr, "mcc_config_set_oracle_check: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.oracle_check = enabled != 0;
    return MCC_OK;
}

mcc_status mcc_config_set_out_dir(mcc_config* c, const char* dir) {
    if (need(c != nullptr, "mcc_config_set_out_dir: null config")) return MCC_ERR_ARGUMENT;
    c->cfg.out_dir = dir ? dir : "";
    return MCC_OK;
}

mcc_status mcc_config_validate(const mcc_config* c) {
    if (need(c != nullptr, "mcc_config_validate: null config")) return MCC_ERR_ARGUMENT;
    return guarded([&] { validate_config(c->cfg); });
}

void mcc_config_free(mcc_config* c) { delete c; }

mcc_status mcc_cover_all(const mcc_graph* g, const mcc_config* cfg, uint64_t seed,
                         mcc_cover** out) {
    if (need(g && cfg && out, "mcc_cover_all: null argument")) return MCC_ERR_ARGUMENT;
    *out = nullptr;
    mcc_status st = guarded([&] {
        validate_config(cfg->cfg);
        auto* c = new mcc_cover{};
        c->cover = cover_all(g->cg, cfg->cfg, seed, &c->trial);
        *out = c;
    });
    if (st != MCC_OK) return st;
    if (!(*out)->trial.valid) return fail(MCC_ERR_INVALID_COVER, "cover failed verification");
    return MCC_OK;
}

long long mcc_cover_cycles(const mcc_cover* c) {
    return c ? (long long)c->cover.cycles.size() : -1;
}

long long mcc_cover_uncovered(const mcc_cover* c) { return c ? c->trial.uncovered : -1; }

int mcc_cover_valid(const mcc_cover* c) { return c ? (c->trial.valid ? 1 : 0) : 0; }

mcc_status mcc_cover_cycle(const mcc_cover* c, long long i, int* color, int* length, int* buf,
                           int buf_len) {
    if (need(c != nullptr, "mcc_cover_cycle: null cover")) return MCC_ERR_ARGUMENT;
    if (i < 0 || i >= (long long)c->cover.cycles.size())
        return fail(MCC_ERR_ARGUMENT, "mcc_cover_cycle: index out of range");
    const Cycle& cy = c->cover.cycles[size_t(i)];
    if (color) *color = cy.color;
    if (length) *length = int(cy.vertices.size());
    if (buf) {
        int take = std::min<int>(buf_len, int(cy.vertices.size()));
        for (int k = 0; k < take; ++k) buf[k] = cy.vertices[size_t(k)];
    }
    t_error.clear();
    return MCC_OK;
}

void mcc_cover_free(mcc_cover* c) { delete c; }

mcc_status mcc_run_experiment(const mcc_config* cfg, mcc_report** out) {
    if (need(cfg && out, "mcc_run_experiment: null argument")) return MCC_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] { *out = new mcc_report{run_experiment(cfg->cfg)}; });
}

int mcc_report_trials(const mcc_report* r) { return r ? int(r->rep.trials.size()) : -1; }

int mcc_report_parts_used(const mcc_report* r) { return r ? r->rep.parts_used : -1; }

int mcc_report_parts_capped(const mcc_report* r) {
    return r ? (r->rep.parts_capped ? 1 : 0) : -1;
}

int mcc_report_all_valid(const mcc_report* r) { return r ? (r->rep.all_valid ? 1 : 0) : 0; }

double mcc_report_mean_cycles(const mcc_report* r) { return r ? r->rep.mean_cycles : -1.0; }

long long mcc_report_min_cycles(const mcc_report* r) { return r ? r->rep.min_cycles : -1; }

long long mcc_report_max_cycles(const mcc_report* r) { return r ? r->rep.max_cycles : -1; }

mcc_status mcc_report_json(const mcc_report* r, char** out) {
    if (need(r && out, "mcc_report_json: null argument")) return MCC_ERR_ARGUMENT;
    *out = copy_out(report_to_json(r->rep));
    return *out ? MCC_OK : fail(MCC_ERR_INTERNAL, "out of memory");
}

mcc_status mcc_report_csv(const mcc_report* r, char** out) {
    if (need(r && out, "mcc_report_csv: null argument")) return MCC_ERR_ARGUMENT;
    *out = copy_out(report_to_csv(r->rep));
    return *out ? MCC_OK : fail(MCC_ERR_INTERNAL, "out of memory");
}

void mcc_report_free(mcc_report* r) { delete r; }

mcc_status mcc_prop_suite_csv(int n, double p, int r, uint64_t seed, int trials, char** out) {
    if (need(out != nullptr, "mcc_prop_suite_csv: null out")) return MCC_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        if (n < 1) throw ConfigError("gnp.n", "must be >= 1");
        PropCheckConfig cfg;
        cfg.seed = seed;
        if (trials > 0) cfg.trials = trials;
        Graph g = sample_gnp({n, p, seed});
        std::string csv = prop_rows_to_csv(run_prop_suite(g, p, r, cfg));
        *out = copy_out(csv);
        if (!*out) throw std::bad_alloc();
    });
}

}  // extern "C"
