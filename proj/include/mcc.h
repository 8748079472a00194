#ifndef MCC_H
#define MCC_H

/* C interface to the cycle-cover library. All objects are opaque handles
 * owned by the library; every fallible call returns an mcc_status and
 * leaves a message for mcc_last_error on failure. Status values double as
 * process exit codes, which is why `invalid cover` sits at 1. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcc_status {
    MCC_OK = 0,
    MCC_ERR_INVALID_COVER = 1, /* a produced cover failed verification */
    MCC_ERR_CONFIG = 2,        /* rejected configuration value */
    MCC_ERR_IO = 3,            /* missing, unwritable, or malformed file */
    MCC_ERR_ARGUMENT = 4,      /* null handle or out-of-range argument */
    MCC_ERR_INTERNAL = 5
} mcc_status;

/* Message for the most recent failure on this thread; empty string when
 * the last call succeeded. The pointer stays valid until the next library
 * call on the same thread. */
const char* mcc_last_error(void);

/* Frees strings returned through char** out-parameters. */
void mcc_string_free(char* s);

const char* mcc_version(void);

/* ---- colored graphs ---------------------------------------------- */

typedef struct mcc_graph mcc_graph;

/* Edge-list text: header `n r`, one `u v c` line per edge. */
mcc_status mcc_graph_load(const char* path, mcc_graph** out);
mcc_status mcc_graph_save(const mcc_graph* g, const char* path);

/* G(n,p) sample with independent uniform edge colors from 1..r. */
mcc_status mcc_graph_gnp_uniform(int n, double p, int r, uint64_t graph_seed,
                                 uint64_t color_seed, mcc_graph** out);

int mcc_graph_vertices(const mcc_graph* g); /* -1 on null */
int mcc_graph_colors(const mcc_graph* g);   /* -1 on null */
long long mcc_graph_edges(const mcc_graph* g);
void mcc_graph_free(mcc_graph* g);

/* ---- experiment configuration ------------------------------------ */

typedef struct mcc_config mcc_config;

mcc_status mcc_config_new(mcc_config** out);
mcc_status mcc_config_set_gnp(mcc_config* c, int n, double p, uint64_t seed);
/* mode: "uniform", "bal-debiasio", or "file" (path required then). */
mcc_status mcc_config_set_coloring(mcc_config* c, const char* mode, int r, uint64_t seed,
                                   const char* path);
/* pipeline: "approx", "cascade", or "full". */
mcc_status mcc_config_set_pipeline(mcc_config* c, const char* pipeline);
mcc_status mcc_config_set_parts(mcc_config* c, int parts); /* 0 = analytic default */
mcc_status mcc_config_set_trials(mcc_config* c, int trials);
mcc_status mcc_config_set_jobs(mcc_config* c, int jobs);
mcc_status mcc_config_set_residual(mcc_config* c, double eps, int samples);
mcc_status mcc_config_set_oracle_check(mcc_config* c, int enabled);
mcc_status mcc_config_set_out_dir(mcc_config* c, const char* dir);
mcc_status mcc_config_validate(const mcc_config* c);
void mcc_config_free(mcc_config* c);

/* ---- covering one graph ------------------------------------------ */

typedef struct mcc_cover mcc_cover;

/* Runs the staged cover on g using the stage settings from cfg. The cover
 * always spans every vertex; the status is MCC_ERR_INVALID_COVER in the
 * (never observed) case verification fails, and the handle is still
 * returned for inspection. */
mcc_status mcc_cover_all(const mcc_graph* g, const mcc_config* cfg, uint64_t seed,
                         mcc_cover** out);

long long mcc_cover_cycles(const mcc_cover* c);
long long mcc_cover_uncovered(const mcc_cover* c);
int mcc_cover_valid(const mcc_cover* c);
/* Cycle i: writes the color and vertex count, then up to buf_len vertex
 * ids. Call with buf NULL to size the buffer first. */
mcc_status mcc_cover_cycle(const mcc_cover* c, long long i, int* color, int* length, int* buf,
                           int buf_len);
void mcc_cover_free(mcc_cover* c);

/* ---- experiments -------------------------------------------------- */

typedef struct mcc_report mcc_report;

/* Validates cfg, runs all trials, writes report files when an output
 * directory is configured. Verification failures surface through
 * mcc_report_all_valid, not the status. */
mcc_status mcc_run_experiment(const mcc_config* cfg, mcc_report** out);

int mcc_report_trials(const mcc_report* r);
int mcc_report_parts_used(const mcc_report* r);
int mcc_report_parts_capped(const mcc_report* r);
int mcc_report_all_valid(const mcc_report* r);
double mcc_report_mean_cycles(const mcc_report* r);
long long mcc_report_min_cycles(const mcc_report* r);
long long mcc_report_max_cycles(const mcc_report* r);
/* Deterministic JSON document / CSV table; free with mcc_string_free. */
mcc_status mcc_report_json(const mcc_report* r, char** out);
mcc_status mcc_report_csv(const mcc_report* r, char** out);
void mcc_report_free(mcc_report* r);

/* ---- statistical property suite ----------------------------------- */

/* Samples G(n,p), runs the density and expansion checks at r colors, and
 * returns the result table as CSV. trials <= 0 picks the default count. */
mcc_status mcc_prop_suite_csv(int n, double p, int r, uint64_t seed, int trials, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MCC_H */
