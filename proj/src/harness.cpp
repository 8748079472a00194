#include "mcc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mcc/cascade.hpp"
#include "mcc/io.hpp"
#include "mcc/oracle.hpp"
#include "mcc/rng.hpp"

namespace mcc {

namespace {

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::approx: return "approx";
        case Pipeline::cascade: return "cascade";
        default: return "full";
    }
}

const char* mode_name(ColoringSpec::Mode m) {
    switch (m) {
        case ColoringSpec::Mode::uniform: return "uniform";
        case ColoringSpec::Mode::bal_debiasio: return "bal-debiasio";
        default: return "from-file";
    }
}

long long analytic_parts(int r) {
    long long b = 101LL * r;
    return b * b * b * b;
}

// Terminal fallback: greedy monochromatic cycles directly in the colored
// graph, restricted to `left`. Extends a path by the lowest-id neighbor,
// keeps it when it closes. Finds the Hamilton cycle of a monochromatic
// clique and nothing at all on an edgeless graph.
std::vector<Cycle> greedy_direct_cover(const ColoredGraph& cg, VertexSet& left) {
    std::vector<Cycle> out;
    for (int c = 1; c <= cg.colors(); ++c) {
        const Graph& layer = cg.layer(c);
        for (int v = left.first(); v >= 0; v = left.next(v)) {
            std::vector<int> path{v};
            VertexSet avail = left;
            avail.reset(v);
            for (;;) {
                int nxt = (layer.neighbors(path.back()) & avail).first();
                if (nxt < 0) break;
                path.push_back(nxt);
                avail.reset(nxt);
            }
            if (path.size() < 2) continue;
            if (path.size() >= 3 && !layer.adjacent(path.back(), path.front())) continue;
            for (int x : path) left.reset(x);
            out.push_back(Cycle::of(c, path));
            v = -1;  // restart the scan on the shrunken set
            if (left.count() == 0) break;
        }
    }
    return out;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    bool file_mode = cfg.coloring.mode == ColoringSpec::Mode::from_file;
    if (!file_mode && cfg.gnp.n < 1) throw ConfigError("gnp.n", "must be >= 1");
    if (cfg.gnp.p < 0.0 || cfg.gnp.p > 1.0) throw ConfigError("gnp.p", "must lie in [0,1]");
    if (cfg.coloring.r < 1) throw ConfigError("coloring.r", "must be >= 1");
    if (cfg.coloring.mode == ColoringSpec::Mode::bal_debiasio && cfg.coloring.r < 2)
        throw ConfigError("coloring.r", "bal-debiasio needs at least 2 colors");
    if (file_mode && cfg.coloring.path.empty())
        throw ConfigError("coloring.path", "required for from-file mode");
    if (cfg.parts < 0) throw ConfigError("parts", "must be >= 0 (0 = analytic default)");
    if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
    if (cfg.jobs < 1) throw ConfigError("jobs", "must be >= 1");
    if (!(cfg.eps > 0.0) || cfg.eps >= 1.0) throw ConfigError("eps", "must lie in (0,1)");
    if (cfg.residual_samples < 1) throw ConfigError("residual_samples", "must be >= 1");
}

BudgetReport budgets_for(int r) {
    BudgetReport b;
    double rr = double(r);
    b.per_part_approx = 3.0 * rr * rr;
    b.per_part_residual = 400.0 * std::pow(rr, 4.0) * std::log(4.0 * rr * rr);
    b.total = std::pow(100.0 * rr, 8.0) * std::log(rr);
    return b;
}

Cover cover_all(const ColoredGraph& cg, const ExperimentConfig& cfg, uint64_t seed,
                TrialReport* rep) {
    const int n = cg.vertex_count();
    const int r = cg.colors();
    const double p = cfg.gnp.p;
    long long s_raw = cfg.parts > 0 ? cfg.parts : analytic_parts(r);
    const int s = int(std::min<long long>(std::max<long long>(s_raw, 1), n));

    Cover total;
    total.target = VertexSet::full(n);
    total.uncovered = VertexSet(n);
    total.disjoint = false;

    TrialReport scratch;
    TrialReport& tr = rep ? *rep : scratch;

    Rng base(seed);
    for (int i = 0; i < s; ++i) {
        int lo = int((long long)n * i / s), hi = int((long long)n * (i + 1) / s);
        if (lo >= hi) continue;
        VertexSet w(n);
        for (int v = lo; v < hi; ++v) w.set(v);
        Rng prng = base.substream(uint64_t(i));
        uint64_t level_seed = prng.next(), residual_seed = prng.next();

        // Stage 1: the approximate cover. Anything it cannot handle stays
        // in `left` for the next stage.
        VertexSet left = w;
        long long part_approx = 0;
        if (cfg.pipeline != Pipeline::cascade) {
            try {
                Cover c1 = approx_cover_small_set(cg, w, ApproxParams::defaults(n, p, r));
                part_approx = (long long)c1.cycles.size();
                left = c1.uncovered;
                for (Cycle& c : c1.cycles) total.cycles.push_back(std::move(c));
            } catch (const std::exception&) {
                ++tr.approx_degraded;
                left = w;
                part_approx = 0;
            }
        }
        tr.approx_cycles += part_approx;
        tr.max_part_approx = std::max(tr.max_part_approx, part_approx);

        // Stage 2: the residual cover, levels built over everything outside
        // the residual set itself.
        long long part_residual = 0;
        if (cfg.pipeline != Pipeline::approx && left.count() > 0) {
            try {
                LevelPartition lp = build_levels(left, cfg.eps, level_seed);
                CascadeParams cp = compute_params(n, p, r, cfg.eps, lp.level(1).count());
                CascadeDiagnostics diag;
                Cover c2 =
                    cover_small_set(cg, lp, left, cp, cfg.residual_samples, residual_seed, &diag);
                part_residual = (long long)c2.cycles.size();
                tr.lift_ok += diag.lifted_ok;
                tr.lift_failed += diag.lifted_failed;
                left = c2.uncovered;
                for (Cycle& c : c2.cycles) total.cycles.push_back(std::move(c));
            } catch (const std::exception&) {
                ++tr.residual_degraded;  // the fallback below covers the rest
            }
        }
        tr.residual_cycles += part_residual;
        tr.max_part_residual = std::max(tr.max_part_residual, part_residual);

        // Whatever survived both stages gets real cycles when the layers
        // offer them and one-vertex cycles otherwise.
        if (left.count() > 0) {
            for (Cycle& c : greedy_direct_cover(cg, left)) {
                ++tr.direct_cycles;
                total.cycles.push_back(std::move(c));
            }
            for (int v = left.first(); v >= 0; v = left.next(v)) {
                total.cycles.push_back(Cycle::single(v));
                ++tr.direct_cycles;
            }
        }
    }

    VertexSet covered(n);
    for (const Cycle& c : total.cycles) covered |= c.vertex_set(n);
    total.uncovered = total.target - covered;

    CoverReport vr = verify_cover(cg, total, false);
    tr.valid = vr.valid;
    tr.cycles = (long long)total.cycles.size();
    tr.uncovered = vr.uncovered_count;
    for (const Cycle& c : total.cycles) {
        if (c.kind == CycleKind::proper)
            ++tr.proper;
        else if (c.kind == CycleKind::edge)
            ++tr.edge_kind;
        else
            ++tr.vertex_kind;
    }
    if (cfg.oracle_check && n <= 12) {
        OracleCover oc = min_mono_cycle_cover_exact(cg, false);
        tr.oracle_size = (long long)oc.cycles.size();
    }
    return total;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);

    std::optional<ColoredGraph> file_cg;
    if (cfg.coloring.mode == ColoringSpec::Mode::from_file)
        file_cg = load_colored_graph(cfg.coloring.path);
    const int n_eff = file_cg ? file_cg->vertex_count() : cfg.gnp.n;
    const int r_eff = file_cg ? file_cg->colors() : cfg.coloring.r;

    ExperimentReport rep;
    rep.config = cfg;
    rep.budgets = budgets_for(r_eff);
    long long s_raw = cfg.parts > 0 ? cfg.parts : analytic_parts(r_eff);
    rep.parts_used = int(std::min<long long>(std::max<long long>(s_raw, 1), n_eff));
    rep.parts_capped = cfg.parts == 0 && analytic_parts(r_eff) > n_eff;
    rep.trials.resize(size_t(cfg.trials));

    // Each trial is a pure function of its substream; workers pull the next
    // index and write into their own slot, so thread count cannot change
    // the merged report.
    std::atomic<int> next_trial{0};
    std::vector<std::exception_ptr> errors(size_t(cfg.trials));
    auto worker = [&]() {
        for (;;) {
            int t = next_trial.fetch_add(1);
            if (t >= cfg.trials) return;
            try {
                auto t0 = std::chrono::steady_clock::now();
                Rng ts = Rng(cfg.gnp.seed).substream(uint64_t(t));
                uint64_t graph_seed = ts.next(), cover_seed = ts.next();
                uint64_t color_seed = Rng(cfg.coloring.seed).substream(uint64_t(t)).next();

                ColoredGraph cg;
                if (file_cg) {
                    cg = *file_cg;
                } else {
                    Graph g = sample_gnp({cfg.gnp.n, cfg.gnp.p, graph_seed});
                    if (cfg.coloring.mode == ColoringSpec::Mode::uniform) {
                        cg = color_uniform(g, cfg.coloring.r, color_seed);
                    } else {
                        VertexSet x = find_sparse_independent_set(g, cfg.coloring.r, color_seed);
                        cg = color_adversarial_bal_debiasio(g, cfg.coloring.r, x);
                    }
                }
                TrialReport& tr = rep.trials[size_t(t)];
                tr.trial = t;
                cover_all(cg, cfg, cover_seed, &tr);
                tr.seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            } catch (...) {
                errors[size_t(t)] = std::current_exception();
            }
        }
    };
    int threads = std::min(cfg.jobs, cfg.trials);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    for (std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    rep.all_valid = true;
    std::vector<long long> sizes;
    sizes.reserve(rep.trials.size());
    double sum = 0;
    for (const TrialReport& tr : rep.trials) {
        rep.all_valid = rep.all_valid && tr.valid && tr.uncovered == 0;
        sizes.push_back(tr.cycles);
        sum += double(tr.cycles);
    }
    std::sort(sizes.begin(), sizes.end());
    rep.min_cycles = sizes.front();
    rep.max_cycles = sizes.back();
    rep.mean_cycles = sum / double(sizes.size());
    size_t h = sizes.size() / 2;
    rep.median_cycles = sizes.size() % 2 ? double(sizes[h])
                                         : (double(sizes[h - 1]) + double(sizes[h])) / 2.0;

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec) throw std::runtime_error("cannot create " + cfg.out_dir + ": " + ec.message());
        auto dump = [&](const std::string& name, const std::string& text) {
            std::ofstream out(fs::path(cfg.out_dir) / name);
            out << text;
            out.flush();
            if (!out) throw std::runtime_error("cannot write " + name + " under " + cfg.out_dir);
        };
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        dump("report.json", report_to_json(rep));
        dump("meta.json", meta_to_json(rep, stamp));
        dump("summary.csv", report_to_csv(rep));
    }
    return rep;
}

std::string report_to_json(const ExperimentReport& rep) {
    nlohmann::ordered_json j;
    j["schema"] = rep.schema;
    const ExperimentConfig& c = rep.config;
    j["config"] = {{"gnp", {{"n", c.gnp.n}, {"p", c.gnp.p}, {"seed", c.gnp.seed}}},
                   {"coloring",
                    {{"mode", mode_name(c.coloring.mode)},
                     {"r", c.coloring.r},
                     {"seed", c.coloring.seed},
                     {"path", c.coloring.path}}},
                   {"pipeline", pipeline_name(c.pipeline)},
                   {"parts", c.parts},
                   {"trials", c.trials},
                   {"eps", c.eps},
                   {"residual_samples", c.residual_samples},
                   {"oracle_check", c.oracle_check}};
    j["budgets"] = {{"per_part_approx", rep.budgets.per_part_approx},
                    {"per_part_residual", rep.budgets.per_part_residual},
                    {"total", rep.budgets.total}};
    j["parts_used"] = rep.parts_used;
    j["parts_capped"] = rep.parts_capped;
    j["trials"] = nlohmann::ordered_json::array();
    for (const TrialReport& tr : rep.trials) {
        j["trials"].push_back({{"trial", tr.trial},
                               {"valid", tr.valid},
                               {"cycles", tr.cycles},
                               {"proper", tr.proper},
                               {"edge", tr.edge_kind},
                               {"vertex", tr.vertex_kind},
                               {"uncovered", tr.uncovered},
                               {"approx_cycles", tr.approx_cycles},
                               {"residual_cycles", tr.residual_cycles},
                               {"max_part_approx", tr.max_part_approx},
                               {"max_part_residual", tr.max_part_residual},
                               {"lift_ok", tr.lift_ok},
                               {"lift_failed", tr.lift_failed},
                               {"approx_degraded", tr.approx_degraded},
                               {"residual_degraded", tr.residual_degraded},
                               {"direct_cycles", tr.direct_cycles},
                               {"oracle_size", tr.oracle_size}});
    }
    j["aggregate"] = {{"all_valid", rep.all_valid},
                      {"mean_cycles", rep.mean_cycles},
                      {"median_cycles", rep.median_cycles},
                      {"min_cycles", rep.min_cycles},
                      {"max_cycles", rep.max_cycles}};
    return j.dump(2) + "\n";
}

std::string meta_to_json(const ExperimentReport& rep, const std::string& timestamp) {
    nlohmann::ordered_json j;
    j["timestamp"] = timestamp;
    j["jobs"] = rep.config.jobs;
    j["out_dir"] = rep.config.out_dir;
    double total = 0;
    j["trial_seconds"] = nlohmann::ordered_json::array();
    for (const TrialReport& tr : rep.trials) {
        j["trial_seconds"].push_back(tr.seconds);
        total += tr.seconds;
    }
    j["total_seconds"] = total;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os << "schema_version,trial,n,p,r,pipeline,parts,cycles,proper,edge,vertex,uncovered,valid,"
          "approx_cycles,residual_cycles,direct_cycles,lift_ok,lift_failed,approx_degraded,"
          "residual_degraded,oracle_size\n";
    for (const TrialReport& tr : rep.trials) {
        os << 1 << ',' << tr.trial << ',' << rep.config.gnp.n << ',' << rep.config.gnp.p << ','
           << rep.config.coloring.r << ',' << pipeline_name(rep.config.pipeline) << ','
           << rep.parts_used << ',' << tr.cycles << ',' << tr.proper << ',' << tr.edge_kind << ','
           << tr.vertex_kind << ',' << tr.uncovered << ',' << (tr.valid ? 1 : 0) << ','
           << tr.approx_cycles << ',' << tr.residual_cycles << ',' << tr.direct_cycles << ','
           << tr.lift_ok << ',' << tr.lift_failed << ',' << tr.approx_degraded << ','
           << tr.residual_degraded << ',' << tr.oracle_size << '\n';
    }
    return os.str();
}

}  // namespace mcc
