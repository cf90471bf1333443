// Command-line front end: benchmark runs, the tensor-vs-scalar timing
// harness, hyper-parameter evolution, and dynamic planning scenarios. Every
// subcommand derives all randomness from --seed and writes its artifacts
// plus a manifest under --out (or $SWARMFORGE_OUT).

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "swarmforge/benchmarks.hpp"
#include "swarmforge/serialize.hpp"

namespace fs = std::filesystem;
using namespace swarmforge;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string default_out_root() {
    const char* env = std::getenv("SWARMFORGE_OUT");
    return (env && *env) ? env : "out";
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const fs::path& dir, const std::string& subcommand, json config,
                    json seeds, std::vector<std::string> outputs) {
    const json manifest{{"subcommand", subcommand}, {"config", std::move(config)},
                        {"seeds", std::move(seeds)}, {"version", kVersion},
                        {"outputs", std::move(outputs)}, {"timestamp", iso_timestamp()}};
    write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

HyperMatrix load_hypers_file(const std::string& path) {
    HyperMatrix m = read_json_file(path).get<HyperMatrix>();
    m.validate();
    return m;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Split [0, count) into `jobs` chunks and run `work(begin, end)` on each.
void parallel_ranges(std::size_t count, std::size_t jobs,
                     const std::function<void(std::size_t, std::size_t)>& work) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        work(0, count);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    const std::size_t chunk = (count + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
        const std::size_t begin = j * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back(work, begin, end);
    }
    for (std::thread& t : threads) t.join();
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
    std::vector<std::string> problems = benchmark_ids();
    std::string algo = "dtpso";
    std::size_t trials = 50;
    std::size_t iters = 1400;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    std::string hypers_file;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    HyperMatrix hypers = default_group_hypers();
    if (args.algo == "sepso") {
        if (args.hypers_file.empty())
            throw std::runtime_error(
                "algorithm 'sepso' needs an evolved hyper-parameter file: pass "
                "--hypers <file> (create one with `swarmforge evolve`)");
        hypers = load_hypers_file(args.hypers_file);
    } else if (args.algo != "pso" && args.algo != "dppso" && args.algo != "dtpso") {
        throw std::runtime_error("unknown algorithm '" + args.algo +
                                 "' (expected pso, dppso, dtpso or sepso)");
    }

    const fs::path dir = fs::path(args.out) / "bench";
    fs::create_directories(dir);

    std::vector<std::string> outputs;
    std::string csv =
        "problem,algorithm,trials,iterations,seed,median_final,min_final,max_final,"
        "mean_wall_seconds\n";
    for (const std::string& id : args.problems) {
        const auto problem = make_benchmark(id);
        std::vector<RunReport> reports(args.trials);
        parallel_ranges(args.trials, args.jobs, [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                const std::uint64_t trial_seed = derive_seed(args.seed, id, t);
                if (args.algo == "pso")
                    reports[t] = run_pso_reference(*problem, args.iters, 80, trial_seed);
                else if (args.algo == "dppso")
                    reports[t] = run_dppso_reference(*problem, hypers, hypers.group_count(),
                                                     10, args.iters, trial_seed);
                else
                    reports[t] = run_dtpso(*problem, hypers, hypers.group_count(), 10,
                                           args.iters, trial_seed);
            }
        });

        std::vector<double> finals;
        double wall = 0.0;
        std::string jsonl;
        for (const RunReport& r : reports) {
            finals.push_back(r.final_fitness);
            wall += r.wall_seconds;
            jsonl += json(r).dump() + "\n";
        }
        const std::string stem = id + "_" + args.algo;
        const fs::path trials_path = dir / (stem + "_trials.jsonl");
        write_text_file(trials_path.string(), jsonl);
        outputs.push_back(trials_path.string());

        const json summary{{"problem", id},
                           {"algorithm", args.algo},
                           {"trials", args.trials},
                           {"iterations", args.iters},
                           {"seed", args.seed},
                           {"finals", finals},
                           {"median_final", median(finals)},
                           {"min_final", *std::min_element(finals.begin(), finals.end())},
                           {"max_final", *std::max_element(finals.begin(), finals.end())},
                           {"mean_wall_seconds", wall / static_cast<double>(args.trials)}};
        const fs::path summary_path = dir / (stem + "_summary.json");
        write_text_file(summary_path.string(), summary.dump(2) + "\n");
        outputs.push_back(summary_path.string());

        csv += id + ',' + args.algo + ',' + std::to_string(args.trials) + ',' +
               std::to_string(args.iters) + ',' + std::to_string(args.seed) + ',' +
               csv_number(median(finals)) + ',' +
               csv_number(*std::min_element(finals.begin(), finals.end())) + ',' +
               csv_number(*std::max_element(finals.begin(), finals.end())) + ',' +
               csv_number(wall / static_cast<double>(args.trials)) + '\n';
        std::cout << id << " " << args.algo << ": median final " << median(finals)
                  << " over " << args.trials << " trials\n";
    }
    const fs::path csv_path = dir / "summary.csv";
    write_text_file(csv_path.string(), csv);
    outputs.push_back(csv_path.string());

    write_manifest(dir, "bench",
                   json{{"problems", args.problems},
                        {"algorithm", args.algo},
                        {"trials", args.trials},
                        {"iterations", args.iters},
                        {"jobs", args.jobs},
                        {"hypers_file", args.hypers_file}},
                   json{{"root", args.seed}}, outputs);
    return 0;
}

// --- scale ------------------------------------------------------------------

std::size_t available_memory_bytes() {
    std::ifstream meminfo("/proc/meminfo");
    std::string key;
    std::size_t kib = 0;
    while (meminfo >> key >> kib) {
        if (key == "MemAvailable:") return kib * 1024;
        meminfo.ignore(256, '\n');
    }
    return 0;
}

struct ScaleArgs {
    std::size_t n = 16384;
    std::size_t d = 1000;
    std::size_t iters = 10;
    std::string problem = "BF1";
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_scale(const ScaleArgs& args) {
    if (args.iters < 1) throw std::runtime_error("scale: --iters must be >= 1");
    const HyperMatrix hypers = default_group_hypers();
    const std::size_t groups = hypers.group_count();

    // Positions, velocities and personal bests dominate; both code paths
    // hold one copy each (run sequentially), plus slack for bookkeeping.
    const double required =
        3.4 * static_cast<double>(groups * args.n * args.d) * sizeof(double);
    const double available = static_cast<double>(available_memory_bytes());
    if (available > 0.0 && required > 0.9 * available)
        throw std::runtime_error(
            "scale: not enough memory: need about " +
            std::to_string(static_cast<std::size_t>(required / (1 << 20))) +
            " MiB, available " +
            std::to_string(static_cast<std::size_t>(available / (1 << 20))) + " MiB");

    const auto problem = make_benchmark(args.problem, args.d);
    std::cerr << "scale: tensorized run (G=" << groups << ", N=" << args.n
              << ", D=" << args.d << ", T=" << args.iters << ")...\n";
    const RunReport tensor =
        run_dtpso(*problem, hypers, groups, args.n, args.iters, args.seed);
    std::cerr << "scale: per-particle run...\n";
    const RunReport oracle =
        run_dppso_reference(*problem, hypers, groups, args.n, args.iters, args.seed);

    bool traces_equal = tensor.trace.size() == oracle.trace.size();
    for (std::size_t i = 0; traces_equal && i < tensor.trace.size(); ++i)
        traces_equal = tensor.trace[i] == oracle.trace[i];

    const double ratio = tensor.wall_seconds / oracle.wall_seconds;
    const fs::path dir = fs::path(args.out) / "scale";
    fs::create_directories(dir);
    const json report{{"problem", args.problem},
                      {"groups", groups},
                      {"per_group", args.n},
                      {"dim", args.d},
                      {"iterations", args.iters},
                      {"seed", args.seed},
                      {"tensor_seconds", tensor.wall_seconds},
                      {"oracle_seconds", oracle.wall_seconds},
                      {"ratio", ratio},
                      {"traces_equal", traces_equal}};
    const fs::path report_path = dir / "report.json";
    write_text_file(report_path.string(), report.dump(2) + "\n");
    write_manifest(dir, "scale",
                   json{{"problem", args.problem}, {"n", args.n}, {"d", args.d},
                        {"iterations", args.iters}},
                   json{{"root", args.seed}}, {report_path.string()});
    std::cout << "tensor " << tensor.wall_seconds << " s, per-particle "
              << oracle.wall_seconds << " s, ratio " << ratio
              << (traces_equal ? " (traces identical)" : " (TRACES DIFFER)") << "\n";
    return 0;
}

// --- evolve -----------------------------------------------------------------

struct EvolveArgs {
    std::string problem = "BF1";
    std::size_t evolutions = 500;
    std::size_t inner_iters = 0; ///< 0 = per-problem default
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_evolve(const EvolveArgs& args) {
    std::unique_ptr<FitnessProblem> owned;
    InnerBudget inner;
    if (args.problem == "path") {
        ScenarioConfig scenario;
        scenario.root_seed = args.seed;
        const PolygonWorld world =
            generate_world(scenario, derive_seed(scenario.root_seed, "world"));
        PlannerConfig planner;
        owned = std::make_unique<PathPlanningProblem>(world, planner.dim, planner.alpha,
                                                      planner.beta);
        inner = {planner.groups, planner.per_group, args.inner_iters ? args.inner_iters : 30};
    } else {
        owned = make_benchmark(args.problem);
        inner = {8, 10, args.inner_iters ? args.inner_iters : 500};
    }
    const OuterBudget outer{8, 10, args.evolutions};

    std::cerr << "evolve: " << args.problem << ", " << outer.evolutions
              << " evolutions, inner budget " << inner.groups << "x" << inner.per_group
              << "x" << inner.iterations << "\n";
    const EvolutionReport report =
        evolve(*owned, inner, outer, args.seed, default_group_hypers(),
               [&](std::size_t e, double best) {
                   if (e % 25 == 0 || e == outer.evolutions)
                       std::cerr << "  evolution " << e << ": best LFV " << best << "\n";
               });

    const fs::path dir = fs::path(args.out) / "evolve";
    fs::create_directories(dir);
    const HypersDocument doc{report.best, args.problem, inner, outer, args.seed};
    const fs::path hypers_path = dir / (args.problem + "_hypers.json");
    write_text_file(hypers_path.string(), json(doc).dump(2) + "\n");
    const fs::path report_path = dir / (args.problem + "_evolution.json");
    write_text_file(report_path.string(), json(report).dump(2) + "\n");
    write_manifest(dir, "evolve",
                   json{{"problem", args.problem}, {"inner_budget", inner},
                        {"outer_budget", outer}},
                   json{{"root", args.seed},
                        {"outer", report.outer_seed},
                        {"lfv_root", report.lfv_seed_root}},
                   {hypers_path.string(), report_path.string()});
    std::cout << "best LFV " << report.best_lfv_trace.back() << " after "
              << report.evolutions << " evolutions; hypers written to "
              << hypers_path.string() << "\n";
    return 0;
}

// --- plan -------------------------------------------------------------------

struct PlanArgs {
    std::string variant = "sepso";
    std::string scenario_file;
    std::string hypers_file;
    std::size_t frames = 0; ///< 0 = scenario default
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool window_carryover = false;
    std::size_t svg_stride = 10;
    std::string out;
};

int cmd_plan(const PlanArgs& args) {
    ScenarioConfig scenario;
    if (!args.scenario_file.empty())
        scenario = read_json_file(args.scenario_file).get<ScenarioConfig>();
    if (args.seed_set) scenario.root_seed = args.seed;
    const std::size_t frames = args.frames ? args.frames : scenario.frames;

    const PlannerVariant variant = parse_variant(args.variant);
    HyperMatrix evolved = evolved_path_hypers();
    if (!args.hypers_file.empty()) evolved = load_hypers_file(args.hypers_file);

    PlannerConfig base;
    base.window_carryover = args.window_carryover;

    const SimMetrics metrics = run_scenario(scenario, variant, frames, base, evolved);

    const fs::path dir = fs::path(args.out) / "plan";
    fs::create_directories(dir);
    std::vector<std::string> outputs;

    const fs::path csv_path = dir / "metrics.csv";
    write_text_file(csv_path.string(), metrics_csv_header() + metrics_csv_row(metrics));
    outputs.push_back(csv_path.string());

    std::string jsonl;
    for (const PlanRecord& r : metrics.records) jsonl += json(r).dump() + "\n";
    const fs::path records_path = dir / "records.jsonl";
    write_text_file(records_path.string(), jsonl);
    outputs.push_back(records_path.string());

    PolygonWorld world = generate_world(scenario, derive_seed(scenario.root_seed, "world"));
    const fs::path world_path = dir / "world_frame0.json";
    write_text_file(world_path.string(), json(world).dump(2) + "\n");
    outputs.push_back(world_path.string());

    if (args.svg_stride > 0) {
        const fs::path frames_dir = dir / "frames";
        fs::create_directories(frames_dir);
        for (std::size_t f = 0; f < frames; ++f) {
            if (f % args.svg_stride == 0) {
                char name[32];
                std::snprintf(name, sizeof name, "frame_%04zu.svg", f);
                const fs::path svg_path = frames_dir / name;
                write_text_file(svg_path.string(),
                                render_frame_svg(world, &metrics.records[f].best_path));
                outputs.push_back(svg_path.string());
            }
            world = step_world(world, scenario.dt);
        }
    }

    write_manifest(dir, "plan",
                   json{{"variant", args.variant}, {"frames", frames},
                        {"scenario", scenario}, {"svg_stride", args.svg_stride},
                        {"window_carryover", args.window_carryover},
                        {"hypers_file", args.hypers_file}},
                   json{{"root", scenario.root_seed}}, outputs);
    std::cout << metrics.variant << ": mean length " << metrics.mean_path_length
              << " cm, mean iterations " << metrics.mean_iterations << ", mean "
              << metrics.mean_wall_seconds * 1e3 << " ms/frame, collision-free fraction "
              << metrics.collision_free_fraction << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarm optimization toolkit: batched PSO, self-evolving "
                 "hyper-parameters, and dynamic path planning"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    const std::string out_root = default_out_root();

    BenchArgs bench;
    bench.out = out_root;
    CLI::App* cb = app.add_subcommand("bench", "benchmark-function optimization runs");
    cb->add_option("--problem", bench.problems, "benchmark ids (BF1..BF4)")
        ->delimiter(',');
    cb->add_option("--algo", bench.algo, "pso | dppso | dtpso | sepso");
    cb->add_option("--trials", bench.trials, "independent trials");
    cb->add_option("--iters", bench.iters, "iterations per trial");
    cb->add_option("--seed", bench.seed, "root seed");
    cb->add_option("--jobs", bench.jobs, "parallel trial workers");
    cb->add_option("--hypers", bench.hypers_file, "evolved hyper matrix JSON (sepso)");
    cb->add_option("--out", bench.out, "output directory root");

    ScaleArgs scale;
    scale.out = out_root;
    CLI::App* cs = app.add_subcommand("scale", "time the batched vs per-particle paths");
    cs->add_option("--n", scale.n, "particles per group");
    cs->add_option("--d", scale.d, "dimensions");
    cs->add_option("--iters", scale.iters, "iterations");
    cs->add_option("--problem", scale.problem, "benchmark id");
    cs->add_option("--seed", scale.seed, "root seed");
    cs->add_option("--out", scale.out, "output directory root");

    EvolveArgs evo;
    evo.out = out_root;
    CLI::App* ce = app.add_subcommand("evolve", "self-evolve hyper-parameters");
    ce->add_option("--problem", evo.problem, "BF1..BF4 or 'path'");
    ce->add_option("--evolutions", evo.evolutions, "outer iterations");
    ce->add_option("--inner-iters", evo.inner_iters, "inner run iterations");
    ce->add_option("--seed", evo.seed, "root seed");
    ce->add_option("--out", evo.out, "output directory root");

    PlanArgs plan;
    plan.out = out_root;
    CLI::App* cp = app.add_subcommand("plan", "run a dynamic planning scenario");
    cp->add_option("--variant", plan.variant,
                   "sepso | sepso-noat | sepso-nopi | dtpso | dppso | pso");
    cp->add_option("--scenario", plan.scenario_file, "scenario config JSON");
    cp->add_option("--hypers", plan.hypers_file, "evolved hyper matrix JSON");
    cp->add_option("--frames", plan.frames, "frames to simulate");
    CLI::Option* seed_opt = cp->add_option("--seed", plan.seed, "scenario root seed");
    cp->add_flag("--window-carryover", plan.window_carryover,
                 "carry the truncation window across frames");
    cp->add_option("--svg-stride", plan.svg_stride, "render every k-th frame (0 = none)");
    cp->add_option("--out", plan.out, "output directory root");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cb->parsed()) return cmd_bench(bench);
        if (cs->parsed()) return cmd_scale(scale);
        if (ce->parsed()) return cmd_evolve(evo);
        if (cp->parsed()) {
            plan.seed_set = seed_opt->count() > 0;
            return cmd_plan(plan);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
