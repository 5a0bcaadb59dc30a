#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/decode.hpp"
#include "hgatac/instance.hpp"
#include "hgatac/io.hpp"
#include "hgatac/oracle.hpp"
#include "hgatac/solver.hpp"

namespace {

using namespace hgatac;

struct SharedFlags {
    std::uint64_t seed = 1;
    int repeats = 10;
    std::string variant;
    std::string config_path;
    std::string out_path;
    bool no_l_moves = false;
    bool no_escape = false;
    std::string tsp_tour_path;
    double time_limit = 0.0;
    int jobs = 1;
    std::string format = "native";
    double range_percent = 200.0;
    double endurance_minutes = 40.0;
    double drone_mph = 25.0;
    std::string report_format;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* time_opt = nullptr;
};

void add_shared(CLI::App* cmd, SharedFlags& f, bool with_instance_flags = true) {
    f.seed_opt = cmd->add_option("--seed", f.seed, "base RNG seed");
    cmd->add_option("--repeats", f.repeats, "runs per instance and variant")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--variant", f.variant, "solver variant: tac or tac-plus")
        ->check(CLI::IsMember({"tac", "tac-plus", "tac+"}));
    cmd->add_option("--config", f.config_path, "JSON file with solver parameter overrides");
    cmd->add_option("--out", f.out_path, "write the report to this path instead of stdout");
    cmd->add_flag("--no-l-moves", f.no_l_moves, "disable the L1-L7 neighborhood operators");
    cmd->add_flag("--no-escape", f.no_escape, "disable the local-optima escape procedure");
    cmd->add_option("--tsp-tour", f.tsp_tour_path,
                    "file with a fixed customer tour used by the partition seed");
    f.time_opt = cmd->add_option("--time-limit", f.time_limit,
                                 "wall clock budget per run in seconds (0 = unlimited)");
    cmd->add_option("--jobs", f.jobs, "parallel workers across (instance, repeat) pairs")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--report-format", f.report_format, "report layout: csv or table")
        ->check(CLI::IsMember({"csv", "table"}));
    if (with_instance_flags) {
        cmd->add_option("--format", f.format, "instance file format")
            ->check(CLI::IsMember({"native", "agatz", "murray"}));
        cmd->add_option("--range", f.range_percent,
                        "agatz only: drone range as % of the max pairwise distance");
        cmd->add_option("--endurance", f.endurance_minutes, "murray only: endurance in minutes");
        cmd->add_option("--drone-speed", f.drone_mph,
                        "murray coordinate fallback: drone speed in mph");
    }
}

SolverConfig make_config(const SharedFlags& f) {
    SolverConfig cfg =
        f.config_path.empty() ? SolverConfig{} : SolverConfig::load(f.config_path);
    if (f.seed_opt != nullptr && f.seed_opt->count() > 0) cfg.seed = f.seed;
    if (f.time_opt != nullptr && f.time_opt->count() > 0) cfg.time_limit_s = f.time_limit;
    if (f.no_l_moves) cfg.enable_l_moves = false;
    if (f.no_escape) cfg.enable_escape = false;
    cfg.validate();
    return cfg;
}

std::string report_format_of(const SharedFlags& f) {
    if (!f.report_format.empty()) return f.report_format;
    if (!f.out_path.empty() && f.out_path.size() >= 4 &&
        f.out_path.compare(f.out_path.size() - 4, 4, ".csv") == 0)
        return "csv";
    return "table";
}

void emit_report(const std::vector<RunRecord>& records, const SharedFlags& f) {
    const std::string fmt = report_format_of(f);
    if (f.out_path.empty())
        write_report(records, std::cout, fmt);
    else
        write_report_file(records, f.out_path, fmt);
}

std::vector<Instance> load_instances(const std::string& path, const SharedFlags& f) {
    if (f.format == "agatz") return {parse_agatz(path, f.range_percent)};
    if (f.format == "murray") return {parse_murray(path, f.endurance_minutes, f.drone_mph)};
    return read_native(path);
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
    std::vector<std::string> files;
    for (const std::string& pattern : patterns) {
        glob_t g{};
        const int rc = glob(pattern.c_str(), 0, nullptr, &g);
        if (rc == 0)
            for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
        globfree(&g);
        if (rc != 0 && rc != GLOB_NOMATCH)
            throw std::runtime_error("cannot expand pattern " + pattern);
    }
    return files;
}

std::vector<int> load_tour(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<int> tour;
    int v = 0;
    while (in >> v) tour.push_back(v);
    if (tour.empty()) throw std::invalid_argument(path + ": empty tour file");
    return tour;
}

struct Arm {
    std::string label;
    Variant variant = Variant::TacPlus;
    bool l_moves = true;
};

struct ArmStats {
    double best = std::numeric_limits<double>::infinity();
    double mean = 0.0;
    double mean_time = 0.0;
    int iterations = 0;
};

/// Runs `repeats` independent solves per (instance, arm) cell, optionally on a
/// thread pool. Run r always uses seed base+r, so results do not depend on the
/// worker count.
std::vector<std::vector<ArmStats>> run_matrix(const std::vector<Instance>& insts,
                                              const std::vector<Arm>& arms,
                                              const SolverConfig& base, int repeats,
                                              const std::vector<int>* tour, int jobs) {
    const std::size_t cells = insts.size() * arms.size();
    const std::size_t tasks = cells * static_cast<std::size_t>(repeats);
    std::vector<double> cost(tasks), secs(tasks);
    std::vector<int> iters(tasks);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mx;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks) return;
            const std::size_t cell = t / static_cast<std::size_t>(repeats);
            const int r = static_cast<int>(t % static_cast<std::size_t>(repeats));
            const Instance& inst = insts[cell / arms.size()];
            const Arm& arm = arms[cell % arms.size()];
            try {
                SolverConfig cfg = base;
                cfg.seed = base.seed + static_cast<std::uint64_t>(r);
                cfg.enable_l_moves = base.enable_l_moves && arm.l_moves;
                RunResult res = solve(inst, cfg, arm.variant, tour);
                cost[t] = res.cost;
                secs[t] = res.wall_seconds;
                iters[t] = res.iterations;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mx);
                if (!failure) failure = std::current_exception();
                next.store(tasks);
                return;
            }
        }
    };

    const int threads = std::min<int>(jobs, static_cast<int>(tasks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::vector<ArmStats>> stats(insts.size(),
                                             std::vector<ArmStats>(arms.size()));
    for (std::size_t i = 0; i < insts.size(); ++i) {
        for (std::size_t a = 0; a < arms.size(); ++a) {
            ArmStats& s = stats[i][a];
            const std::size_t cell = i * arms.size() + a;
            for (int r = 0; r < repeats; ++r) {
                const std::size_t t = cell * static_cast<std::size_t>(repeats) +
                                      static_cast<std::size_t>(r);
                if (cost[t] < s.best) {
                    s.best = cost[t];
                    s.iterations = iters[t];
                }
                s.mean += cost[t];
                s.mean_time += secs[t];
            }
            s.mean /= repeats;
            s.mean_time /= repeats;
        }
    }
    return stats;
}

void print_solution(const Instance& inst, const RunResult& res) {
    std::cout << "instance: " << inst.name() << "\n";
    std::cout << "completion time: " << res.cost << "\n";
    std::cout << "iterations: " << res.iterations << ", wall seconds: " << res.wall_seconds
              << "\n";
    std::cout << "chromosome: " << res.best.to_string() << "\n";
    std::cout << "truck route:";
    for (int node : res.solution.truck_route) std::cout << ' ' << node;
    std::cout << "\n";
    for (const Operation& op : res.solution.operations) {
        std::cout << "sortie: launch " << op.launch << ", serve";
        for (int c : op.chain) std::cout << ' ' << c;
        std::cout << ", land " << op.land << ", duration " << op.duration << "\n";
    }
    if (res.solution.operations.empty()) std::cout << "no sorties (truck serves everyone)\n";
}

int cmd_solve(const std::string& path, const SharedFlags& f, const std::string& trace_path) {
    const SolverConfig cfg = make_config(f);
    const Variant variant =
        f.variant.empty() ? Variant::TacPlus : variant_from_string(f.variant);
    std::vector<int> tour;
    if (!f.tsp_tour_path.empty()) tour = load_tour(f.tsp_tour_path);
    const std::vector<int>* tour_ptr = tour.empty() ? nullptr : &tour;

    std::vector<RunRecord> records;
    for (const Instance& inst : load_instances(path, f)) {
        RunResult best_run;
        double sum = 0.0, sum_time = 0.0;
        for (int r = 0; r < f.repeats; ++r) {
            SolverConfig run_cfg = cfg;
            run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
            RunResult res = solve(inst, run_cfg, variant, tour_ptr);
            sum += res.cost;
            sum_time += res.wall_seconds;
            if (r == 0 || res.cost < best_run.cost) best_run = std::move(res);
        }
        print_solution(inst, best_run);
        if (!trace_path.empty()) write_trace(best_run.trace, trace_path);
        records.push_back({inst.name(), cfg.seed, to_string(variant), best_run.cost,
                           sum / f.repeats, sum_time / f.repeats, best_run.iterations,
                           std::numeric_limits<double>::quiet_NaN(), trace_path});
    }
    std::cout << "\n";
    emit_report(records, f);
    return 0;
}

int cmd_bench(const std::vector<std::string>& patterns, const SharedFlags& f) {
    const SolverConfig cfg = make_config(f);
    std::vector<Instance> insts;
    for (const std::string& file : expand_globs(patterns))
        for (Instance& inst : load_instances(file, f)) insts.push_back(std::move(inst));

    std::vector<Arm> arms;
    if (f.variant.empty()) {
        arms.push_back({"tac", Variant::Tac, true});
        arms.push_back({"tac-plus", Variant::TacPlus, true});
    } else {
        const Variant v = variant_from_string(f.variant);
        arms.push_back({to_string(v), v, true});
    }

    std::vector<int> tour;
    if (!f.tsp_tour_path.empty()) {
        if (insts.size() != 1)
            throw std::invalid_argument("--tsp-tour needs exactly one instance");
        tour = load_tour(f.tsp_tour_path);
    }

    const auto stats = run_matrix(insts, arms, cfg, f.repeats,
                                  tour.empty() ? nullptr : &tour, f.jobs);

    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < insts.size(); ++i) {
        double baseline = std::numeric_limits<double>::quiet_NaN();
        if (arms.size() > 1) {
            baseline = stats[i][0].best;
            for (std::size_t a = 1; a < arms.size(); ++a)
                baseline = std::min(baseline, stats[i][a].best);
        }
        for (std::size_t a = 0; a < arms.size(); ++a) {
            const ArmStats& s = stats[i][a];
            records.push_back({insts[i].name(), cfg.seed, arms[a].label, s.best, s.mean,
                               s.mean_time, s.iterations, baseline, ""});
        }
    }
    emit_report(records, f);
    return 0;
}

int cmd_ablate(const std::vector<std::string>& patterns, const SharedFlags& f) {
    const SolverConfig cfg = make_config(f);
    std::vector<Instance> insts;
    for (const std::string& file : expand_globs(patterns))
        for (Instance& inst : load_instances(file, f)) insts.push_back(std::move(inst));

    const Variant variant = f.variant.empty() ? Variant::Tac : variant_from_string(f.variant);
    const std::vector<Arm> arms = {{"l-moves", variant, true}, {"classic", variant, false}};
    const auto stats = run_matrix(insts, arms, cfg, f.repeats, nullptr, f.jobs);

    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const double baseline = stats[i][1].mean; // classical arm anchors the gap
        for (std::size_t a = 0; a < arms.size(); ++a) {
            const ArmStats& s = stats[i][a];
            records.push_back({insts[i].name(), cfg.seed, arms[a].label, s.best, s.mean,
                               s.mean_time, s.iterations, baseline, ""});
        }
    }
    emit_report(records, f);
    return 0;
}

Chromosome random_feasible_chromosome(const Instance& inst, std::mt19937_64& rng) {
    std::vector<int> perm(static_cast<std::size_t>(inst.customers()));
    for (int c = 1; c <= inst.customers(); ++c) perm[static_cast<std::size_t>(c) - 1] = c;
    std::shuffle(perm.begin(), perm.end(), rng);
    Chromosome ch;
    ch.genes.reserve(perm.size());
    bool prev_drone = false;
    std::bernoulli_distribution flip(0.4);
    for (int c : perm) {
        const bool drone = !prev_drone && inst.drone_eligible(c) && flip(rng);
        ch.genes.push_back(drone ? -c : c);
        prev_drone = drone;
    }
    return ch;
}

int cmd_verify(int n, int count, const SharedFlags& f, double alpha, int checks) {
    const SolverConfig cfg = make_config(f);
    const Variant variant =
        f.variant.empty() ? Variant::TacPlus : variant_from_string(f.variant);

    int hits = 0;
    double max_gap = 0.0;
    int mismatches = 0;
    int comparisons = 0;
    for (int i = 0; i < count; ++i) {
        const Instance inst =
            generate_instance(Distribution::Uniform, n, alpha, f.seed + static_cast<std::uint64_t>(i));
        const ExhaustiveResult opt = exhaustive_tspd(inst);

        SolverConfig run_cfg = cfg;
        run_cfg.seed = f.seed + static_cast<std::uint64_t>(i);
        const RunResult res = solve(inst, run_cfg, variant);
        const double gap = (res.cost - opt.best) / opt.best * 100.0;
        max_gap = std::max(max_gap, gap);
        if (gap <= 1e-6) ++hits;

        std::mt19937_64 rng(f.seed * 7919 + static_cast<std::uint64_t>(i));
        for (int c = 0; c < checks; ++c) {
            const Chromosome ch = random_feasible_chromosome(inst, rng);
            const RendezvousResult oracle = enumerate_rendezvous(inst, ch);
            const DecodedSolution dp = join_feasible(inst, ch);
            ++comparisons;
            if (!oracle.feasible || dp.range_violation ||
                std::abs(oracle.best - dp.completion_time) > 1e-9)
                ++mismatches;
        }
    }

    const double hit_rate = 100.0 * hits / count;
    std::cout << "instances: " << count << " (n = " << n << ", alpha = " << alpha << ")\n";
    std::cout << "optimal hits: " << hits << "/" << count << " (" << hit_rate << "%)\n";
    std::cout << "max gap: " << max_gap << "%\n";
    std::cout << "join vs oracle mismatches: " << mismatches << "/" << comparisons << "\n";
    const bool pass = hit_rate >= 95.0 && max_gap <= 2.0 && mismatches == 0;
    std::cout << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_gen(const std::string& out, const SharedFlags& f, const std::string& dist_name, int n,
            double alpha, int count, const std::string& kind, double endurance,
            double launch_setup, double retrieval_setup) {
    GenOptions opts;
    opts.kind = kind == "fstsp" ? ProblemKind::Fstsp : ProblemKind::Tspd;
    opts.endurance = endurance > 0 ? endurance : std::numeric_limits<double>::infinity();
    opts.launch_setup = launch_setup;
    opts.retrieval_setup = retrieval_setup;
    const Distribution dist = distribution_from_string(dist_name);

    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot write " + out);
    for (int i = 0; i < count; ++i)
        write_native(generate_instance(dist, n, alpha, f.seed + static_cast<std::uint64_t>(i), opts),
                     os);
    std::cout << "wrote " << count << " instance" << (count == 1 ? "" : "s") << " to " << out
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truck-and-drone routing solver (TSPD / FSTSP)"};
    app.require_subcommand(1);

    SharedFlags solve_f, bench_f, ablate_f, verify_f, gen_f;

    std::string solve_path, solve_trace;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance file");
    solve_cmd->add_option("instance", solve_path, "instance file")->required();
    add_shared(solve_cmd, solve_f);
    solve_cmd->add_option("--trace", solve_trace, "write the best run's iteration trace here");

    std::vector<std::string> bench_patterns;
    CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark sweep over instance files");
    bench_cmd->add_option("patterns", bench_patterns, "instance files or glob patterns")
        ->expected(-1);
    add_shared(bench_cmd, bench_f);

    std::vector<std::string> ablate_patterns;
    CLI::App* ablate_cmd =
        app.add_subcommand("ablate", "compare runs with and without the L1-L7 operators");
    ablate_cmd->add_option("patterns", ablate_patterns, "instance files or glob patterns")
        ->required();
    add_shared(ablate_cmd, ablate_f);

    int verify_n = 7, verify_count = 50, verify_checks = 20;
    double verify_alpha = 2.0;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "cross-check solver and decoder against exact oracles");
    verify_cmd->add_option("n", verify_n, "customers per instance")->check(CLI::Range(1, 8));
    verify_cmd->add_option("count", verify_count, "number of random instances")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--alpha", verify_alpha, "drone speed ratio");
    verify_cmd->add_option("--checks", verify_checks, "decoder cross-checks per instance");
    add_shared(verify_cmd, verify_f, false);

    std::string gen_out, gen_dist = "uniform", gen_kind = "tspd";
    int gen_n = 10, gen_count = 1;
    double gen_alpha = 2.0, gen_endurance = 0.0, gen_sl = 1.0, gen_sr = 1.0;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate random instances");
    gen_cmd->add_option("output", gen_out, "output file (JSON lines)")->required();
    gen_cmd->add_option("--dist", gen_dist, "uniform, single_center or double_center");
    gen_cmd->add_option("--n", gen_n, "customers")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--alpha", gen_alpha, "drone speed ratio");
    gen_cmd->add_option("--count", gen_count, "instances to generate")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--kind", gen_kind, "tspd or fstsp")
        ->check(CLI::IsMember({"tspd", "fstsp"}));
    gen_cmd->add_option("--endurance", gen_endurance, "flight endurance (0 = unlimited)");
    gen_cmd->add_option("--launch-setup", gen_sl, "FSTSP launch setup time");
    gen_cmd->add_option("--retrieval-setup", gen_sr, "FSTSP retrieval setup time");
    add_shared(gen_cmd, gen_f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_path, solve_f, solve_trace);
        if (bench_cmd->parsed()) return cmd_bench(bench_patterns, bench_f);
        if (ablate_cmd->parsed()) return cmd_ablate(ablate_patterns, ablate_f);
        if (verify_cmd->parsed())
            return cmd_verify(verify_n, verify_count, verify_f, verify_alpha, verify_checks);
        if (gen_cmd->parsed())
            return cmd_gen(gen_out, gen_f, gen_dist, gen_n, gen_alpha, gen_count, gen_kind,
                           gen_endurance, gen_sl, gen_sr);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
