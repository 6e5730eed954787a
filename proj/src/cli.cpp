#include "sacrp/cli.hpp"

#include "sacrp/bench.hpp"
#include "sacrp/dp.hpp"
#include "sacrp/error.hpp"
#include "sacrp/feasibility.hpp"
#include "sacrp/greedy.hpp"
#include "sacrp/instgen.hpp"
#include "sacrp/mip.hpp"
#include "sacrp/oracle.hpp"
#include "sacrp/solution_io.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace sacrp {

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

// Domain failure that should surface as exit code 1.
struct Failure : Error {
    using Error::Error;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string summary(const Solution& s) {
    return "energy=" + std::to_string(s.total_energy) + " cycles=" + std::to_string(s.cycles.size());
}

struct Args {
    // gen
    int d = 0, w = 0, h = 0;
    std::uint64_t seed = 1;
    int max_rejects = 10000;
    // shared
    std::string in, out, sol, lp_sol;
    bool json = false;
    // solve
    std::string algo = "dp";
    std::vector<std::string> no_dominance;
    double time_limit = 600.0;
    bool stats = false;
    bool parallel = false;
    bool trace = false;
    // bench
    std::string grid = "small";
    int seeds = 30;
    std::vector<int> ds, ws, hs;
    std::vector<std::string> solvers{"dp", "greedy"};
    unsigned threads = 0;
    std::string aggregate_out;
};

int cmd_gen(const Args& a, std::ostream& out) {
    GenConfig config{a.d, a.w, a.h, a.seed, a.max_rejects};
    const Instance inst = generate_instance(config);
    if (a.out.empty()) {
        out << write_instance(inst) << '\n';
    } else {
        save_instance(inst, a.out);
        out << "wrote " << a.out << " targets=" << inst.target_count() << " stacks=" << inst.stack_count() << '\n';
    }
    return 0;
}

DpOptions dp_options(const Args& a) {
    DpOptions o;
    o.time_limit_seconds = a.time_limit;
    o.parallel = a.parallel;
    for (const std::string& rule : a.no_dominance) {
        if (rule == "1") o.rule1 = false;
        else if (rule == "2") o.rule2 = false;
        else if (rule == "3") o.rule3 = false;
        else if (rule == "all") o.rule1 = o.rule2 = o.rule3 = false;
    }
    return o;
}

int cmd_solve(const Args& a, std::ostream& out) {
    const Instance inst = load_instance(a.in);
    Solution solution;
    std::optional<DpStats> stats;
    std::optional<GreedyTrace> trace;
    if (a.algo == "dp") {
        const DpResult r = solve_dp(inst, dp_options(a));
        stats = r.stats;
        if (!r.solution) {
            if (a.stats) out << stats_json(r.stats) << '\n';
            throw Failure("time limit reached after " + std::to_string(r.stats.explored_states) +
                          " explored states; no solution");
        }
        solution = *r.solution;
    } else if (a.algo == "greedy") {
        GreedyResult r = solve_greedy(inst);
        solution = std::move(r.solution);
        trace = std::move(r.trace);
    } else {
        solution = solve_oracle(inst);
    }
    if (!a.out.empty()) save_solution(solution, a.out);
    if (a.json) {
        out << write_solution(solution) << '\n';
    } else {
        out << summary(solution) << '\n';
    }
    if (a.stats && stats) out << stats_json(*stats) << '\n';
    if (a.trace && trace) out << trace_json(*trace) << '\n';
    return 0;
}

int cmd_validate(const Args& a, std::ostream& out) {
    const Instance inst = load_instance(a.in);
    const Solution sol = load_solution(a.sol);
    try {
        const Replay r = replay_solution(inst, sol);
        if (a.json) {
            nlohmann::ordered_json doc;
            doc["valid"] = true;
            doc["energy"] = r.solution.total_energy;
            doc["cycle_energies"] = nlohmann::ordered_json::array();
            for (const CyclePlan& c : r.solution.cycles) doc["cycle_energies"].push_back(c.energy);
            out << doc.dump() << '\n';
        } else {
            out << "energy=" << r.solution.total_energy << " OK\n";
        }
        return 0;
    } catch (const AccessibilityError& e) {
        throw Failure(std::string("INVALID: ") + e.what());
    } catch (const ValidationError& e) {
        throw Failure(std::string("INVALID: ") + e.what());
    }
}

int cmd_export(const Args& a, std::ostream& out) {
    const Instance inst = load_instance(a.in);
    const ModelCounts c = export_model(inst, a.out);
    out << "binaries=" << c.binaries << " continuous=" << c.continuous << " constraints=" << c.constraints << '\n';
    return 0;
}

int cmd_import(const Args& a, std::ostream& out) {
    const Instance inst = load_instance(a.in);
    const Solution sol = import_solution(inst, load_assignment(a.lp_sol));
    if (!a.out.empty()) save_solution(sol, a.out);
    out << summary(sol) << '\n';
    return 0;
}

int cmd_feas(const Args& a, std::ostream& out) {
    const Instance inst = load_instance(a.in);
    const auto v = find_feasibility_violation(SliceState(inst));
    if (a.json) {
        nlohmann::ordered_json doc;
        doc["feasible"] = !v.has_value();
        if (v) doc["violation"] = {{"target", v->target}, {"stack", v->stack}, {"required", v->required},
                                   {"actual", v->actual}};
        out << doc.dump() << '\n';
        return v ? kDomainError : 0;
    }
    if (!v) {
        out << "feasible\n";
        return 0;
    }
    const Position& p = inst.target(v->target);
    throw Failure("infeasible: target " + std::to_string(v->target) + " at (" + std::to_string(p.stack) + "," +
                  std::to_string(p.height) + ") needs stack " + std::to_string(v->stack) + " to be at least " +
                  std::to_string(v->required) + " high, it is " + std::to_string(v->actual));
}

int cmd_bench(const Args& a, std::ostream& out, std::ostream& err) {
    BenchSpec spec;
    if (a.grid == "small") {
        spec.grid = small_grid();
    } else if (a.grid == "large") {
        spec.grid = large_grid();
    } else {
        if (a.ds.empty() || a.ws.empty() || a.hs.empty()) {
            throw CLI::ValidationError("--grid custom needs --d, --w and --h");
        }
        for (int d : a.ds) {
            for (int w : a.ws) {
                for (int h : a.hs) spec.grid.push_back({d, w, h});
            }
        }
    }
    spec.seeds = a.seeds;
    spec.solvers = a.solvers;
    spec.time_limit_seconds = a.time_limit;
    spec.threads = a.threads;
    std::size_t done = 0;
    const std::size_t total = spec.grid.size() * static_cast<std::size_t>(spec.seeds) * spec.solvers.size();
    const auto rows = run_benchmark(spec, [&](const BenchRow&) {
        if (++done % 50 == 0 || done == total) err << "bench: " << done << "/" << total << " runs\n";
    });
    const std::string csv = bench_csv(rows);
    if (a.out.empty()) {
        out << csv;
    } else {
        write_file(a.out, csv);
    }
    const auto table = aggregate(rows);
    if (!a.aggregate_out.empty()) write_file(a.aggregate_out, aggregate_csv(table));
    if (!a.out.empty()) out << aggregate_csv(table);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-minimal retrieval planning for shuttle-accessed compact storage slices.", "sacrp"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Args a;

    auto* gen = app.add_subcommand("gen", "Generate a random feasible instance");
    gen->add_option("-d", a.d, "Number of targets")->required()->check(CLI::PositiveNumber);
    gen->add_option("-w", a.w, "Maximum number of stacks")->required()->check(CLI::PositiveNumber);
    gen->add_option("-h", a.h, "Maximum stack height")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", a.seed, "Random seed")->capture_default_str();
    gen->add_option("--max-rejects", a.max_rejects, "Infeasible draws tolerated")->capture_default_str();
    gen->add_option("-o,--out", a.out, "Output file (stdout if omitted)");

    auto* solve = app.add_subcommand("solve", "Plan the retrieval of an instance");
    solve->add_option("--algo", a.algo, "Solver")->check(CLI::IsMember({"dp", "greedy", "oracle"}))->capture_default_str();
    solve->add_option("--in", a.in, "Instance file")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", a.out, "Write the solution here");
    solve->add_option("--no-dominance", a.no_dominance, "Disable dominance rule 1, 2, 3 or all (repeatable)")
        ->check(CLI::IsMember({"1", "2", "3", "all"}));
    solve->add_option("--time-limit", a.time_limit, "DP time limit in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    solve->add_flag("--parallel", a.parallel, "Expand DP states on all cores");
    solve->add_flag("--stats", a.stats, "Print DP statistics as JSON");
    solve->add_flag("--trace", a.trace, "Print the greedy trace as JSON");
    solve->add_flag("--json", a.json, "Print the solution as JSON");

    auto* validate = app.add_subcommand("validate", "Replay a solution and report its energy");
    validate->add_option("--in", a.in, "Instance file")->required()->check(CLI::ExistingFile);
    validate->add_option("--sol", a.sol, "Solution file")->required()->check(CLI::ExistingFile);
    validate->add_flag("--json", a.json, "Machine-readable output");

    auto* lp = app.add_subcommand("export-lp", "Write the integer program in LP format");
    lp->add_option("--in", a.in, "Instance file")->required()->check(CLI::ExistingFile);
    lp->add_option("-o,--out", a.out, "LP file")->required();

    auto* imp = app.add_subcommand("import-sol", "Turn solver variable values into a checked solution");
    imp->add_option("--in", a.in, "Instance file")->required()->check(CLI::ExistingFile);
    imp->add_option("--lp-sol", a.lp_sol, "Values file, `name value` per line")->required()->check(CLI::ExistingFile);
    imp->add_option("--out", a.out, "Write the solution here");

    auto* feas = app.add_subcommand("feas", "Check whether every target can be retrieved");
    feas->add_option("--in", a.in, "Instance file")->required()->check(CLI::ExistingFile);
    feas->add_flag("--json", a.json, "Machine-readable output");

    auto* bench = app.add_subcommand("bench", "Run solvers over a grid of generated instances");
    bench->add_option("--grid", a.grid, "Grid")->check(CLI::IsMember({"small", "large", "custom"}))->capture_default_str();
    bench->add_option("--d", a.ds, "Custom grid: target counts");
    bench->add_option("--w", a.ws, "Custom grid: stack limits");
    bench->add_option("--h", a.hs, "Custom grid: height limits");
    bench->add_option("--seeds", a.seeds, "Instances per grid point")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--solvers", a.solvers, "Solvers to run")
        ->check(CLI::IsMember({"dp", "greedy", "oracle"}))
        ->capture_default_str();
    bench->add_option("--time-limit", a.time_limit, "DP time limit in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--threads", a.threads, "Worker threads (0: all cores)")->capture_default_str();
    bench->add_option("--out", a.out, "CSV with one row per run (stdout if omitted)");
    bench->add_option("--aggregate", a.aggregate_out, "CSV with per-configuration means");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (*gen) return cmd_gen(a, out);
        if (*solve) return cmd_solve(a, out);
        if (*validate) return cmd_validate(a, out);
        if (*lp) return cmd_export(a, out);
        if (*imp) return cmd_import(a, out);
        if (*feas) return cmd_feas(a, out);
        if (*bench) return cmd_bench(a, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Failure& e) {
        err << e.what() << '\n';
        if (a.json) out << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        if (a.json) out << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace sacrp
