#pragma once

#include "sacrp/instgen.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sacrp {

struct GridPoint {
    int d = 0;
    int w = 0;
    int h = 0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// d in {5,10,15}, w and h in {8,12,16}.
std::vector<GridPoint> small_grid();
/// d in {18,21,24}, w and h in {20,24,28}.
std::vector<GridPoint> large_grid();

struct BenchSpec {
    std::vector<GridPoint> grid;
    int seeds = 30;                 // instances per grid point, seeds 1..seeds
    std::vector<std::string> solvers{"dp", "greedy"};
    double time_limit_seconds = 600.0;
    unsigned threads = 0;           // 0: hardware concurrency
    int max_rejects = 10000;
};

inline const char* const kBenchCsvHeader =
    "d,w,h,seed,solver,energy,isOptimal,gapPercent,runtimeMs,totalStates,exploredStates,timedOut";

struct BenchRow {
    int d = 0;
    int w = 0;
    int h = 0;
    std::uint64_t seed = 0;
    std::string solver;
    std::optional<long> energy;
    std::optional<bool> is_optimal;
    std::optional<double> gap_percent;  // against the DP optimum
    double runtime_ms = 0.0;
    std::optional<std::uint64_t> total_states;
    std::optional<std::uint64_t> explored_states;
    bool timed_out = false;
};

using BenchProgress = std::function<void(const BenchRow&)>;

/// One row per (instance, solver), ordered by grid point, seed, solver.
/// Each instance runs all its solvers on one worker. Every returned
/// solution is replayed through the simulator; a mismatch throws Error.
/// Gaps need the DP among the solvers and a finished DP run; they are null
/// otherwise and when the optimum is 0 but the solver spent energy.
std::vector<BenchRow> run_benchmark(const BenchSpec& spec, const BenchProgress& progress = {});

std::string bench_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench_csv(const std::string& text);

struct BenchAggregate {
    GridPoint point;
    std::string solver;
    int runs = 0;
    int solved = 0;
    int timeouts = 0;
    std::optional<double> mean_energy;
    std::optional<double> mean_gap_percent;
    std::optional<double> optimal_share;     // among rows with a verdict
    double mean_runtime_ms = 0.0;
    std::optional<double> mean_total_states;
    std::optional<double> mean_explored_states;
};

/// Per grid point and solver, in first-appearance order.
std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows);
std::string aggregate_csv(const std::vector<BenchAggregate>& table);

}  // namespace sacrp
