#include "sacrp/bench.hpp"

#include "sacrp/dp.hpp"
#include "sacrp/error.hpp"
#include "sacrp/greedy.hpp"
#include "sacrp/oracle.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace sacrp {

namespace {

std::vector<GridPoint> cross(std::initializer_list<int> ds, std::initializer_list<int> ws,
                             std::initializer_list<int> hs) {
    std::vector<GridPoint> out;
    for (int d : ds) {
        for (int w : ws) {
            for (int h : hs) out.push_back({d, w, h});
        }
    }
    return out;
}

}  // namespace

std::vector<GridPoint> small_grid() { return cross({5, 10, 15}, {8, 12, 16}, {8, 12, 16}); }
std::vector<GridPoint> large_grid() { return cross({18, 21, 24}, {20, 24, 28}, {20, 24, 28}); }

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_replay(const Instance& inst, const Solution& sol, const std::string& solver) {
    const long replayed = simulate_solution(inst, sol);
    if (replayed != sol.total_energy) {
        throw Error(solver + " reported energy " + std::to_string(sol.total_energy) + " but the plan replays to " +
                    std::to_string(replayed));
    }
}

std::vector<BenchRow> run_instance(const BenchSpec& spec, GridPoint p, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    for (const std::string& solver : spec.solvers) {
        BenchRow row;
        row.d = p.d;
        row.w = p.w;
        row.h = p.h;
        row.seed = seed;
        row.solver = solver;
        rows.push_back(row);
    }

    GenConfig config{p.d, p.w, p.h, seed, spec.max_rejects};
    std::optional<Instance> inst;
    try {
        inst = generate_instance(config);
    } catch (const Error&) {
        return rows;  // unsatisfiable grid point: rows stay empty
    }

    std::optional<long> optimum;
    for (BenchRow& row : rows) {
        const auto start = Clock::now();
        if (row.solver == "dp") {
            DpOptions options;
            options.time_limit_seconds = spec.time_limit_seconds;
            const DpResult r = solve_dp(*inst, options);
            row.runtime_ms = elapsed_ms(start);
            row.total_states = r.stats.total_states;
            row.explored_states = r.stats.explored_states;
            row.timed_out = r.stats.timed_out;
            if (r.solution) {
                check_replay(*inst, *r.solution, "dp");
                row.energy = r.solution->total_energy;
                row.is_optimal = true;
                optimum = row.energy;
            }
        } else if (row.solver == "greedy") {
            const GreedyResult r = solve_greedy(*inst);
            row.runtime_ms = elapsed_ms(start);
            check_replay(*inst, r.solution, "greedy");
            row.energy = r.solution.total_energy;
        } else if (row.solver == "oracle") {
            if (inst->target_count() <= OracleOptions{}.max_targets) {
                const Solution s = solve_oracle(*inst);
                check_replay(*inst, s, "oracle");
                row.energy = s.total_energy;
                row.is_optimal = true;
                if (!optimum) optimum = row.energy;
            }
            row.runtime_ms = elapsed_ms(start);
        } else {
            throw Error("unknown solver " + row.solver);
        }
    }
    if (optimum) {
        for (BenchRow& row : rows) {
            if (!row.energy) continue;
            row.is_optimal = *row.energy == *optimum;
            if (*optimum > 0) {
                row.gap_percent = 100.0 * static_cast<double>(*row.energy - *optimum) / static_cast<double>(*optimum);
            } else if (*row.energy == 0) {
                row.gap_percent = 0.0;
            }
        }
    }
    return rows;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchSpec& spec, const BenchProgress& progress) {
    for (const std::string& s : spec.solvers) {
        if (s != "dp" && s != "greedy" && s != "oracle") throw Error("unknown solver " + s);
    }
    if (spec.seeds < 1) throw Error("need at least one seed");
    if (!(spec.time_limit_seconds > 0)) throw Error("time limit must be positive");

    struct Job {
        GridPoint point;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const GridPoint& p : spec.grid) {
        for (int k = 1; k <= spec.seeds; ++k) jobs.push_back({p, static_cast<std::uint64_t>(k)});
    }
    std::vector<std::vector<BenchRow>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex report;
    std::exception_ptr failure;

    auto work = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                results[k] = run_instance(spec, jobs[k].point, jobs[k].seed);
            } catch (...) {
                std::lock_guard lock(report);
                if (!failure) failure = std::current_exception();
                next = jobs.size();
                return;
            }
            if (progress) {
                std::lock_guard lock(report);
                for (const BenchRow& row : results[k]) progress(row);
            }
        }
    };
    unsigned threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<BenchRow> rows;
    for (auto& chunk : results) {
        for (auto& row : chunk) rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

template <typename T>
std::string optional_field(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, bool>) {
        return *v ? "true" : "false";
    } else if constexpr (std::is_floating_point_v<T>) {
        return number(*v);
    } else {
        return std::to_string(*v);
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
    T value{};
    const auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
        throw ParseError(std::string("bad ") + what + " field \"" + s + "\"");
    }
    return value;
}

bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError("bad boolean \"" + s + "\"");
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = std::string(kBenchCsvHeader) + "\n";
    for (const BenchRow& r : rows) {
        out += std::to_string(r.d) + "," + std::to_string(r.w) + "," + std::to_string(r.h) + "," +
               std::to_string(r.seed) + "," + r.solver + "," + optional_field(r.energy) + "," +
               optional_field(r.is_optimal) + "," + optional_field(r.gap_percent) + "," + number(r.runtime_ms) + "," +
               optional_field(r.total_states) + "," + optional_field(r.explored_states) + "," +
               (r.timed_out ? "true" : "false") + "\n";
    }
    return out;
}

std::vector<BenchRow> parse_bench_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kBenchCsvHeader) throw ParseError("missing benchmark CSV header");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 12) throw ParseError("expected 12 fields in \"" + line + "\"");
        BenchRow r;
        r.d = parse_number<int>(f[0], "d");
        r.w = parse_number<int>(f[1], "w");
        r.h = parse_number<int>(f[2], "h");
        r.seed = parse_number<std::uint64_t>(f[3], "seed");
        r.solver = f[4];
        if (!f[5].empty()) r.energy = parse_number<long>(f[5], "energy");
        if (!f[6].empty()) r.is_optimal = parse_bool(f[6]);
        if (!f[7].empty()) r.gap_percent = parse_number<double>(f[7], "gapPercent");
        r.runtime_ms = parse_number<double>(f[8], "runtimeMs");
        if (!f[9].empty()) r.total_states = parse_number<std::uint64_t>(f[9], "totalStates");
        if (!f[10].empty()) r.explored_states = parse_number<std::uint64_t>(f[10], "exploredStates");
        r.timed_out = parse_bool(f[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows) {
    struct Sums {
        BenchAggregate agg;
        double energy = 0, gap = 0, states = 0, explored = 0;
        int gaps = 0, verdicts = 0, optimal = 0, state_rows = 0;
    };
    std::vector<Sums> table;
    std::map<std::tuple<int, int, int, std::string>, std::size_t> index;
    for (const BenchRow& r : rows) {
        const auto key = std::make_tuple(r.d, r.w, r.h, r.solver);
        auto [it, fresh] = index.emplace(key, table.size());
        if (fresh) {
            table.emplace_back();
            table.back().agg.point = {r.d, r.w, r.h};
            table.back().agg.solver = r.solver;
        }
        Sums& s = table[it->second];
        ++s.agg.runs;
        s.agg.mean_runtime_ms += r.runtime_ms;
        if (r.timed_out) ++s.agg.timeouts;
        if (r.energy) {
            ++s.agg.solved;
            s.energy += static_cast<double>(*r.energy);
        }
        if (r.gap_percent) {
            ++s.gaps;
            s.gap += *r.gap_percent;
        }
        if (r.is_optimal) {
            ++s.verdicts;
            if (*r.is_optimal) ++s.optimal;
        }
        if (r.total_states && r.explored_states) {
            ++s.state_rows;
            s.states += static_cast<double>(*r.total_states);
            s.explored += static_cast<double>(*r.explored_states);
        }
    }
    std::vector<BenchAggregate> out;
    for (Sums& s : table) {
        BenchAggregate a = s.agg;
        a.mean_runtime_ms /= a.runs;
        if (a.solved) a.mean_energy = s.energy / a.solved;
        if (s.gaps) a.mean_gap_percent = s.gap / s.gaps;
        if (s.verdicts) a.optimal_share = static_cast<double>(s.optimal) / s.verdicts;
        if (s.state_rows) {
            a.mean_total_states = s.states / s.state_rows;
            a.mean_explored_states = s.explored / s.state_rows;
        }
        out.push_back(a);
    }
    return out;
}

std::string aggregate_csv(const std::vector<BenchAggregate>& table) {
    std::string out =
        "d,w,h,solver,runs,solved,timeouts,meanEnergy,meanGapPercent,optimalShare,meanRuntimeMs,meanTotalStates,"
        "meanExploredStates\n";
    for (const BenchAggregate& a : table) {
        out += std::to_string(a.point.d) + "," + std::to_string(a.point.w) + "," + std::to_string(a.point.h) + "," +
               a.solver + "," + std::to_string(a.runs) + "," + std::to_string(a.solved) + "," +
               std::to_string(a.timeouts) + "," + optional_field(a.mean_energy) + "," +
               optional_field(a.mean_gap_percent) + "," + optional_field(a.optimal_share) + "," +
               number(a.mean_runtime_ms) + "," + optional_field(a.mean_total_states) + "," +
               optional_field(a.mean_explored_states) + "\n";
    }
    return out;
}

}  // namespace sacrp
