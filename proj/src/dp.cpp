#include "sacrp/dp.hpp"

#include "sacrp/error.hpp"
#include "sacrp/feasibility.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <thread>

#include <json.hpp>

namespace sacrp {

bool DpStats::same_counts(const DpStats& o) const {
    return total_states == o.total_states && explored_states == o.explored_states &&
           generated_transitions == o.generated_transitions && timed_out == o.timed_out &&
           rule1_forced == o.rule1_forced && rule2_pruned == o.rule2_pruned && rule3_pruned == o.rule3_pruned &&
           infeasible_pruned == o.infeasible_pruned;
}

namespace {

bool retrievable_alone(const SliceState& state, int target) {
    const Position p = state.position(target);
    for (int s = 1; s < p.stack; ++s) {
        if (state.stack_height(s) < p.height - 1) return false;
    }
    return true;
}

TargetSet open_in_stack(const SliceState& state, int stack) {
    return state.instance().targets_in_stack(stack) & state.unretrieved();
}

}  // namespace

std::optional<int> dominance_rule_1(const SliceState& state) {
    const TargetSet open = state.unretrieved();
    if (open == 0) return std::nullopt;
    int leftmost = 0;
    for (int s = 1; s <= state.stack_count(); ++s) {
        if (open_in_stack(state, s) != 0) {
            leftmost = s;
            break;
        }
    }
    const TargetSet column = open_in_stack(state, leftmost);
    if (std::popcount(column) != 1) return std::nullopt;
    const int candidate = std::countr_zero(column);
    const int height = state.target_height(candidate);
    for (TargetSet rest = open & ~column; rest != 0; rest &= rest - 1) {
        if (state.target_height(std::countr_zero(rest)) >= height) return std::nullopt;
    }
    if (!retrievable_alone(state, candidate)) return std::nullopt;
    return candidate;
}

bool dominance_rule_2(const SliceState& state, TargetSet batch) {
    if (std::popcount(batch) != 1) return false;
    const int lower = std::countr_zero(batch);
    const Position p = state.position(lower);
    const int upper = state.occupant({p.stack, p.height + 1});
    return upper >= 0 && retrievable_alone(state, upper) && retrievable_alone(state, lower);
}

bool dominance_rule_3(const SliceState& state, TargetSet with_i, TargetSet without_i) {
    if ((without_i & ~with_i) != 0 || std::popcount(with_i ^ without_i) != 1 || without_i == 0) return false;
    const int i = std::countr_zero(with_i ^ without_i);
    if (state.is_retrieved(i)) return false;
    const Position pi = state.position(i);
    if (open_in_stack(state, pi.stack) != bit(i)) return false;

    bool level_partner = false;
    for (TargetSet rest = without_i; rest != 0 && !level_partner; rest &= rest - 1) {
        const Position pj = state.position(std::countr_zero(rest));
        if (pj.height != pi.height || pj.stack >= pi.stack) continue;
        bool clear_between = true;
        for (int s = pj.stack + 1; s < pi.stack && clear_between; ++s) clear_between = open_in_stack(state, s) == 0;
        level_partner = clear_between;
    }
    if (!level_partner) return false;
    // Without this clause the exchange argument breaks: a later cycle that
    // lowers the same stacks for a target further right can carry i almost
    // for free. With nothing left to the right, later cycles never pass
    // through i's stack, so taking i now costs at most what it saves later.
    for (int s = pi.stack + 1; s <= state.stack_count(); ++s) {
        if ((open_in_stack(state, s) & ~with_i) != 0) return false;
    }
    if (!is_retrievable_batch(state, with_i)) return false;
    return check_feasibility(state.instance(), state.retrieved() | with_i);
}

int rule_3_witness(const SliceState& state, TargetSet batch) {
    for (TargetSet rest = state.unretrieved() & ~batch; rest != 0; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        if (dominance_rule_3(state, batch | bit(i), batch)) return i;
    }
    return -1;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

struct Expansion {
    std::vector<EnumeratedBatch> arcs;
    std::uint64_t rule1 = 0;
    std::uint64_t rule2 = 0;
    std::uint64_t rule3 = 0;
    std::uint64_t infeasible = 0;
};

Expansion expand(const Instance& instance, const SparseView& view, TargetSet mask, const DpOptions& options) {
    const SliceState state(instance, mask);
    Expansion out;
    auto keep = [&](const EnumeratedBatch& b) {
        if (options.feasibility_pruning && !check_feasibility(instance, mask | b.members)) {
            ++out.infeasible;
            return;
        }
        if (options.rule2 && dominance_rule_2(state, b.members)) {
            ++out.rule2;
            return;
        }
        if (options.rule3 && rule_3_witness(state, b.members) >= 0) {
            ++out.rule3;
            return;
        }
        out.arcs.push_back(b);
    };
    if (options.rule1) {
        if (auto forced = dominance_rule_1(state)) {
            ++out.rule1;
            const Anchor anchor{*forced, state.level(*forced)};
            const TargetSet single = bit(*forced);
            keep({single, anchor, cycle_energy_closed_form(state, view, anchor, single)});
            return out;
        }
    }
    for_each_batch(state, view, keep);
    return out;
}

// Expands a block of states, on worker threads when asked. Results are
// indexed like `masks`, so relaxation order never depends on scheduling.
std::vector<Expansion> expand_block(const Instance& instance, const SparseView& view,
                                    const std::vector<TargetSet>& masks, const DpOptions& options) {
    std::vector<Expansion> out(masks.size());
    const unsigned workers =
        options.parallel ? std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(masks.size())))
                         : 1U;
    if (workers <= 1) {
        for (std::size_t k = 0; k < masks.size(); ++k) out[k] = expand(instance, view, masks[k], options);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < masks.size(); k = next++) out[k] = expand(instance, view, masks[k], options);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

// Next larger mask with the same popcount.
std::uint32_t next_same_popcount(std::uint32_t v) {
    const std::uint32_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

DpResult solve_dp(const Instance& instance, const DpOptions& options) {
    const auto start = Clock::now();
    const int n = instance.target_count();
    if (n > kDpMaxTargets) {
        throw Error("DP limited to " + std::to_string(kDpMaxTargets) + " targets, instance has " + std::to_string(n));
    }
    if (!(options.time_limit_seconds > 0)) throw Error("time limit must be positive");
    if (auto v = find_feasibility_violation(SliceState(instance))) {
        throw InfeasibleError("target " + std::to_string(v->target) + " is blocked by stack " +
                              std::to_string(v->stack));
    }

    const SparseView view = derive_sparse(instance);
    const std::uint32_t full = static_cast<std::uint32_t>(instance.all_targets());
    const std::size_t states = std::size_t{1} << n;
    std::vector<std::int32_t> dist(states, kUnreached);
    std::vector<std::uint32_t> pred(states, 0);
    dist[0] = 0;

    DpResult result;
    DpStats& stats = result.stats;
    stats.total_states = states;
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(options.time_limit_seconds));
    constexpr std::size_t kBlock = 256;

    std::vector<TargetSet> block;
    auto flush = [&] {
        const auto expansions = expand_block(instance, view, block, options);
        for (std::size_t k = 0; k < block.size(); ++k) {
            const auto mask = static_cast<std::uint32_t>(block[k]);
            const Expansion& e = expansions[k];
            stats.rule1_forced += e.rule1;
            stats.rule2_pruned += e.rule2;
            stats.rule3_pruned += e.rule3;
            stats.infeasible_pruned += e.infeasible;
            stats.generated_transitions += e.arcs.size();
            std::optional<SliceState> source;
            if (options.observer) source.emplace(instance, mask);
            for (const EnumeratedBatch& arc : e.arcs) {
                if (options.observer) options.observer(*source, arc);
                const std::uint32_t next = mask | static_cast<std::uint32_t>(arc.members);
                const std::int32_t cand = dist[mask] + arc.energy;
                if (cand < dist[next]) {
                    dist[next] = cand;
                    pred[next] = mask;
                }
            }
        }
        block.clear();
        return Clock::now() < deadline;
    };

    bool in_time = true;
    for (int k = 0; k < n && in_time; ++k) {
        for (std::uint32_t mask = (1U << k) - 1U; mask <= full; mask = next_same_popcount(mask)) {
            if (dist[mask] != kUnreached) {
                ++stats.explored_states;
                block.push_back(mask);
                if (block.size() == kBlock && !(in_time = flush())) break;
            }
            if (k == 0) break;
        }
        if (in_time && !block.empty()) in_time = flush();
    }
    if (in_time && dist[full] != kUnreached) ++stats.explored_states;
    stats.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (!in_time) {
        stats.timed_out = true;
        return result;
    }
    if (dist[full] == kUnreached) throw InfeasibleError("no complete retrieval found");

    std::vector<TargetSet> path;
    for (std::uint32_t at = full; at != 0; at = pred[at]) path.push_back(at);
    std::reverse(path.begin(), path.end());
    Solution solution;
    TargetSet previous = 0;
    for (TargetSet at : path) {
        const SliceState state(instance, previous);
        solution.cycles.push_back(plan_cycle(state, at & ~previous));
        solution.total_energy += solution.cycles.back().energy;
        previous = at;
    }
    if (solution.total_energy != dist[full]) {
        throw Error("internal: reconstructed energy " + std::to_string(solution.total_energy) +
                    " differs from the DP value " + std::to_string(dist[full]));
    }
    result.solution = std::move(solution);
    return result;
}

std::string stats_json(const DpStats& s) {
    nlohmann::ordered_json doc;
    doc["total_states"] = s.total_states;
    doc["explored_states"] = s.explored_states;
    doc["generated_transitions"] = s.generated_transitions;
    doc["runtime_ms"] = s.runtime_ms;
    doc["timed_out"] = s.timed_out;
    doc["dominance"] = {{"rule1_forced", s.rule1_forced},
                        {"rule2_pruned", s.rule2_pruned},
                        {"rule3_pruned", s.rule3_pruned}};
    doc["infeasible_pruned"] = s.infeasible_pruned;
    return doc.dump();
}

}  // namespace sacrp
