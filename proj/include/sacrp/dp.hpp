#pragma once

#include "sacrp/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace sacrp {

inline constexpr int kDpMaxTargets = 28;

/// Called for every transition the DP relaxes: source state and batch.
using TransitionObserver = std::function<void(const SliceState&, const EnumeratedBatch&)>;

struct DpOptions {
    bool rule1 = true;
    bool rule2 = true;
    bool rule3 = true;
    double time_limit_seconds = 600.0;
    bool parallel = false;
    /// Drop successors that leave some target unreachable.
    bool feasibility_pruning = true;
    /// Not thread-safe to share; invoked from the relaxing thread only.
    TransitionObserver observer;
};

struct DpStats {
    std::uint64_t total_states = 0;
    std::uint64_t explored_states = 0;
    std::uint64_t generated_transitions = 0;
    double runtime_ms = 0.0;
    bool timed_out = false;
    std::uint64_t rule1_forced = 0;
    std::uint64_t rule2_pruned = 0;
    std::uint64_t rule3_pruned = 0;
    std::uint64_t infeasible_pruned = 0;

    /// Everything but the wall clock.
    bool same_counts(const DpStats& other) const;
};

struct DpResult {
    std::optional<Solution> solution;  // empty on timeout
    DpStats stats;
};

/// Shortest path over retrieved sets, stage by stage in popcount order and
/// ascending mask inside a stage. Throws InfeasibleError for infeasible
/// input, Error above kDpMaxTargets or for a non-positive time limit.
DpResult solve_dp(const Instance& instance, const DpOptions& options = {});

/// Target that must be retrieved alone next: the only unretrieved target in
/// the leftmost stack that still has one, strictly higher than every other
/// unretrieved target. Ties are not forced.
std::optional<int> dominance_rule_1(const SliceState& state);

/// True when `batch` is a single target i' with an unretrieved target
/// directly on top of it and both are retrievable alone: swapping the labels
/// gives the same successor for less.
bool dominance_rule_2(const SliceState& state, TargetSet batch);

/// Third rule on a sibling pair: `with_i` is `without_i` plus one target
/// i that is the sole unretrieved target of its stack, level with some
/// member further left, with nothing unretrieved in the stacks between and
/// nothing unretrieved right of it outside the batch; `with_i` must be
/// retrievable and leave a feasible state. Then the arc for `without_i` can
/// be dropped.
bool dominance_rule_3(const SliceState& state, TargetSet with_i, TargetSet without_i);

/// Some i that makes dominance_rule_3(state, batch | i, batch) hold, or -1.
int rule_3_witness(const SliceState& state, TargetSet batch);

std::string stats_json(const DpStats& stats);

}  // namespace sacrp
