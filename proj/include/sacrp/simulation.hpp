#pragma once

#include "sacrp/state.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sacrp {

/// (target, retrieval level) pins the current height of the target.
struct Anchor {
    int target = -1;
    int level = 0;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// One retrieval cycle: ordered targets, a residual level per stack (index
/// stack-1), and the number of ULs lifted.
struct CyclePlan {
    std::vector<int> order;
    std::vector<int> clearances;
    int energy = 0;
    std::optional<Anchor> anchor;
};

struct Solution {
    std::vector<CyclePlan> cycles;
    long total_energy = 0;
};

struct CycleOutcome {
    SliceState next;
    int energy;
};

/// Runs one cycle under the normative semantics.
///
/// Stack t starts the cycle at residual clearances[t-1]; every retrieval
/// lowers the residual of its own stack by one. Retrieving a target at
/// current height h from stack t needs residual(t) == h and residual(s) ==
/// h - 1 for every s < t. Energy is the number of ULs above the clearance.
/// Throws AccessibilityError naming the step, condition and stack.
CycleOutcome simulate_cycle(const SliceState& state, std::span<const int> order,
                            std::span<const int> clearances);

/// Clearances forced by a retrieval order. Every constrained stack has
/// exactly one admissible level; stacks nobody passes keep everything down.
/// Throws AccessibilityError when the demands conflict or leave 0..height.
std::vector<int> infer_clearances(const SliceState& state, std::span<const int> order);

struct Replay {
    Solution solution;   // clearances filled in, energies recomputed
    SliceState final_state;
};

/// Replays a solution from the pristine layout. Cycles with empty
/// clearances get the forced ones. Checks every target is retrieved exactly
/// once.
Replay replay_solution(const Instance& instance, const Solution& solution);

/// Total energy of a solution, validated by replay.
long simulate_solution(const Instance& instance, const Solution& solution);

}  // namespace sacrp
