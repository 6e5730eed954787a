#include "sacrp/simulation.hpp"

#include "sacrp/error.hpp"

#include <string>

namespace sacrp {

namespace {

std::string describe(int step, int target) {
    return "step " + std::to_string(step) + " (target " + std::to_string(target) + ")";
}

void check_target(const SliceState& state, TargetSet seen, int step, int target) {
    if (target < 0 || target >= state.instance().target_count()) {
        throw AccessibilityError(describe(step, target) + ": no such target", AccessCondition::AlreadyRetrieved,
                                 step, 0);
    }
    if (state.is_retrieved(target) || contains(seen, target)) {
        throw AccessibilityError(describe(step, target) + ": target already retrieved",
                                 AccessCondition::AlreadyRetrieved, step, state.instance().target(target).stack);
    }
}

}  // namespace

CycleOutcome simulate_cycle(const SliceState& state, std::span<const int> order, std::span<const int> clearances) {
    const int m = state.stack_count();
    if (static_cast<int>(clearances.size()) != m) {
        throw ValidationError("expected " + std::to_string(m) + " clearances, got " +
                              std::to_string(clearances.size()));
    }
    std::vector<int> residual(clearances.begin(), clearances.end());
    int energy = 0;
    for (int t = 1; t <= m; ++t) {
        const int level = residual[t - 1];
        if (level < 0 || level > state.stack_height(t)) {
            throw AccessibilityError("clearance " + std::to_string(level) + " of stack " + std::to_string(t) +
                                         " outside 0.." + std::to_string(state.stack_height(t)),
                                     AccessCondition::ClearanceRange, -1, t);
        }
        energy += state.stack_height(t) - level;
    }

    TargetSet seen = 0;
    for (int step = 0; step < static_cast<int>(order.size()); ++step) {
        const int b = order[step];
        check_target(state, seen, step, b);
        const Position pos = state.position(b);
        if (residual[pos.stack - 1] != pos.height) {
            throw AccessibilityError(describe(step, b) + ": stack " + std::to_string(pos.stack) + " residual " +
                                         std::to_string(residual[pos.stack - 1]) + " != target height " +
                                         std::to_string(pos.height) + " (UL above the target)",
                                     AccessCondition::NothingAbove, step, pos.stack);
        }
        for (int s = 1; s < pos.stack; ++s) {
            if (residual[s - 1] != pos.height - 1) {
                throw AccessibilityError(describe(step, b) + ": passage blocked at stack " + std::to_string(s) +
                                             ", residual " + std::to_string(residual[s - 1]) + " != " +
                                             std::to_string(pos.height - 1),
                                         AccessCondition::Passage, step, s);
            }
        }
        --residual[pos.stack - 1];
        seen |= bit(b);
    }
    return {state.after(seen), energy};
}

std::vector<int> infer_clearances(const SliceState& state, std::span<const int> order) {
    const int m = state.stack_count();
    constexpr int kUnset = -1;
    std::vector<int> forced(static_cast<std::size_t>(m), kUnset);
    std::vector<int> taken(static_cast<std::size_t>(m), 0);

    auto demand = [&](int step, int target, int stack, int residual, AccessCondition why) {
        const int clearance = residual + taken[stack - 1];
        int& slot = forced[stack - 1];
        if (slot == kUnset) {
            if (clearance < 0 || clearance > state.stack_height(stack)) {
                throw AccessibilityError(describe(step, target) + ": stack " + std::to_string(stack) +
                                             " would need clearance " + std::to_string(clearance) + " outside 0.." +
                                             std::to_string(state.stack_height(stack)),
                                         why, step, stack);
            }
            slot = clearance;
        } else if (slot != clearance) {
            throw AccessibilityError(describe(step, target) + ": stack " + std::to_string(stack) +
                                         " needs clearance " + std::to_string(clearance) + " but an earlier step fixed " +
                                         std::to_string(slot),
                                     why, step, stack);
        }
    };

    TargetSet seen = 0;
    for (int step = 0; step < static_cast<int>(order.size()); ++step) {
        const int b = order[step];
        check_target(state, seen, step, b);
        const Position pos = state.position(b);
        demand(step, b, pos.stack, pos.height, AccessCondition::NothingAbove);
        for (int s = 1; s < pos.stack; ++s) demand(step, b, s, pos.height - 1, AccessCondition::Passage);
        ++taken[pos.stack - 1];
        seen |= bit(b);
    }
    for (int t = 1; t <= m; ++t) {
        if (forced[t - 1] == kUnset) forced[t - 1] = state.stack_height(t);
    }
    return forced;
}

Replay replay_solution(const Instance& instance, const Solution& solution) {
    SliceState state(instance);
    Solution out;
    for (std::size_t c = 0; c < solution.cycles.size(); ++c) {
        const CyclePlan& in = solution.cycles[c];
        CyclePlan plan = in;
        try {
            if (plan.clearances.empty()) plan.clearances = infer_clearances(state, plan.order);
            auto outcome = simulate_cycle(state, plan.order, plan.clearances);
            plan.energy = outcome.energy;
            state = std::move(outcome.next);
        } catch (const AccessibilityError& e) {
            throw AccessibilityError("cycle " + std::to_string(c + 1) + ": " + e.what(), e.condition(), e.step(),
                                     e.stack());
        }
        out.total_energy += plan.energy;
        out.cycles.push_back(std::move(plan));
    }
    if (!state.complete()) {
        const TargetSet missing = state.unretrieved();
        int first = 0;
        while (!contains(missing, first)) ++first;
        throw ValidationError("target " + std::to_string(first) + " is never retrieved");
    }
    return {std::move(out), std::move(state)};
}

long simulate_solution(const Instance& instance, const Solution& solution) {
    return replay_solution(instance, solution).solution.total_energy;
}

}  // namespace sacrp
