#include "sacrp/feasibility.hpp"

#include "sacrp/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace sacrp {

std::optional<FeasibilityViolation> find_feasibility_violation(const SliceState& state) {
    const Instance& inst = state.instance();
    const TargetSet open = state.unretrieved();
    for (int b = 0; b < inst.target_count(); ++b) {
        if (!contains(open, b)) continue;
        const int below = std::popcount(inst.below_mask(b) & open);
        const int required = state.target_height(b) - below - 1;
        for (int t = 1; t < inst.target(b).stack; ++t) {
            if (state.stack_height(t) < required) {
                return FeasibilityViolation{b, t, required, state.stack_height(t)};
            }
        }
    }
    return std::nullopt;
}

bool check_feasibility(const SliceState& state) { return !find_feasibility_violation(state).has_value(); }

bool check_feasibility(const Instance& instance) { return check_feasibility(SliceState(instance)); }

bool check_feasibility(const Instance& instance, TargetSet retrieved) {
    int lowest_left = std::numeric_limits<int>::max();
    for (int s = 1; s <= instance.stack_count(); ++s) {
        const TargetSet column = instance.targets_in_stack(s);
        for (TargetSet open = column & ~retrieved; open != 0; open &= open - 1) {
            const int b = std::countr_zero(open);
            const int required = instance.target(b).height - std::popcount(instance.below_mask(b)) - 1;
            if (lowest_left < required) return false;
        }
        lowest_left = std::min(lowest_left, instance.stack_height(s) - std::popcount(column & retrieved));
    }
    return true;
}

Solution feasibility_witness(const Instance& instance) {
    if (auto v = find_feasibility_violation(SliceState(instance))) {
        throw InfeasibleError("target " + std::to_string(v->target) + " is blocked by stack " +
                              std::to_string(v->stack));
    }
    std::vector<int> order(static_cast<std::size_t>(instance.target_count()));
    for (int b = 0; b < instance.target_count(); ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Position& pa = instance.target(a);
        const Position& pb = instance.target(b);
        if (pa.stack != pb.stack) return pa.stack > pb.stack;
        return pa.height < pb.height;
    });

    Solution solution;
    SliceState state(instance);
    for (int b : order) {
        CyclePlan plan;
        plan.order = {b};
        plan.clearances = infer_clearances(state, plan.order);
        plan.anchor = Anchor{b, state.level(b)};
        auto outcome = simulate_cycle(state, plan.order, plan.clearances);
        plan.energy = outcome.energy;
        solution.total_energy += plan.energy;
        solution.cycles.push_back(std::move(plan));
        state = std::move(outcome.next);
    }
    return solution;
}

}  // namespace sacrp
