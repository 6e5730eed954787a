#include "sacrp/oracle.hpp"

#include "sacrp/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

namespace sacrp {

namespace {

struct Best {
    int energy = std::numeric_limits<int>::max();
    std::vector<int> order;
    std::vector<int> clearances;
};

// Cheapest feasible order of one subset, or energy == max when none works.
Best cheapest_order(const SliceState& state, TargetSet subset) {
    Best best;
    std::vector<int> order;
    for (TargetSet rest = subset; rest != 0; rest &= rest - 1) order.push_back(std::countr_zero(rest));
    do {
        try {
            auto clearances = infer_clearances(state, order);
            const int energy = simulate_cycle(state, order, clearances).energy;
            if (energy < best.energy) best = {energy, order, std::move(clearances)};
        } catch (const AccessibilityError&) {
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

constexpr long kUnsolvable = std::numeric_limits<long>::max();

struct Search {
    const Instance& instance;
    std::unordered_map<TargetSet, long> cost;
    std::unordered_map<TargetSet, std::pair<TargetSet, Best>> choice;

    long solve(TargetSet retrieved) {
        if (retrieved == instance.all_targets()) return 0;
        if (auto it = cost.find(retrieved); it != cost.end()) return it->second;
        const SliceState state(instance, retrieved);
        const TargetSet open = state.unretrieved();
        long best = kUnsolvable;
        for (TargetSet subset = open; subset != 0; subset = (subset - 1) & open) {
            Best cycle = cheapest_order(state, subset);
            if (cycle.order.empty()) continue;
            const long rest = solve(retrieved | subset);
            if (rest == kUnsolvable) continue;
            const long total = rest + cycle.energy;
            // Ties resolved towards the numerically larger subset, a fixed
            // but arbitrary rule that keeps the result deterministic.
            if (total < best) {
                best = total;
                choice[retrieved] = {subset, std::move(cycle)};
            }
        }
        cost[retrieved] = best;
        return best;
    }
};

}  // namespace

std::map<TargetSet, int> enumerate_feasible_batches_raw(const SliceState& state) {
    std::map<TargetSet, int> out;
    const TargetSet open = state.unretrieved();
    for (TargetSet subset = open; subset != 0; subset = (subset - 1) & open) {
        const Best cycle = cheapest_order(state, subset);
        if (!cycle.order.empty()) out[subset] = cycle.energy;
    }
    return out;
}

Solution solve_oracle(const Instance& instance, const OracleOptions& options) {
    if (instance.target_count() > options.max_targets) {
        throw Error("oracle limited to " + std::to_string(options.max_targets) + " targets, instance has " +
                    std::to_string(instance.target_count()));
    }
    Search search{instance, {}, {}};
    const long total = search.solve(0);
    if (total == kUnsolvable) throw InfeasibleError("no complete retrieval exists");

    Solution solution;
    solution.total_energy = total;
    for (TargetSet retrieved = 0; retrieved != instance.all_targets();) {
        auto& [subset, cycle] = search.choice.at(retrieved);
        solution.cycles.push_back({cycle.order, cycle.clearances, cycle.energy, std::nullopt});
        retrieved |= subset;
    }
    return solution;
}

}  // namespace sacrp
