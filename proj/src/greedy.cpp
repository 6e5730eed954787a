#include "sacrp/greedy.hpp"

#include "sacrp/error.hpp"
#include "sacrp/feasibility.hpp"

#include <algorithm>
#include <bit>

#include <json.hpp>

namespace sacrp {

namespace {

int critical_target(const SliceState& state) {
    int best = -1;
    for (TargetSet rest = state.unretrieved(); rest != 0; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        if (best < 0) {
            best = b;
            continue;
        }
        const Position p = state.position(b);
        const Position q = state.position(best);
        if (p.height > q.height || (p.height == q.height && p.stack > q.stack)) best = b;
    }
    return best;
}

// The bottom unretrieved target of a stack can always go alone in a
// feasible state (its requirement is exactly the passage below it), so the
// topmost such target exists.
int seed_target(const SliceState& state, int stack) {
    int seed = -1;
    for (TargetSet rest = state.instance().targets_in_stack(stack) & state.unretrieved(); rest != 0;
         rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        const int h = state.target_height(b);
        bool passable = true;
        for (int s = 1; s < stack && passable; ++s) passable = state.stack_height(s) >= h - 1;
        if (passable && (seed < 0 || h > state.target_height(seed))) seed = b;
    }
    return seed;
}

int canonical_phase(Position anchor, Position p) {
    if (p.height == anchor.height) return 0;
    return p.height > anchor.height ? 1 : 2;
}

std::vector<int> canonical_candidates(const SliceState& state, Position anchor, TargetSet exclude) {
    std::vector<int> out;
    for (TargetSet rest = state.unretrieved() & ~exclude; rest != 0; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        const Position p = state.position(b);
        if (p.stack > anchor.stack || (p.stack == anchor.stack && p.height > anchor.height)) continue;
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [&](int x, int y) {
        const Position p = state.position(x);
        const Position q = state.position(y);
        const int fp = canonical_phase(anchor, p);
        const int fq = canonical_phase(anchor, q);
        if (fp != fq) return fp < fq;
        if (fp == 0) return p.stack > q.stack;
        if (p.height != q.height) return fp == 1 ? p.height < q.height : p.height > q.height;
        return p.stack < q.stack;
    });
    return out;
}

}  // namespace

GreedyResult solve_greedy(const Instance& instance) {
    SliceState state(instance);
    if (auto v = find_feasibility_violation(state)) {
        throw InfeasibleError("target " + std::to_string(v->target) + " is blocked by stack " +
                              std::to_string(v->stack));
    }
    GreedyResult result;
    while (!state.complete()) {
        GreedyCycle cycle;
        cycle.critical = critical_target(state);
        cycle.seed = seed_target(state, state.position(cycle.critical).stack);
        if (cycle.seed < 0) throw Error("internal: no seed in the critical stack");
        Batch batch = Batch::seed(state, cycle.seed);

        for (bool grew = true; grew;) {
            grew = false;
            for (int c : canonical_candidates(state, batch.anchor_position, batch.members)) {
                const Extension ext = classify_extension(state, batch, c);
                GreedyStep step{c, false, ext.rejection};
                if (ext) {
                    if (check_feasibility(state.after(batch.members | bit(c)))) {
                        step.accepted = true;
                        step.note = to_string(*ext.rule);
                    } else {
                        step.note = "would strand a remaining target";
                    }
                }
                cycle.steps.push_back(step);
                if (step.accepted) {
                    batch.members |= bit(c);
                    grew = true;
                    break;
                }
            }
        }
        cycle.batch = batch.members;
        CyclePlan plan = plan_cycle(state, batch.members);
        result.solution.total_energy += plan.energy;
        result.solution.cycles.push_back(std::move(plan));
        result.trace.cycles.push_back(std::move(cycle));
        state = state.after(batch.members);
        if (!check_feasibility(state)) throw Error("internal: greedy left an infeasible state");
    }
    return result;
}

std::string trace_json(const GreedyTrace& trace) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const GreedyCycle& c : trace.cycles) {
        nlohmann::ordered_json cycle;
        cycle["critical"] = c.critical;
        cycle["seed"] = c.seed;
        std::vector<int> members;
        for (TargetSet rest = c.batch; rest != 0; rest &= rest - 1) members.push_back(std::countr_zero(rest));
        cycle["batch"] = members;
        cycle["steps"] = nlohmann::ordered_json::array();
        for (const GreedyStep& s : c.steps) {
            cycle["steps"].push_back({{"candidate", s.candidate}, {"accepted", s.accepted}, {"note", s.note}});
        }
        doc.push_back(std::move(cycle));
    }
    return doc.dump();
}

}  // namespace sacrp
