#pragma once

#include "sacrp/geometry.hpp"

#include <string>
#include <vector>

namespace sacrp {

struct GreedyStep {
    int candidate = -1;
    bool accepted = false;
    std::string note;  // rule name when accepted, reason otherwise
};

struct GreedyCycle {
    int critical = -1;
    int seed = -1;
    std::vector<GreedyStep> steps;
    TargetSet batch = 0;
};

struct GreedyTrace {
    std::vector<GreedyCycle> cycles;
};

struct GreedyResult {
    Solution solution;
    GreedyTrace trace;
};

/// Per cycle: the critical target is the highest unretrieved one (ties go
/// to the rightmost stack); the batch starts at the topmost target of that
/// stack that can be retrieved alone and grows with every legal candidate,
/// rescanning in canonical order after each addition. Legal means the
/// extension rules accept it and the remaining targets stay reachable.
/// Throws InfeasibleError for infeasible input.
GreedyResult solve_greedy(const Instance& instance);

std::string trace_json(const GreedyTrace& trace);

}  // namespace sacrp
