#pragma once

#include "sacrp/simulation.hpp"

#include <optional>

namespace sacrp {

/// A target that can never be reached and the short stack blocking it.
struct FeasibilityViolation {
    int target = -1;
    int stack = 0;   // 1-based stack nearer the entry that is too short
    int required = 0;
    int actual = 0;
};

/// First violated pair of the retrievability condition, scanning targets in
/// index order and stacks left to right. A state is retrievable iff every
/// unretrieved target b and every stack t left of it satisfy
///     height(t) >= height(b) - below(b) - 1
/// with `below` counting unretrieved targets under b in its stack.
std::optional<FeasibilityViolation> find_feasibility_violation(const SliceState& state);

bool check_feasibility(const SliceState& state);
bool check_feasibility(const Instance& instance);

/// Same verdict from the retrieved set alone, without building a state.
/// Retrieving a target below b lowers height(b) and below(b) together, so
/// the bound for b is fixed by the initial layout.
bool check_feasibility(const Instance& instance, TargetSet retrieved);

/// One cycle per target, stacks right to left, bottom to top inside a
/// stack. Throws InfeasibleError when no complete retrieval exists.
Solution feasibility_witness(const Instance& instance);

}  // namespace sacrp
