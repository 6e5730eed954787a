#pragma once

#include "sacrp/instance.hpp"

#include <vector>

namespace sacrp {

inline constexpr int kNonTarget = -1;
inline constexpr int kAbsent = -2;

/// Slice configuration between cycles.
///
/// Fully determined by the set of retrieved targets: retrieving shrinks the
/// stack by one and every UL above drops by one. All derived quantities are
/// computed once at construction; there is no mutable height state.
class SliceState {
public:
    explicit SliceState(const Instance& instance, TargetSet retrieved = 0);

    const Instance& instance() const noexcept { return *instance_; }
    TargetSet retrieved() const noexcept { return retrieved_; }
    TargetSet unretrieved() const noexcept { return instance_->all_targets() & ~retrieved_; }
    bool is_retrieved(int target) const noexcept { return contains(retrieved_, target); }
    bool complete() const noexcept { return unretrieved() == 0; }

    int stack_count() const noexcept { return instance_->stack_count(); }
    /// Current height of a 1-based stack.
    int stack_height(int stack) const { return heights_[static_cast<std::size_t>(stack - 1)]; }
    const std::vector<int>& stack_heights() const noexcept { return heights_; }

    /// Current height of an unretrieved target.
    int target_height(int target) const { return target_heights_[static_cast<std::size_t>(target)]; }
    Position position(int target) const { return {instance_->target(target).stack, target_height(target)}; }
    /// Retrieval level: same-stack targets below it already retrieved.
    int level(int target) const;

    /// Unretrieved target at a current position, kNonTarget for another UL,
    /// kAbsent above the stack top.
    int occupant(Position pos) const;

    /// Successor state after retrieving `batch` (must be disjoint from retrieved()).
    SliceState after(TargetSet batch) const { return SliceState(*instance_, retrieved_ | batch); }

    friend bool operator==(const SliceState& a, const SliceState& b) {
        return a.instance_ == b.instance_ && a.retrieved_ == b.retrieved_;
    }

private:
    const Instance* instance_;
    TargetSet retrieved_;
    std::vector<int> heights_;
    std::vector<int> target_heights_;
    // Per stack: index by current height -> unretrieved target or kNonTarget.
    // Left empty for stacks without targets.
    std::vector<std::vector<int>> columns_;
};

}  // namespace sacrp
