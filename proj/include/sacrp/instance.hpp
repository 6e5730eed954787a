#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sacrp {

/// Slot in a slice. Both coordinates are 1-based: stack 1 sits at the entry
/// side, height 1 is the bottom UL.
struct Position {
    int stack = 0;
    int height = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Set of targets as a bitmask over target indices.
using TargetSet = std::uint64_t;

inline constexpr int kMaxTargets = 64;

constexpr TargetSet bit(int target) { return TargetSet{1} << target; }
constexpr bool contains(TargetSet set, int target) { return (set >> target) & 1U; }

/// One slice of stacks plus the pick list, in the dense encoding.
///
/// Immutable after construction. Target order defines target indices.
class Instance {
public:
    Instance() = default;

    /// Validates: at least one stack, positive heights, targets inside their
    /// stacks, no duplicate positions. Throws ParseError otherwise.
    Instance(std::vector<int> stack_heights, std::vector<Position> targets);

    int stack_count() const noexcept { return static_cast<int>(heights_.size()); }
    int target_count() const noexcept { return static_cast<int>(targets_.size()); }

    /// Initial height of a 1-based stack.
    int stack_height(int stack) const { return heights_.at(static_cast<std::size_t>(stack - 1)); }
    const std::vector<int>& stack_heights() const noexcept { return heights_; }

    const Position& target(int index) const { return targets_.at(static_cast<std::size_t>(index)); }
    const std::vector<Position>& targets() const noexcept { return targets_; }

    /// Target at an initial position, or -1.
    int target_at(Position pos) const;

    /// Number of targets initially below `index` in its own stack.
    int targets_below(int index) const { return below_.at(static_cast<std::size_t>(index)); }

    /// Targets that share a stack with `index`.
    TargetSet stack_mates(int index) const { return stack_masks_.at(static_cast<std::size_t>(targets_[index].stack - 1)) & ~bit(index); }
    TargetSet targets_in_stack(int stack) const { return stack_masks_.at(static_cast<std::size_t>(stack - 1)); }

    /// Targets of the same stack strictly below / above `index` (initial layout).
    TargetSet below_mask(int index) const { return below_masks_.at(static_cast<std::size_t>(index)); }
    TargetSet above_mask(int index) const { return stack_mates(index) & ~below_masks_.at(static_cast<std::size_t>(index)); }

    int max_stack_height() const noexcept;
    long total_units() const noexcept;

    /// All targets, as a mask. Only meaningful for n <= kMaxTargets.
    TargetSet all_targets() const noexcept;

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.heights_ == b.heights_ && a.targets_ == b.targets_;
    }

private:
    std::vector<int> heights_;
    std::vector<Position> targets_;
    std::vector<int> below_;
    std::vector<TargetSet> stack_masks_;
    std::vector<TargetSet> below_masks_;
};

/// Parses the JSON instance document:
/// {"version":1,"stacks":[5,4,2,4],"targets":[{"stack":1,"height":4},...]}
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Compact JSON, keys in schema order.
std::string write_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace sacrp
