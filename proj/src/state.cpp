#include "sacrp/state.hpp"

#include <bit>

namespace sacrp {

SliceState::SliceState(const Instance& instance, TargetSet retrieved)
    : instance_(&instance), retrieved_(retrieved & instance.all_targets()) {
    heights_ = instance.stack_heights();
    target_heights_.assign(static_cast<std::size_t>(instance.target_count()), 0);
    for (int b = 0; b < instance.target_count(); ++b) {
        if (is_retrieved(b)) {
            --heights_[static_cast<std::size_t>(instance.target(b).stack - 1)];
        } else {
            target_heights_[static_cast<std::size_t>(b)] =
                instance.target(b).height - std::popcount(instance.below_mask(b) & retrieved_);
        }
    }
    columns_.resize(heights_.size());
    for (int b = 0; b < instance.target_count(); ++b) {
        if (is_retrieved(b)) continue;
        auto& column = columns_[static_cast<std::size_t>(instance.target(b).stack - 1)];
        if (column.empty()) {
            column.assign(static_cast<std::size_t>(heights_[instance.target(b).stack - 1]) + 1, kNonTarget);
        }
        column[static_cast<std::size_t>(target_heights_[static_cast<std::size_t>(b)])] = b;
    }
}

int SliceState::level(int target) const {
    return std::popcount(instance_->below_mask(target) & retrieved_);
}

int SliceState::occupant(Position pos) const {
    if (pos.stack < 1 || pos.stack > stack_count() || pos.height < 1) return kAbsent;
    if (pos.height > stack_height(pos.stack)) return kAbsent;
    const auto& column = columns_[static_cast<std::size_t>(pos.stack - 1)];
    return column.empty() ? kNonTarget : column[static_cast<std::size_t>(pos.height)];
}

}  // namespace sacrp
