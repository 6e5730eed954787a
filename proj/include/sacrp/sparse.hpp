#pragma once

#include "sacrp/simulation.hpp"

#include <optional>
#include <vector>

namespace sacrp {

/// Target-centric encoding of an instance.
///
/// below[b]   targets initially under b in its stack
/// support[b] lowest target-free stack left of b; nullopt stands for "no
///            such stack" (+infinity)
/// anchor_energy[b][i], i in 0..below[b]: ULs lifted when anchoring a cycle
///            at b on level i in the pristine layout. nullopt where some
///            stack to the left is shorter than height(b) - i - 1.
/// target_stacks  1-based stacks holding at least one target, ascending.
struct SparseView {
    std::vector<int> below;
    std::vector<std::optional<int>> support;
    std::vector<std::vector<std::optional<int>>> anchor_energy;
    std::vector<int> target_stacks;

    std::optional<int> anchor_cost(Anchor a) const {
        return anchor_energy.at(static_cast<std::size_t>(a.target)).at(static_cast<std::size_t>(a.level));
    }
};

SparseView derive_sparse(const Instance& instance);

/// Cycle energy from the sparse view alone:
///     A(anchor) - |retrieved targets left of the anchor stack or above the
///     anchor in it| - |batch members left of the anchor stack at or above
///     the anchor's current height|
/// The anchor must be the topmost batch member of the batch's rightmost
/// stack and its level must match `state`. Throws ValidationError otherwise
/// or when A is undefined.
int cycle_energy_closed_form(const SliceState& state, const SparseView& view, Anchor anchor, TargetSet batch);
int cycle_energy_closed_form(const SliceState& state, Anchor anchor, TargetSet batch);

}  // namespace sacrp
