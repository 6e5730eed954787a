#include "sacrp/sparse.hpp"

#include "sacrp/error.hpp"

#include <algorithm>
#include <bit>

namespace sacrp {

SparseView derive_sparse(const Instance& instance) {
    const int n = instance.target_count();
    SparseView view;
    view.below.resize(static_cast<std::size_t>(n));
    view.support.resize(static_cast<std::size_t>(n));
    view.anchor_energy.resize(static_cast<std::size_t>(n));

    for (int t = 1; t <= instance.stack_count(); ++t) {
        if (instance.targets_in_stack(t) != 0) view.target_stacks.push_back(t);
    }

    for (int b = 0; b < n; ++b) {
        const Position& p = instance.target(b);
        view.below[b] = instance.targets_below(b);
        for (int t = 1; t < p.stack; ++t) {
            if (instance.targets_in_stack(t) != 0) continue;
            const int h = instance.stack_height(t);
            if (!view.support[b] || h < *view.support[b]) view.support[b] = h;
        }
        auto& row = view.anchor_energy[b];
        row.resize(static_cast<std::size_t>(view.below[b]) + 1);
        for (int i = 0; i <= view.below[b]; ++i) {
            const int passage = p.height - i - 1;
            int energy = instance.stack_height(p.stack) - p.height;
            bool defined = true;
            for (int s = 1; s < p.stack && defined; ++s) {
                const int h = instance.stack_height(s);
                if (h < passage) defined = false;
                energy += h - passage;
            }
            if (defined) row[i] = energy;
        }
    }
    return view;
}

int cycle_energy_closed_form(const SliceState& state, const SparseView& view, Anchor anchor, TargetSet batch) {
    const Instance& inst = state.instance();
    if (batch == 0) throw ValidationError("empty batch");
    if (anchor.target < 0 || anchor.target >= inst.target_count() || !contains(batch, anchor.target)) {
        throw ValidationError("anchor is not a member of the batch");
    }
    if ((batch & state.retrieved()) != 0) throw ValidationError("batch contains retrieved targets");
    if (state.level(anchor.target) != anchor.level) {
        throw ValidationError("anchor level " + std::to_string(anchor.level) + " does not match state level " +
                              std::to_string(state.level(anchor.target)));
    }
    const Position a = state.position(anchor.target);
    int credit_now = 0;
    for (TargetSet rest = batch; rest != 0; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        const Position p = state.position(b);
        if (p.stack > a.stack || (p.stack == a.stack && p.height > a.height)) {
            throw ValidationError("anchor " + std::to_string(anchor.target) +
                                  " is not the topmost member of the rightmost batch stack");
        }
        if (p.stack < a.stack && p.height >= a.height) ++credit_now;
    }
    const auto base = view.anchor_cost(anchor);
    if (!base) {
        throw ValidationError("anchor energy undefined for target " + std::to_string(anchor.target) + " at level " +
                              std::to_string(anchor.level));
    }
    TargetSet left = 0;
    for (int t = 1; t < a.stack; ++t) left |= inst.targets_in_stack(t);
    const int credit_before = std::popcount(state.retrieved() & (left | inst.above_mask(anchor.target)));
    return *base - credit_before - credit_now;
}

int cycle_energy_closed_form(const SliceState& state, Anchor anchor, TargetSet batch) {
    return cycle_energy_closed_form(state, derive_sparse(state.instance()), anchor, batch);
}

}  // namespace sacrp
