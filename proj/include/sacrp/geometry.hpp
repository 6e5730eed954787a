#pragma once

#include "sacrp/sparse.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sacrp {

/// Shape flags of a batch at current heights.
struct TriangularityReport {
    bool height_continuous = false;
    bool stack_unimodular = false;
    bool prefix_closed = false;

    bool weakly_triangular() const noexcept { return height_continuous && stack_unimodular && prefix_closed; }
    explicit operator bool() const noexcept { return weakly_triangular(); }
};

/// Throws ValidationError for an empty batch or retrieved members.
///
/// height_continuous: the members' distinct heights form an interval.
/// stack_unimodular: the rightmost stack per height, read bottom-up, rises
///   then falls.
/// prefix_closed: inside each stack the members are consecutive, and for
///   every member at (t, h) each stack s < t either has a member at height h
///   or h - 1, or has no member at all while every member right of s sits
///   at height h.
TriangularityReport is_weakly_triangular(const SliceState& state, TargetSet batch);

/// Topmost member of the rightmost stack that holds a member.
Anchor batch_anchor(const SliceState& state, TargetSet batch);

/// Every stack left of the anchor is at least anchor height - 1 tall.
bool is_anchor_feasible(const SliceState& state, TargetSet batch);

/// Weakly triangular and anchor-feasible: retrievable in one cycle.
bool is_retrievable_batch(const SliceState& state, TargetSet batch);

/// Canonical plan: retrieve top to bottom, left to right within a row.
/// Stacks with members lift everything above their topmost member, stacks
/// without members left of the anchor keep anchor height - 1, the rest lift
/// nothing. Throws ValidationError when the batch is not retrievable.
CyclePlan plan_cycle(const SliceState& state, TargetSet batch);

struct Batch {
    TargetSet members = 0;
    Anchor anchor;
    Position anchor_position;

    static Batch seed(const SliceState& state, int anchor_target);
};

enum class ExtensionRule { SameRow, RowAbove, RowBelowAdjacent, RowBelowDeep };

const char* to_string(ExtensionRule rule);

/// Outcome of trying to add one target to a batch.
struct Extension {
    int candidate = -1;
    std::optional<ExtensionRule> rule;  // empty on rejection
    int energy_delta = 0;               // -1, -1, 0, 0 by rule
    std::string rejection;              // first failed precondition

    explicit operator bool() const noexcept { return rule.has_value(); }
};

/// Local extension test:
///   SameRow           same current row as the anchor, left of it
///   RowAbove          every slot one row lower in stacks 1..s is a member
///   RowBelowAdjacent  one row below the anchor; the slot above is a member
///                     (or the stack has none yet); the left neighbour in
///                     the row is a member unless s is stack 1
///   RowBelowDeep      deeper rows; slot above and left neighbour are members
/// Throws ValidationError for a candidate right of the anchor stack.
Extension classify_extension(const SliceState& state, const Batch& batch, int candidate);

struct EnumeratedBatch {
    TargetSet members = 0;
    Anchor anchor;
    int energy = 0;
};

/// Streams every retrievable batch of the state exactly once.
///
/// For each anchor, candidates are tried in canonical order: same row right
/// to left, then rows above bottom-up and left to right, then rows below
/// top-down and left to right. A batch is built only by inserting members in
/// that order, so each member set has a single derivation. The energy is
/// the anchor's closed-form cost plus the extension deltas.
void for_each_batch(const SliceState& state, const SparseView& view,
                    const std::function<void(const EnumeratedBatch&)>& visit);

std::vector<EnumeratedBatch> enumerate_batches(const SliceState& state, const SparseView& view);
std::vector<EnumeratedBatch> enumerate_batches(const SliceState& state);

}  // namespace sacrp
