#include "sacrp/geometry.hpp"

#include "sacrp/error.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace sacrp {

namespace {

std::string slot(Position p) { return "(" + std::to_string(p.stack) + "," + std::to_string(p.height) + ")"; }

void require_open_batch(const SliceState& state, TargetSet batch) {
    if (batch == 0) throw ValidationError("empty batch");
    if ((batch & ~state.unretrieved()) != 0) throw ValidationError("batch contains retrieved or unknown targets");
}

bool is_member(const SliceState& state, TargetSet batch, Position p) {
    const int who = state.occupant(p);
    return who >= 0 && contains(batch, who);
}

struct StackSpan {
    int low = 0;
    int high = 0;
    int count = 0;
};

// Members per stack (index stack-1); count == 0 means no member.
std::vector<StackSpan> spans_of(const SliceState& state, TargetSet batch) {
    std::vector<StackSpan> spans(static_cast<std::size_t>(state.stack_count()));
    for (TargetSet rest = batch; rest != 0; rest &= rest - 1) {
        const Position p = state.position(std::countr_zero(rest));
        StackSpan& sp = spans[static_cast<std::size_t>(p.stack - 1)];
        if (sp.count == 0) {
            sp.low = sp.high = p.height;
        } else {
            sp.low = std::min(sp.low, p.height);
            sp.high = std::max(sp.high, p.height);
        }
        ++sp.count;
    }
    return spans;
}

}  // namespace

TriangularityReport is_weakly_triangular(const SliceState& state, TargetSet batch) {
    require_open_batch(state, batch);
    TriangularityReport report;

    std::map<int, int> rightmost;  // height -> rightmost stack
    for (TargetSet rest = batch; rest != 0; rest &= rest - 1) {
        const Position p = state.position(std::countr_zero(rest));
        auto [it, inserted] = rightmost.emplace(p.height, p.stack);
        if (!inserted) it->second = std::max(it->second, p.stack);
    }

    report.height_continuous = rightmost.rbegin()->first - rightmost.begin()->first + 1 ==
                               static_cast<int>(rightmost.size());

    bool falling = false;
    int previous = 0;
    report.stack_unimodular = true;
    for (const auto& [height, stack] : rightmost) {
        if (stack < previous) falling = true;
        if (falling && stack > previous) {
            report.stack_unimodular = false;
            break;
        }
        previous = stack;
    }

    const auto spans = spans_of(state, batch);
    bool closed = true;
    for (const StackSpan& sp : spans) {
        if (sp.count != 0 && sp.high - sp.low + 1 != sp.count) closed = false;
    }
    for (TargetSet rest = batch; rest != 0 && closed; rest &= rest - 1) {
        const Position p = state.position(std::countr_zero(rest));
        for (int s = 1; s < p.stack && closed; ++s) {
            if (is_member(state, batch, {s, p.height}) || is_member(state, batch, {s, p.height - 1})) continue;
            if (spans[static_cast<std::size_t>(s - 1)].count != 0) {
                closed = false;
                break;
            }
            for (std::size_t t = static_cast<std::size_t>(s); t < spans.size(); ++t) {
                const StackSpan& right = spans[t];
                if (right.count != 0 && (right.low != p.height || right.high != p.height)) closed = false;
            }
        }
    }
    report.prefix_closed = closed;
    return report;
}

Anchor batch_anchor(const SliceState& state, TargetSet batch) {
    require_open_batch(state, batch);
    int best = -1;
    for (TargetSet rest = batch; rest != 0; rest &= rest - 1) {
        const int b = std::countr_zero(rest);
        if (best < 0) {
            best = b;
            continue;
        }
        const Position p = state.position(b);
        const Position q = state.position(best);
        if (p.stack > q.stack || (p.stack == q.stack && p.height > q.height)) best = b;
    }
    return {best, state.level(best)};
}

bool is_anchor_feasible(const SliceState& state, TargetSet batch) {
    const Position a = state.position(batch_anchor(state, batch).target);
    for (int s = 1; s < a.stack; ++s) {
        if (state.stack_height(s) < a.height - 1) return false;
    }
    return true;
}

bool is_retrievable_batch(const SliceState& state, TargetSet batch) {
    return is_weakly_triangular(state, batch).weakly_triangular() && is_anchor_feasible(state, batch);
}

CyclePlan plan_cycle(const SliceState& state, TargetSet batch) {
    const auto report = is_weakly_triangular(state, batch);
    if (!report) {
        throw ValidationError(std::string("batch is not weakly triangular:") +
                              (report.height_continuous ? "" : " height gap") +
                              (report.stack_unimodular ? "" : " not stack-unimodular") +
                              (report.prefix_closed ? "" : " not prefix-closed"));
    }
    const Anchor anchor = batch_anchor(state, batch);
    const Position a = state.position(anchor.target);
    const auto spans = spans_of(state, batch);

    CyclePlan plan;
    plan.anchor = anchor;
    plan.clearances.resize(static_cast<std::size_t>(state.stack_count()));
    for (int t = 1; t <= state.stack_count(); ++t) {
        const StackSpan& sp = spans[static_cast<std::size_t>(t - 1)];
        int level = state.stack_height(t);
        if (sp.count != 0) {
            level = sp.high;
        } else if (t < a.stack) {
            level = a.height - 1;
            if (state.stack_height(t) < level) {
                throw ValidationError("stack " + std::to_string(t) + " of height " +
                                      std::to_string(state.stack_height(t)) + " cannot carry the passage at " +
                                      std::to_string(level));
            }
        }
        plan.clearances[static_cast<std::size_t>(t - 1)] = level;
        plan.energy += state.stack_height(t) - level;
    }

    for (TargetSet rest = batch; rest != 0; rest &= rest - 1) plan.order.push_back(std::countr_zero(rest));
    std::sort(plan.order.begin(), plan.order.end(), [&](int x, int y) {
        const Position p = state.position(x);
        const Position q = state.position(y);
        if (p.height != q.height) return p.height > q.height;
        return p.stack < q.stack;
    });
    return plan;
}

Batch Batch::seed(const SliceState& state, int anchor_target) {
    if (anchor_target < 0 || anchor_target >= state.instance().target_count() ||
        state.is_retrieved(anchor_target)) {
        throw ValidationError("anchor must be an unretrieved target");
    }
    return {bit(anchor_target), {anchor_target, state.level(anchor_target)}, state.position(anchor_target)};
}

const char* to_string(ExtensionRule rule) {
    switch (rule) {
        case ExtensionRule::SameRow: return "same-row";
        case ExtensionRule::RowAbove: return "row-above";
        case ExtensionRule::RowBelowAdjacent: return "row-below-adjacent";
        case ExtensionRule::RowBelowDeep: return "row-below-deep";
    }
    return "?";
}

namespace {

// Rejection texts are only built when `explain` is set; the enumeration
// hot path skips them.
Extension classify(const SliceState& state, const Batch& batch, int candidate, bool explain) {
    Extension ext;
    ext.candidate = candidate;
    if (candidate < 0 || candidate >= state.instance().target_count()) {
        if (explain) ext.rejection = "no such target";
        return ext;
    }
    const Position a = batch.anchor_position;
    const Position c = state.position(candidate);
    if (state.is_retrieved(candidate) || contains(batch.members, candidate)) {
        if (explain) ext.rejection = "already retrieved or in the batch";
        return ext;
    }
    if (c.stack > a.stack) {
        throw ValidationError("candidate " + std::to_string(candidate) + " lies right of the anchor stack " +
                              std::to_string(a.stack));
    }

    auto member = [&](Position p) { return is_member(state, batch.members, p); };
    auto describe_gap = [&](Position p) -> std::string {
        if (!explain) return {};
        const int who = state.occupant(p);
        if (who == kAbsent) return "position " + slot(p) + " is empty";
        if (who == kNonTarget) return "position " + slot(p) + " holds a non-target";
        return "position " + slot(p) + " is not in the batch";
    };
    auto stack_has_member = [&](int stack) {
        return (batch.members & state.instance().targets_in_stack(stack)) != 0;
    };

    if (c.height == a.height) {
        if (stack_has_member(c.stack) && !member({c.stack, c.height - 1}) && !member({c.stack, c.height + 1})) {
            if (explain) ext.rejection = "members of stack " + std::to_string(c.stack) + " would not be consecutive";
            return ext;
        }
        ext.rule = ExtensionRule::SameRow;
        ext.energy_delta = -1;
        return ext;
    }

    if (c.height > a.height) {
        for (int s = 1; s <= c.stack; ++s) {
            const Position below{s, c.height - 1};
            if (!member(below)) {
                if (explain) ext.rejection = describe_gap(below);
                return ext;
            }
        }
        if (c.stack == a.stack) {
            if (explain) ext.rejection = "candidate sits above the anchor in the anchor stack";
            return ext;
        }
        ext.rule = ExtensionRule::RowAbove;
        ext.energy_delta = -1;
        return ext;
    }

    const bool adjacent = c.height == a.height - 1;
    const Position above{c.stack, c.height + 1};
    if (!member(above) && !(adjacent && !stack_has_member(c.stack))) {
        if (explain) ext.rejection = describe_gap(above);
        return ext;
    }
    if (c.stack > 1) {
        const Position left{c.stack - 1, c.height};
        if (!member(left)) {
            if (explain) ext.rejection = describe_gap(left);
            return ext;
        }
    }
    ext.rule = adjacent ? ExtensionRule::RowBelowAdjacent : ExtensionRule::RowBelowDeep;
    ext.energy_delta = 0;
    return ext;
}

}  // namespace

Extension classify_extension(const SliceState& state, const Batch& batch, int candidate) {
    return classify(state, batch, candidate, true);
}

namespace {

// Canonical insertion rank relative to the anchor row; smaller goes first.
struct CanonicalKey {
    int phase;
    int primary;
    int secondary;

    friend bool operator<(const CanonicalKey& x, const CanonicalKey& y) {
        if (x.phase != y.phase) return x.phase < y.phase;
        if (x.primary != y.primary) return x.primary < y.primary;
        return x.secondary < y.secondary;
    }
};

CanonicalKey canonical_key(Position anchor, Position p) {
    if (p.height == anchor.height) return {0, -p.stack, 0};
    if (p.height > anchor.height) return {1, p.height, p.stack};
    return {2, -p.height, p.stack};
}

struct Enumerator {
    const SliceState& state;
    const std::function<void(const EnumeratedBatch&)>& visit;
    std::vector<int> candidates;
    Batch batch;
    int energy = 0;

    void grow(std::size_t start) {
        visit({batch.members, batch.anchor, energy});
        for (std::size_t j = start; j < candidates.size(); ++j) {
            const Extension ext = classify(state, batch, candidates[j], false);
            if (!ext) continue;
            batch.members |= bit(candidates[j]);
            energy += ext.energy_delta;
            grow(j + 1);
            energy -= ext.energy_delta;
            batch.members &= ~bit(candidates[j]);
        }
    }
};

}  // namespace

void for_each_batch(const SliceState& state, const SparseView& view,
                    const std::function<void(const EnumeratedBatch&)>& visit) {
    const Instance& inst = state.instance();
    const TargetSet open = state.unretrieved();
    for (TargetSet anchors = open; anchors != 0; anchors &= anchors - 1) {
        const int a = std::countr_zero(anchors);
        const Position ap = state.position(a);
        bool supported = true;
        for (int s = 1; s < ap.stack && supported; ++s) supported = state.stack_height(s) >= ap.height - 1;
        if (!supported) continue;

        Enumerator e{state, visit, {}, Batch::seed(state, a), 0};
        e.energy = cycle_energy_closed_form(state, view, e.batch.anchor, e.batch.members);
        for (TargetSet rest = open & ~bit(a); rest != 0; rest &= rest - 1) {
            const int b = std::countr_zero(rest);
            const Position p = state.position(b);
            if (p.stack > ap.stack || (p.stack == ap.stack && p.height > ap.height)) continue;
            e.candidates.push_back(b);
        }
        std::sort(e.candidates.begin(), e.candidates.end(), [&](int x, int y) {
            return canonical_key(ap, state.position(x)) < canonical_key(ap, state.position(y));
        });
        (void)inst;
        e.grow(0);
    }
}

std::vector<EnumeratedBatch> enumerate_batches(const SliceState& state, const SparseView& view) {
    std::vector<EnumeratedBatch> out;
    for_each_batch(state, view, [&](const EnumeratedBatch& b) { out.push_back(b); });
    return out;
}

std::vector<EnumeratedBatch> enumerate_batches(const SliceState& state) {
    return enumerate_batches(state, derive_sparse(state.instance()));
}

}  // namespace sacrp
