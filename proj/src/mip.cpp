#include "sacrp/mip.hpp"

#include "sacrp/error.hpp"
#include "sacrp/feasibility.hpp"
#include "sacrp/geometry.hpp"
#include "sacrp/sparse.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sacrp {

namespace {

const char* const kBinaryFamilies[] = {"x", "y", "z1", "z2", "z3", "z4", "u"};

struct Meaning {
    const char* family;
    const char* text;
};

const Meaning kMeanings[] = {
    {"cover", "each target is retrieved exactly once"},
    {"hinit", "stack heights start at the layout"},
    {"hupd", "stack heights shrink by each cycle's retrievals"},
    {"level", "retrieval levels follow earlier retrievals below the target"},
    {"xu", "a target is retrieved at its current level"},
    {"uone", "each target has exactly one current level"},
    {"support", "target-free stacks to the left carry the passage"},
    {"pass", "stacks with targets to the left carry the passage"},
    {"samerow", "an anchor-row member needs the anchor to its right"},
    {"rowabove", "a member above the anchor row needs the row below covered up to its stack"},
    {"rowbelow1", "a member one row below the anchor needs the anchor above and its left neighbour"},
    {"rowbelow2", "a deeper member needs the slot above and its left neighbour"},
    {"deep", "a deeper member sits at least two rows under the anchor"},
    {"typed", "every member is the anchor or joins by a rule"},
    {"typeonly", "rule types are set only for members"},
    {"anchorx", "the anchor is a member"},
    {"oneanchor", "at most one anchor per cycle"},
    {"rightmost", "the anchor is the topmost member of the rightmost stack"},
    {"energy", "cycle energy is bounded by the anchor cost minus credits"},
    {"noanchor", "a target cannot anchor where its anchor cost is undefined"},
};

std::string meaning_of(const std::string& family) {
    for (const Meaning& m : kMeanings) {
        if (family == m.family) return m.text;
    }
    return family;
}

struct Pair {
    int b;
    int i;
    int row;  // current height while at level i
};

class Builder {
public:
    explicit Builder(const Instance& inst) : inst_(inst), n_(inst.target_count()) {
        for (int b = 0; b < n_; ++b) {
            for (int i = 0; i <= inst.targets_below(b); ++i) pairs_.push_back({b, i, inst.target(b).height - i});
        }
        for (int s = 1; s <= inst.stack_count(); ++s) {
            if (inst.targets_in_stack(s) != 0) u_stacks_.push_back(s);
        }
    }

    LpModel build() {
        declare_variables();
        for (int c = 1; c <= n_; ++c) model_.objective.push_back({var("E", c), 1.0});
        add_rows();
        return std::move(model_);
    }

private:
    static std::string key(const char* family, int c, int b, int i) {
        return std::string(family) + "_" + std::to_string(c) + "_" + std::to_string(b) + "_" + std::to_string(i);
    }

    void declare(std::string name, const char* family, bool binary) {
        model_.index.emplace(name, static_cast<int>(model_.vars.size()));
        model_.vars.push_back({std::move(name), family, binary});
    }

    void declare_variables() {
        for (int c = 1; c <= n_; ++c) {
            for (const char* f : kBinaryFamilies) {
                for (const Pair& p : pairs_) declare(key(f, c, p.b, p.i), f, true);
            }
        }
        for (int c = 1; c <= n_; ++c) declare("E_" + std::to_string(c), "E", false);
        for (int c = 1; c <= n_; ++c) {
            for (int s : u_stacks_) declare("h_" + std::to_string(c) + "_" + std::to_string(s), "h", false);
        }
    }

    int var(const char* family, int c, int b, int i) const { return model_.index.at(key(family, c, b, i)); }
    int var(const char* family, int c) const { return model_.index.at(std::string(family) + "_" + std::to_string(c)); }
    int hvar(int c, int s) const { return model_.index.at("h_" + std::to_string(c) + "_" + std::to_string(s)); }

    struct RowDraft {
        std::map<int, double> terms;
        void add(int v, double coef) { terms[v] += coef; }
    };

    void emit(std::string name, const char* family, const RowDraft& d, Sense sense, double rhs) {
        LpRow row;
        row.name = std::move(name);
        row.family = family;
        for (const auto& [v, coef] : d.terms) {
            if (coef != 0.0) row.terms.push_back({v, coef});
        }
        row.sense = sense;
        row.rhs = rhs;
        model_.rows.push_back(std::move(row));
    }

    std::string tag(const char* family, int c, int b, int i) const { return key(family, c, b, i); }

    void add_rows() {
        const SparseView view = derive_sparse(inst_);
        int max_height = 0;
        for (const Position& p : inst_.targets()) max_height = std::max(max_height, p.height);
        const double big_m = max_height;

        for (int b = 0; b < n_; ++b) {
            RowDraft d;
            for (int c = 1; c <= n_; ++c) {
                for (const Pair& p : pairs_) {
                    if (p.b == b) d.add(var("x", c, p.b, p.i), 1);
                }
            }
            emit("cover_" + std::to_string(b), "cover", d, Sense::Equal, 1);
        }
        for (int s : u_stacks_) {
            RowDraft d;
            d.add(hvar(1, s), 1);
            emit("hinit_" + std::to_string(s), "hinit", d, Sense::Equal, inst_.stack_height(s));
        }
        for (int c = 1; c < n_; ++c) {
            for (int s : u_stacks_) {
                RowDraft d;
                d.add(hvar(c, s), 1);
                d.add(hvar(c + 1, s), -1);
                for (const Pair& p : pairs_) {
                    if (inst_.target(p.b).stack == s) d.add(var("x", c, p.b, p.i), -1);
                }
                emit("hupd_" + std::to_string(c) + "_" + std::to_string(s), "hupd", d, Sense::Equal, 0);
            }
        }
        for (int c = 1; c <= n_; ++c) {
            for (int b = 0; b < n_; ++b) {
                RowDraft d;
                for (int cc = 1; cc < c; ++cc) {
                    for (const Pair& p : pairs_) {
                        if (contains(inst_.below_mask(b), p.b)) d.add(var("x", cc, p.b, p.i), 1);
                    }
                }
                for (const Pair& p : pairs_) {
                    if (p.b == b) d.add(var("u", c, p.b, p.i), -p.i);
                }
                emit("level_" + std::to_string(c) + "_" + std::to_string(b), "level", d, Sense::Equal, 0);
            }
        }
        for_each_cp([&](int c, const Pair& p) {
            RowDraft d;
            d.add(var("x", c, p.b, p.i), 1);
            d.add(var("u", c, p.b, p.i), -1);
            emit(tag("xu", c, p.b, p.i), "xu", d, Sense::LessEqual, 0);
        });
        for (int c = 1; c <= n_; ++c) {
            for (int b = 0; b < n_; ++b) {
                RowDraft d;
                for (const Pair& p : pairs_) {
                    if (p.b == b) d.add(var("u", c, p.b, p.i), 1);
                }
                emit("uone_" + std::to_string(c) + "_" + std::to_string(b), "uone", d, Sense::Equal, 1);
            }
        }
        // Passage: row - 1 <= height of every stack to the left, relaxed by
        // big_m when the pair is not retrieved. big_m = max target height
        // covers the worst case of an emptied stack.
        for_each_cp([&](int c, const Pair& p) {
            const auto w = view.support[static_cast<std::size_t>(p.b)];
            if (!w) return;
            RowDraft d;
            d.add(var("x", c, p.b, p.i), big_m);
            emit(tag("support", c, p.b, p.i), "support", d, Sense::LessEqual, *w + big_m - (p.row - 1));
        });
        for_each_cp([&](int c, const Pair& p) {
            for (int s : u_stacks_) {
                if (s >= inst_.target(p.b).stack) break;
                RowDraft d;
                d.add(var("x", c, p.b, p.i), big_m);
                d.add(hvar(c, s), -1);
                emit(tag("pass", c, p.b, p.i) + "_" + std::to_string(s), "pass", d, Sense::LessEqual,
                     big_m - (p.row - 1));
            }
        });
        for_each_cp([&](int c, const Pair& p) {
            const int s = inst_.target(p.b).stack;
            RowDraft d;
            d.add(var("z1", c, p.b, p.i), 1);
            for (const Pair& q : pairs_) {
                if (q.row == p.row && inst_.target(q.b).stack > s) d.add(var("y", c, q.b, q.i), -1);
            }
            emit(tag("samerow", c, p.b, p.i), "samerow", d, Sense::LessEqual, 0);
        });
        // s * z2 <= number of non-deep members one row lower in stacks 1..s.
        for_each_cp([&](int c, const Pair& p) {
            const int s = inst_.target(p.b).stack;
            RowDraft d;
            d.add(var("z2", c, p.b, p.i), s);
            for (const Pair& q : pairs_) {
                if (q.row != p.row - 1 || inst_.target(q.b).stack > s) continue;
                d.add(var("x", c, q.b, q.i), -1);
                d.add(var("z3", c, q.b, q.i), 1);
                d.add(var("z4", c, q.b, q.i), 1);
            }
            emit(tag("rowabove", c, p.b, p.i), "rowabove", d, Sense::LessEqual, 0);
        });
        // Stack 1 has no left neighbour: one supporting term suffices there.
        for_each_cp([&](int c, const Pair& p) {
            const int s = inst_.target(p.b).stack;
            const double first = s == 1 ? 1 : 0;
            RowDraft d;
            d.add(var("z3", c, p.b, p.i), 2);
            for (const Pair& q : pairs_) {
                const int t = inst_.target(q.b).stack;
                if (q.row == p.row + 1 && t >= s) d.add(var("y", c, q.b, q.i), -1);
                if (q.row == p.row && t == s - 1) d.add(var("x", c, q.b, q.i), -1);
            }
            emit(tag("rowbelow1", c, p.b, p.i), "rowbelow1", d, Sense::LessEqual, first);
        });
        for_each_cp([&](int c, const Pair& p) {
            const int s = inst_.target(p.b).stack;
            const double first = s == 1 ? 1 : 0;
            RowDraft d;
            d.add(var("z4", c, p.b, p.i), 2);
            for (const Pair& q : pairs_) {
                const int t = inst_.target(q.b).stack;
                if (q.row == p.row + 1 && t == s) d.add(var("x", c, q.b, q.i), -1);
                if (q.row == p.row && t == s - 1) d.add(var("x", c, q.b, q.i), -1);
            }
            emit(tag("rowbelow2", c, p.b, p.i), "rowbelow2", d, Sense::LessEqual, first);
        });
        for_each_cp([&](int c, const Pair& p) {
            RowDraft d;
            d.add(var("z4", c, p.b, p.i), 1);
            for (const Pair& q : pairs_) {
                if (q.row >= p.row + 2) d.add(var("y", c, q.b, q.i), -1);
            }
            emit(tag("deep", c, p.b, p.i), "deep", d, Sense::LessEqual, 0);
        });
        for_each_cp([&](int c, const Pair& p) {
            RowDraft d;
            d.add(var("x", c, p.b, p.i), 1);
            for (const char* f : {"y", "z1", "z2", "z3", "z4"}) d.add(var(f, c, p.b, p.i), -1);
            emit(tag("typed", c, p.b, p.i), "typed", d, Sense::LessEqual, 0);
        });
        for_each_cp([&](int c, const Pair& p) {
            RowDraft d;
            for (const char* f : {"z1", "z2", "z3", "z4"}) d.add(var(f, c, p.b, p.i), 1);
            d.add(var("x", c, p.b, p.i), -1);
            emit(tag("typeonly", c, p.b, p.i), "typeonly", d, Sense::LessEqual, 0);
        });
        for_each_cp([&](int c, const Pair& p) {
            RowDraft d;
            d.add(var("y", c, p.b, p.i), 1);
            d.add(var("x", c, p.b, p.i), -1);
            emit(tag("anchorx", c, p.b, p.i), "anchorx", d, Sense::LessEqual, 0);
        });
        for (int c = 1; c <= n_; ++c) {
            RowDraft d;
            for (const Pair& p : pairs_) d.add(var("y", c, p.b, p.i), 1);
            emit("oneanchor_" + std::to_string(c), "oneanchor", d, Sense::LessEqual, 1);
        }
        for_each_cp([&](int c, const Pair& p) {
            const int s = inst_.target(p.b).stack;
            RowDraft d;
            d.add(var("x", c, p.b, p.i), 1);
            for (const Pair& q : pairs_) {
                const int t = inst_.target(q.b).stack;
                if (t > s || (t == s && q.row >= p.row)) d.add(var("y", c, q.b, q.i), -1);
            }
            emit(tag("rightmost", c, p.b, p.i), "rightmost", d, Sense::LessEqual, 0);
        });
        // E_c >= A(b,i) y - retrieved so far left of s(b) or above b in its
        // stack + this cycle's members left of s(b) below the anchor row.
        for_each_cp([&](int c, const Pair& p) {
            const auto cost = view.anchor_cost({p.b, p.i});
            RowDraft d;
            if (!cost) {
                d.add(var("y", c, p.b, p.i), 1);
                emit(tag("noanchor", c, p.b, p.i), "noanchor", d, Sense::Equal, 0);
                return;
            }
            const Position& pb = inst_.target(p.b);
            d.add(var("E", c), 1);
            d.add(var("y", c, p.b, p.i), -*cost);
            for (int cc = 1; cc <= c; ++cc) {
                for (const Pair& q : pairs_) {
                    const Position& pq = inst_.target(q.b);
                    if (pq.stack < pb.stack || (pq.stack == pb.stack && pq.height > pb.height)) {
                        d.add(var("x", cc, q.b, q.i), 1);
                    }
                }
            }
            for (const Pair& q : pairs_) {
                if (inst_.target(q.b).stack < pb.stack) {
                    d.add(var("z3", c, q.b, q.i), -1);
                    d.add(var("z4", c, q.b, q.i), -1);
                }
            }
            emit(tag("energy", c, p.b, p.i), "energy", d, Sense::GreaterEqual, 0);
        });
    }

    template <typename F>
    void for_each_cp(F&& f) {
        for (int c = 1; c <= n_; ++c) {
            for (const Pair& p : pairs_) f(c, p);
        }
    }

    const Instance& inst_;
    int n_;
    std::vector<Pair> pairs_;
    std::vector<int> u_stacks_;
    LpModel model_;
};

}  // namespace

int LpModel::index_of(std::string_view name) const {
    const auto it = index.find(std::string(name));
    return it == index.end() ? -1 : it->second;
}

LpModel build_model(const Instance& instance) {
    if (auto v = find_feasibility_violation(SliceState(instance))) {
        throw InfeasibleError("target " + std::to_string(v->target) + " is blocked by stack " +
                              std::to_string(v->stack));
    }
    return Builder(instance).build();
}

ModelCounts count_model(const LpModel& model) {
    ModelCounts counts;
    for (const LpVar& v : model.vars) {
        (v.binary ? counts.binaries : counts.continuous) += 1;
        ++counts.variable_families[v.family];
    }
    for (const LpRow& r : model.rows) ++counts.constraint_families[r.family];
    counts.constraints = static_cast<long>(model.rows.size());
    return counts;
}

ModelCounts predicted_counts(const Instance& instance) {
    const long n = instance.target_count();
    long pairs = 0;
    long support_pairs = 0;
    long pass_terms = 0;
    long undefined = 0;
    long u_stacks = 0;
    for (int s = 1; s <= instance.stack_count(); ++s) u_stacks += instance.targets_in_stack(s) != 0;
    const SparseView view = derive_sparse(instance);
    for (int b = 0; b < n; ++b) {
        const long levels = instance.targets_below(b) + 1;
        pairs += levels;
        if (view.support[static_cast<std::size_t>(b)]) support_pairs += levels;
        long left = 0;
        for (int s = 1; s < instance.target(b).stack; ++s) left += instance.targets_in_stack(s) != 0;
        pass_terms += left * levels;
        for (const auto& a : view.anchor_energy[static_cast<std::size_t>(b)]) undefined += !a.has_value();
    }

    ModelCounts c;
    for (const char* f : kBinaryFamilies) c.variable_families[f] = n * pairs;
    c.variable_families["E"] = n;
    c.variable_families["h"] = n * u_stacks;
    c.binaries = 7 * n * pairs;
    c.continuous = n + n * u_stacks;

    auto& f = c.constraint_families;
    f["cover"] = n;
    f["hinit"] = u_stacks;
    f["hupd"] = (n - 1) * u_stacks;
    f["level"] = n * n;
    f["uone"] = n * n;
    f["oneanchor"] = n;
    f["support"] = n * support_pairs;
    f["pass"] = n * pass_terms;
    for (const char* per_pair : {"xu", "samerow", "rowabove", "rowbelow1", "rowbelow2", "deep", "typed", "typeonly",
                                 "anchorx", "rightmost"}) {
        f[per_pair] = n * pairs;
    }
    f["energy"] = n * (pairs - undefined);
    f["noanchor"] = n * undefined;
    for (auto it = f.begin(); it != f.end();) {
        if (it->second == 0) {
            it = f.erase(it);
        } else {
            c.constraints += it->second;
            ++it;
        }
    }
    return c;
}

namespace {

std::string number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_terms(std::string& out, const LpModel& model, const std::vector<LpTerm>& terms) {
    if (terms.empty()) {
        out += " 0 " + model.vars.front().name;
        return;
    }
    int on_line = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const LpTerm& t = terms[k];
        if (on_line == 8) {
            out += "\n  ";
            on_line = 0;
        }
        const double mag = std::abs(t.coef);
        out += (t.coef < 0 ? " - " : (k == 0 ? " " : " + "));
        if (mag != 1.0) out += number(mag) + " ";
        out += model.vars[static_cast<std::size_t>(t.var)].name;
        ++on_line;
    }
}

}  // namespace

std::string write_lp(const LpModel& model) {
    std::string out = "\\ retrieval-cycle model\nMinimize\n obj:";
    write_terms(out, model, model.objective);
    out += "\nSubject To\n";
    for (const LpRow& r : model.rows) {
        out += " " + r.name + ":";
        write_terms(out, model, r.terms);
        out += r.sense == Sense::LessEqual ? " <= " : (r.sense == Sense::Equal ? " = " : " >= ");
        out += number(r.rhs) + "\n";
    }
    out += "Bounds\n";
    for (const LpVar& v : model.vars) {
        if (!v.binary) out += " " + v.name + " >= 0\n";
    }
    out += "Binaries\n";
    int on_line = 0;
    for (const LpVar& v : model.vars) {
        if (!v.binary) continue;
        out += " " + v.name;
        if (++on_line == 10) {
            out += "\n";
            on_line = 0;
        }
    }
    if (on_line != 0) out += "\n";
    out += "End\n";
    return out;
}

ModelCounts export_model(const Instance& instance, const std::string& path) {
    const LpModel model = build_model(instance);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << write_lp(model);
    if (!out) throw Error("write to " + path + " failed");
    return count_model(model);
}

Assignment parse_assignment(std::string_view text) {
    Assignment values;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string name;
        std::string value;
        if (!(fields >> name)) continue;
        std::string extra;
        if (!(fields >> value) || (fields >> extra)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected `name value`");
        }
        double v = 0;
        const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
        if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": bad number \"" + value + "\"");
        }
        if (!values.emplace(name, v).second) {
            throw ParseError("line " + std::to_string(line_no) + ": " + name + " assigned twice");
        }
    }
    return values;
}

Assignment load_assignment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open assignment file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_assignment(buffer.str());
}

std::optional<AuditIssue> audit_assignment(const LpModel& model, const Assignment& values) {
    std::vector<double> x(model.vars.size(), 0.0);
    for (const auto& [name, v] : values) {
        const int k = model.index_of(name);
        if (k < 0) return AuditIssue{name, "unknown variable", v, 0};
        x[static_cast<std::size_t>(k)] = v;
    }
    for (std::size_t k = 0; k < model.vars.size(); ++k) {
        const LpVar& var = model.vars[k];
        if (var.binary) {
            if (std::abs(x[k]) > kMipTolerance && std::abs(x[k] - 1) > kMipTolerance) {
                return AuditIssue{var.name, "binary variable is not 0 or 1", x[k], 1};
            }
        } else if (x[k] < -kMipTolerance) {
            return AuditIssue{var.name, "continuous variable is negative", x[k], 0};
        }
    }
    for (const LpRow& r : model.rows) {
        double lhs = 0;
        for (const LpTerm& t : r.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
        const bool ok = r.sense == Sense::LessEqual ? lhs <= r.rhs + kMipTolerance
                        : r.sense == Sense::Equal   ? std::abs(lhs - r.rhs) <= kMipTolerance
                                                    : lhs >= r.rhs - kMipTolerance;
        if (!ok) return AuditIssue{r.name, meaning_of(r.family), lhs, r.rhs};
    }
    return std::nullopt;
}

Solution import_solution(const Instance& instance, const Assignment& values) {
    const LpModel model = build_model(instance);
    if (auto issue = audit_assignment(model, values)) {
        throw ValidationError("constraint " + issue->where + " violated (" + issue->meaning +
                              "): lhs " + number(issue->lhs) + ", rhs " + number(issue->rhs));
    }
    auto value = [&](const std::string& name) {
        const auto it = values.find(name);
        return it == values.end() ? 0.0 : it->second;
    };
    const int n = instance.target_count();
    Solution solution;
    SliceState state(instance);
    double declared = 0;
    for (int c = 1; c <= n; ++c) {
        declared += value("E_" + std::to_string(c));
        TargetSet batch = 0;
        for (int b = 0; b < n; ++b) {
            for (int i = 0; i <= instance.targets_below(b); ++i) {
                if (value("x_" + std::to_string(c) + "_" + std::to_string(b) + "_" + std::to_string(i)) > 0.5) {
                    batch |= bit(b);
                }
            }
        }
        if (batch == 0) continue;
        CyclePlan plan;
        try {
            plan = plan_cycle(state, batch);
        } catch (const Error& e) {
            throw ValidationError("cycle " + std::to_string(c) + ": " + e.what());
        }
        solution.cycles.push_back(plan);
        state = state.after(batch);
    }
    const Replay replay = replay_solution(instance, solution);
    if (std::abs(declared - static_cast<double>(replay.solution.total_energy)) > kMipTolerance) {
        throw ValidationError("sum of E is " + number(declared) + " but the cycles replay to " +
                              std::to_string(replay.solution.total_energy));
    }
    return replay.solution;
}

Assignment assignment_from_solution(const Instance& instance, const Solution& solution) {
    const Replay replay = replay_solution(instance, solution);
    const int n = instance.target_count();
    if (static_cast<int>(replay.solution.cycles.size()) > n) throw ValidationError("more cycles than targets");
    Assignment a;
    auto set = [&](const char* f, int c, int b, int i) {
        a[std::string(f) + "_" + std::to_string(c) + "_" + std::to_string(b) + "_" + std::to_string(i)] = 1;
    };
    SliceState state(instance);
    for (int c = 1; c <= n; ++c) {
        for (int s = 1; s <= instance.stack_count(); ++s) {
            if (instance.targets_in_stack(s) == 0) continue;
            const int h = state.stack_height(s);
            if (h != 0) a["h_" + std::to_string(c) + "_" + std::to_string(s)] = h;
        }
        for (int b = 0; b < n; ++b) set("u", c, b, state.level(b));
        if (c > static_cast<int>(replay.solution.cycles.size())) continue;

        const CyclePlan& plan = replay.solution.cycles[static_cast<std::size_t>(c - 1)];
        TargetSet batch = 0;
        for (int b : plan.order) batch |= bit(b);
        const Anchor anchor = batch_anchor(state, batch);
        const int anchor_row = state.target_height(anchor.target);
        for (int b : plan.order) {
            const int level = state.level(b);
            const int row = state.target_height(b);
            set("x", c, b, level);
            if (b == anchor.target) {
                set("y", c, b, level);
            } else if (row == anchor_row) {
                set("z1", c, b, level);
            } else if (row > anchor_row) {
                set("z2", c, b, level);
            } else if (row == anchor_row - 1) {
                set("z3", c, b, level);
            } else {
                set("z4", c, b, level);
            }
        }
        if (plan.energy != 0) a["E_" + std::to_string(c)] = plan.energy;
        state = state.after(batch);
    }
    return a;
}

std::string write_assignment(const Assignment& values) {
    std::string out;
    for (const auto& [name, v] : values) out += name + " " + number(v) + "\n";
    return out;
}

}  // namespace sacrp
