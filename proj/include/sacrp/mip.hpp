#pragma once

#include "sacrp/simulation.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sacrp {

/// Integer program for the whole retrieval, with n cycles of which some
/// may stay empty. Names:
///   x_c_b_i   b retrieved in cycle c at level i
///   y_c_b_i   cycle c anchored by b at level i
///   z1..z4_c_b_i  rule under which a non-anchor member joins: anchor row,
///             above it, one row below, deeper
///   u_c_b_i   b sits at level i when cycle c starts
///   E_c       energy of cycle c
///   h_c_s     height of stack s at the start of cycle c (stacks with targets)
/// c and s are 1-based, b is the 0-based target index, i runs 0..below(b).
struct LpTerm {
    int var;
    double coef;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LpRow {
    std::string name;
    std::string family;
    std::vector<LpTerm> terms;  // ascending variable index, no zeros
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

struct LpVar {
    std::string name;
    std::string family;
    bool binary = true;
};

struct LpModel {
    std::vector<LpVar> vars;
    std::vector<LpRow> rows;
    std::vector<LpTerm> objective;

    int index_of(std::string_view name) const;
    std::map<std::string, int> index;
};

struct ModelCounts {
    long binaries = 0;
    long continuous = 0;
    long constraints = 0;
    std::map<std::string, long> variable_families;
    std::map<std::string, long> constraint_families;

    friend bool operator==(const ModelCounts&, const ModelCounts&) = default;
};

/// Throws InfeasibleError for infeasible instances.
LpModel build_model(const Instance& instance);

/// Counts by inspecting a built model.
ModelCounts count_model(const LpModel& model);

/// Counts from per-family formulas over the instance alone.
ModelCounts predicted_counts(const Instance& instance);

/// LP format: Minimize / Subject To / Bounds / Binaries / End.
std::string write_lp(const LpModel& model);

/// Builds, writes to `path`, returns the counts.
ModelCounts export_model(const Instance& instance, const std::string& path);

/// Variable values by name; names absent from the file are zero.
using Assignment = std::map<std::string, double>;

/// `name value` per line, `#` starts a comment.
Assignment parse_assignment(std::string_view text);
Assignment load_assignment(const std::string& path);

struct AuditIssue {
    std::string where;    // row or variable name
    std::string meaning;  // what the family enforces
    double lhs = 0.0;
    double rhs = 0.0;
};

inline constexpr double kMipTolerance = 1e-6;

/// First violated row, non-integral binary or unknown variable, if any.
std::optional<AuditIssue> audit_assignment(const LpModel& model, const Assignment& values);

/// Audits, rebuilds the cycles from the x variables, replays them and checks
/// the sum of E against the replayed energy. Throws ValidationError naming
/// the failed check.
Solution import_solution(const Instance& instance, const Assignment& values);

/// The assignment that encodes a valid solution (levels, heights, rule
/// types and exact cycle energies filled in).
Assignment assignment_from_solution(const Instance& instance, const Solution& solution);

std::string write_assignment(const Assignment& values);

}  // namespace sacrp
