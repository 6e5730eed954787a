#pragma once

#include "sacrp/simulation.hpp"

#include <map>

namespace sacrp {

/// Exhaustive reference solver. Knows nothing about batch shapes: it tries
/// every subset of the unretrieved targets in every order, lets the
/// simulator decide, and runs a memoized search over retrieved sets.
struct OracleOptions {
    int max_targets = 7;
};

/// Every retrievable subset of the state's unretrieved targets with the
/// cheapest energy over all retrieval orders.
std::map<TargetSet, int> enumerate_feasible_batches_raw(const SliceState& state);

/// Optimal solution by brute force. Throws Error above max_targets and
/// InfeasibleError when nothing completes the retrieval.
Solution solve_oracle(const Instance& instance, const OracleOptions& options = {});

}  // namespace sacrp
