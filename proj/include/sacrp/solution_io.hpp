#pragma once

#include "sacrp/simulation.hpp"

#include <string>
#include <string_view>

namespace sacrp {

/// {"cycles":[{"targets":[0,2,3,4,5],"clearances":[4,3,2,3]},{"targets":[1]}]}
/// Clearances are optional per cycle; energies present in the document are
/// ignored on input and recomputed by replay.
Solution parse_solution(std::string_view text);
Solution load_solution(const std::string& path);

std::string write_solution(const Solution& solution);
void save_solution(const Solution& solution, const std::string& path);

}  // namespace sacrp
