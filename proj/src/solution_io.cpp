#include "sacrp/solution_io.hpp"

#include "sacrp/error.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sacrp {

namespace {

std::vector<int> int_array(const nlohmann::json& node, const char* what) {
    if (!node.is_array()) throw ParseError(std::string("\"") + what + "\" must be an array");
    std::vector<int> out;
    for (const auto& v : node) {
        if (!v.is_number_integer()) throw ParseError(std::string("non-integer entry in \"") + what + "\"");
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace

Solution parse_solution(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed solution document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cycles") || !doc["cycles"].is_array()) {
        throw ParseError("solution document needs a \"cycles\" array");
    }
    Solution solution;
    for (const auto& cycle : doc["cycles"]) {
        if (!cycle.is_object() || !cycle.contains("targets")) {
            throw ParseError("each cycle needs a \"targets\" array");
        }
        CyclePlan plan;
        plan.order = int_array(cycle["targets"], "targets");
        if (cycle.contains("clearances")) plan.clearances = int_array(cycle["clearances"], "clearances");
        solution.cycles.push_back(std::move(plan));
    }
    return solution;
}

Solution load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open solution file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_solution(buffer.str());
}

std::string write_solution(const Solution& solution) {
    nlohmann::ordered_json doc;
    doc["cycles"] = nlohmann::ordered_json::array();
    for (const CyclePlan& plan : solution.cycles) {
        nlohmann::ordered_json cycle;
        cycle["targets"] = plan.order;
        if (!plan.clearances.empty()) cycle["clearances"] = plan.clearances;
        cycle["energy"] = plan.energy;
        doc["cycles"].push_back(std::move(cycle));
    }
    doc["total_energy"] = solution.total_energy;
    return doc.dump();
}

void save_solution(const Solution& solution, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << write_solution(solution) << '\n';
}

}  // namespace sacrp
