#include "sacrp/instance.hpp"

#include "sacrp/error.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace sacrp {

Instance::Instance(std::vector<int> stack_heights, std::vector<Position> targets)
    : heights_(std::move(stack_heights)), targets_(std::move(targets)) {
    if (heights_.empty()) {
        throw ParseError("instance needs at least one stack");
    }
    for (std::size_t s = 0; s < heights_.size(); ++s) {
        if (heights_[s] < 1) {
            throw ParseError("stack " + std::to_string(s + 1) + " has non-positive height " +
                             std::to_string(heights_[s]));
        }
    }
    if (targets_.size() > static_cast<std::size_t>(kMaxTargets)) {
        throw ParseError("at most " + std::to_string(kMaxTargets) + " targets are supported");
    }

    stack_masks_.assign(heights_.size(), 0);
    for (int b = 0; b < target_count(); ++b) {
        const Position& p = targets_[b];
        if (p.stack < 1 || p.stack > stack_count()) {
            throw ParseError("target " + std::to_string(b) + " references stack " +
                             std::to_string(p.stack) + " outside 1.." + std::to_string(stack_count()));
        }
        if (p.height < 1 || p.height > heights_[p.stack - 1]) {
            throw ParseError("target " + std::to_string(b) + " at height " + std::to_string(p.height) +
                             " exceeds stack " + std::to_string(p.stack) + " of height " +
                             std::to_string(heights_[p.stack - 1]));
        }
        for (int other = 0; other < b; ++other) {
            if (targets_[other] == p) {
                throw ParseError("duplicate target position (" + std::to_string(p.stack) + "," +
                                 std::to_string(p.height) + ") for targets " + std::to_string(other) +
                                 " and " + std::to_string(b));
            }
        }
        stack_masks_[p.stack - 1] |= bit(b);
    }

    below_.assign(targets_.size(), 0);
    below_masks_.assign(targets_.size(), 0);
    for (int b = 0; b < target_count(); ++b) {
        for (int o = 0; o < target_count(); ++o) {
            if (targets_[o].stack == targets_[b].stack && targets_[o].height < targets_[b].height) {
                ++below_[b];
                below_masks_[b] |= bit(o);
            }
        }
    }
}

int Instance::target_at(Position pos) const {
    for (int b = 0; b < target_count(); ++b) {
        if (targets_[b] == pos) return b;
    }
    return -1;
}

int Instance::max_stack_height() const noexcept {
    return heights_.empty() ? 0 : *std::max_element(heights_.begin(), heights_.end());
}

long Instance::total_units() const noexcept {
    return std::accumulate(heights_.begin(), heights_.end(), 0L);
}

TargetSet Instance::all_targets() const noexcept {
    return target_count() == kMaxTargets ? ~TargetSet{0} : bit(target_count()) - 1;
}

namespace {

int read_int(const nlohmann::json& node, const char* what) {
    if (!node.is_number_integer()) {
        throw ParseError(std::string("expected integer for ") + what);
    }
    return node.get<int>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    if (doc.contains("version") && read_int(doc["version"], "version") != 1) {
        throw ParseError("unsupported instance version " + doc["version"].dump());
    }
    if (!doc.contains("stacks") || !doc["stacks"].is_array()) {
        throw ParseError("instance document lacks a \"stacks\" array");
    }
    std::vector<int> heights;
    for (const auto& h : doc["stacks"]) heights.push_back(read_int(h, "stack height"));

    std::vector<Position> targets;
    if (doc.contains("targets")) {
        if (!doc["targets"].is_array()) throw ParseError("\"targets\" must be an array");
        for (const auto& t : doc["targets"]) {
            if (!t.is_object() || !t.contains("stack") || !t.contains("height")) {
                throw ParseError("each target needs \"stack\" and \"height\"");
            }
            targets.push_back({read_int(t["stack"], "target stack"), read_int(t["height"], "target height")});
        }
    }
    return Instance(std::move(heights), std::move(targets));
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string write_instance(const Instance& instance) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["stacks"] = instance.stack_heights();
    doc["targets"] = nlohmann::ordered_json::array();
    for (const Position& p : instance.targets()) {
        nlohmann::ordered_json t;
        t["stack"] = p.stack;
        t["height"] = p.height;
        doc["targets"].push_back(std::move(t));
    }
    return doc.dump();
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << write_instance(instance) << '\n';
}

}  // namespace sacrp
