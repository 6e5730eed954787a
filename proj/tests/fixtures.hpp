#pragma once

#include "sacrp/feasibility.hpp"
#include "sacrp/instance.hpp"

#include <random>
#include <string>

namespace fixtures {

// Four stacks [5,4,2,4]; targets b1..b6 are indices 0..5.
inline sacrp::Instance worked_example() {
    return sacrp::Instance({5, 4, 2, 4}, {{1, 4}, {4, 4}, {1, 3}, {2, 3}, {4, 3}, {1, 2}});
}

inline std::string data_path(const std::string& name) { return std::string(SACRP_TEST_DATA) + "/" + name; }

// Small random feasible slice, drawn independently of the library generator.
inline sacrp::Instance random_feasible(std::mt19937& rng, int max_stacks, int max_height, int max_targets) {
    for (;;) {
        std::uniform_int_distribution<int> stacks_dist(1, max_stacks);
        std::uniform_int_distribution<int> height_dist(1, max_height);
        const int m = stacks_dist(rng);
        std::vector<int> heights(static_cast<std::size_t>(m));
        for (int& h : heights) h = height_dist(rng);
        std::vector<sacrp::Position> cells;
        for (int s = 1; s <= m; ++s) {
            for (int h = 1; h <= heights[s - 1]; ++h) cells.push_back({s, h});
        }
        std::shuffle(cells.begin(), cells.end(), rng);
        std::uniform_int_distribution<int> count_dist(1, max_targets);
        const int d = std::min<int>(count_dist(rng), static_cast<int>(cells.size()));
        cells.resize(static_cast<std::size_t>(d));
        std::sort(cells.begin(), cells.end(), [](auto a, auto b) {
            return a.stack != b.stack ? a.stack < b.stack : a.height < b.height;
        });
        sacrp::Instance inst(heights, cells);
        if (sacrp::check_feasibility(inst)) return inst;
    }
}

}  // namespace fixtures
