#include "sacrp/instgen.hpp"

#include "sacrp/error.hpp"
#include "sacrp/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace sacrp {

std::int64_t PortableRng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % span + 1) % span;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return lo + static_cast<std::int64_t>(x % span);
}

namespace {

std::optional<Instance> draw_uniform_cells(const GenConfig& c, PortableRng& rng) {
    const int m = static_cast<int>(rng.uniform(1, c.w));
    std::vector<int> heights(static_cast<std::size_t>(m));
    for (int& height : heights) height = static_cast<int>(rng.uniform(1, c.h));

    std::vector<Position> cells;
    for (int s = 1; s <= m; ++s) {
        for (int y = 1; y <= heights[s - 1]; ++y) cells.push_back({s, y});
    }
    if (static_cast<int>(cells.size()) < c.d) return std::nullopt;
    const auto last = static_cast<std::int64_t>(cells.size()) - 1;
    for (int i = 0; i < c.d; ++i) {
        const auto j = rng.uniform(i, last);
        std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
    }
    cells.resize(static_cast<std::size_t>(c.d));
    std::sort(cells.begin(), cells.end(), [](const Position& a, const Position& b) {
        return a.stack != b.stack ? a.stack < b.stack : a.height < b.height;
    });
    Instance inst(std::move(heights), std::move(cells));
    if (!check_feasibility(inst)) return std::nullopt;
    return inst;
}

}  // namespace

Instance generate_instance(const GenConfig& config) {
    if (config.d < 1 || config.w < 1 || config.h < 1) throw Error("d, w and h must be positive");
    if (config.d > kMaxTargets) throw Error("at most " + std::to_string(kMaxTargets) + " targets");
    if (config.max_rejects < 0) throw Error("max_rejects must be non-negative");
    PortableRng rng(config.seed);
    for (int attempt = 0; attempt <= config.max_rejects; ++attempt) {
        if (auto inst = draw_uniform_cells(config, rng)) return std::move(*inst);
    }
    throw Error("no feasible instance for d=" + std::to_string(config.d) + " w=" + std::to_string(config.w) +
                " h=" + std::to_string(config.h) + " after " + std::to_string(config.max_rejects) + " rejections");
}

}  // namespace sacrp
