#pragma once

#include "sacrp/instance.hpp"

#include <cstdint>
#include <random>

namespace sacrp {

/// Seeded source with a fixed algorithm: std::mt19937_64 raw output (its
/// sequence is pinned by the standard) and a modulo draw with rejection of
/// the biased tail. The std distributions are implementation-defined and
/// therefore avoided.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

enum class Sampling {
    /// Stack count uniform in 1..w, each height uniform in 1..h, targets
    /// drawn without replacement over all occupied cells.
    UniformCells,
};

struct GenConfig {
    int d = 5;
    int w = 8;
    int h = 8;
    std::uint64_t seed = 1;
    int max_rejects = 10000;
    Sampling sampling = Sampling::UniformCells;
};

/// Draws layouts until one is feasible. Targets come out sorted by stack,
/// then height. Throws Error for invalid parameters or when max_rejects
/// draws in a row fail.
Instance generate_instance(const GenConfig& config);

}  // namespace sacrp
