#include <algorithm>
#include <limits>
#include <random>

#include "roaring/dataset.hpp"

namespace roaring {
namespace {

// Uniform in [lo, hi] by rejection; unlike std::uniform_int_distribution the
// result is the same on every standard library.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % range;
}

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint32_t> gen_set(std::mt19937_64& rng, std::size_t n, std::uint64_t universe) {
    using namespace clusterdata;
    if (n == universe) {
        std::vector<std::uint32_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
        return all;
    }
    if (n == 0) return {};
    const double gaps = static_cast<double>(n - 1);
    const double small_mean = (1.0 + kSmallGapMax) / 2.0;
    std::uint64_t small_max = kSmallGapMax;
    std::uint64_t large_max = 1;
    if (n > 1) {
        const double per_gap = kTargetSpanFraction * static_cast<double>(universe) / gaps;
        const double g = 2.0 * (per_gap - kSmallGapProbability * small_mean) /
                             (1.0 - kSmallGapProbability) - 1.0;
        large_max = static_cast<std::uint64_t>(std::max(1.0, g));
    }
    std::vector<std::uint64_t> offsets(n);
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        std::uint64_t span = 0;
        offsets[0] = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const bool small = unit(rng) < kSmallGapProbability;
            span += uniform(rng, 1, small ? small_max : large_max);
            offsets[i] = span;
        }
        if (span < universe) {
            const std::uint64_t start = uniform(rng, 0, universe - 1 - span);
            std::vector<std::uint32_t> out(n);
            for (std::size_t i = 0; i < n; ++i) {
                out[i] = static_cast<std::uint32_t>(start + offsets[i]);
            }
            return out;
        }
        if (large_max > 1) {
            large_max = std::max<std::uint64_t>(1, large_max / 2);
        } else {
            small_max = std::max<std::uint64_t>(1, small_max / 2);
        }
    }
    throw DatasetError("clusterdata: no fitting draw after " +
                       std::to_string(clusterdata::kMaxRetries) + " retries");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Dataset gen_clusterdata(std::uint64_t seed, std::size_t n_sets, std::size_t set_size,
                        std::uint64_t universe) {
    if (universe > (std::uint64_t{1} << 32)) {
        throw DatasetError("clusterdata: universe exceeds 2^32");
    }
    if (set_size > universe) {
        throw DatasetError("clusterdata: set size " + std::to_string(set_size) +
                           " exceeds universe " + std::to_string(universe));
    }
    if (set_size == 0) throw DatasetError("clusterdata: set size must be positive");
    Dataset d;
    d.name = "clusterdata-s" + std::to_string(seed);
    d.sets.reserve(n_sets);
    for (std::size_t i = 0; i < n_sets; ++i) {
        std::mt19937_64 rng(splitmix64(seed + i));
        d.sets.push_back(gen_set(rng, set_size, universe));
    }
    return d;
}

}  // namespace roaring
