#pragma once
// dataset.hpp - collections of integer sets: text loading/writing and the
// clustered synthetic generator.
//
// Text format: one set per file, comma-separated decimal values in strictly
// increasing order, optional trailing newline. Sets are ordered by file name.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace roaring {

struct Dataset {
    std::string name;
    std::vector<std::vector<std::uint32_t>> sets;

    // 1 + largest value over all sets (0 when there are no values).
    std::uint64_t universe() const noexcept;
    std::uint64_t total_values() const noexcept;
};

class DatasetError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Empty string when every set is non-empty and strictly increasing.
std::string check_dataset(const Dataset& d);

std::vector<std::uint32_t> parse_set(const std::string& text, const std::string& source);
Dataset load_dataset(const std::filesystem::path& dir);
// Writes set_00000.txt, set_00001.txt, ... into `dir` (created if needed).
void write_dataset(const Dataset& d, const std::filesystem::path& dir);

// Clustered generator. Gaps between successive values are drawn from
// Uniform[1, 16] with probability 0.99 and from Uniform[1, G] otherwise, with
// G picked so the expected span is 0.9 * universe; the first value is uniform
// over the positions that keep the whole set below `universe`. A draw that
// does not fit halves G (then the small-gap bound) and retries.
//
// Set i draws from mt19937_64 seeded with splitmix64(seed + i), and integer
// ranges use rejection sampling, so output depends only on the arguments.
namespace clusterdata {
inline constexpr double kSmallGapProbability = 0.99;
inline constexpr std::uint32_t kSmallGapMax = 16;
inline constexpr double kTargetSpanFraction = 0.9;
inline constexpr int kMaxRetries = 64;
}  // namespace clusterdata

std::uint64_t splitmix64(std::uint64_t x) noexcept;

Dataset gen_clusterdata(std::uint64_t seed, std::size_t n_sets, std::size_t set_size,
                        std::uint64_t universe);

}  // namespace roaring
