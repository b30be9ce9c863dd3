#pragma once
// Benchmarks over a dataset, each preceded by a check against the
// sorted-array oracle. A failed check throws CorrectnessError and nothing is
// timed.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "roaring/bench/baselines.hpp"
#include "roaring/bench/report.hpp"
#include "roaring/dataset.hpp"
#include "roaring/roaring_bitmap.hpp"

namespace roaring::bench {

enum class Structure { Roaring, Bitset, SortedArray, HashSet };

const char* to_string(Structure s) noexcept;
std::vector<Structure> all_structures();
// Comma-separated names: roaring, bitset, array, hashset.
std::vector<Structure> parse_structures(const std::string& list);

class CorrectnessError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<Structure> structures = all_structures();
    int runs = kMinRuns;
    int warmup = 1;
};

// Roaring bitmaps are run-optimized and shrunk after construction.
RoaringBitmap build_roaring(std::span<const std::uint32_t> values);

std::array<std::uint32_t, 3> membership_probes(std::uint64_t universe) noexcept;

std::vector<Row> bench_memory(const Dataset& d, const Options& o);
std::vector<Row> bench_membership(const Dataset& d, const Options& o);
std::vector<Row> bench_iterate(const Dataset& d, const Options& o);
std::vector<Row> bench_pairwise(const Dataset& d, SetOp op, bool count_only, const Options& o);
std::vector<Row> bench_wide_union(const Dataset& d, const Options& o);

// Every correctness cross-check, untimed. Returns failure descriptions.
std::vector<std::string> validate(const Dataset& d);

}  // namespace roaring::bench
