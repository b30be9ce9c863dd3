#pragma once
// container.hpp - per-chunk storage for the low 16 bits of a 32-bit set.
//
// A container is an array (at most 4096 sorted values), a bitset (2^16 bits,
// at least 4097 set) or a list of runs. Every mutating entry point leaves the
// container normalized:
//   * a run container is kept only while it is strictly the smallest
//     representation: runs <= 2047 when card > 4096, 2*runs < card otherwise;
//   * otherwise card <= 4096 means array and card >= 4097 means bitset.
// Arrays and bitsets are never turned into runs implicitly; run_optimize()
// is the only place run candidacy of a non-run container is evaluated.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "roaring/kernels.hpp"

namespace roaring {

inline constexpr std::uint32_t kMaxArrayCardinality = 4096;
inline constexpr std::size_t kMaxRunsWhenDense = 2047;
inline constexpr std::uint32_t kChunkSize = 1u << 16;

enum class ContainerType : std::uint8_t { Array = 1, Bitset = 2, Run = 3 };

const char* to_string(ContainerType type) noexcept;

struct ArrayContainer {
    std::vector<std::uint16_t> values;

    bool operator==(const ArrayContainer& o) const noexcept { return values == o.values; }
};

struct BitsetContainer {
    std::vector<std::uint64_t> words = std::vector<std::uint64_t>(kernels::kBitsetWords, 0);
    std::uint32_t cardinality = 0;

    bool operator==(const BitsetContainer& o) const noexcept {
        return cardinality == o.cardinality && words == o.words;
    }
};

// Closed interval [start, start + length].
struct Run {
    std::uint16_t start = 0;
    std::uint16_t length = 0;

    std::uint32_t last() const noexcept { return std::uint32_t{start} + length; }
    auto operator<=>(const Run&) const = default;
};

struct RunContainer {
    std::vector<Run> runs;

    bool operator==(const RunContainer& o) const noexcept { return runs == o.runs; }
};

// True when a run list with `runs` runs is the strictly smallest encoding of
// `cardinality` values.
constexpr bool run_encoding_preferred(std::uint32_t cardinality, std::size_t runs) noexcept {
    return cardinality > kMaxArrayCardinality ? runs <= kMaxRunsWhenDense
                                              : 2 * runs < cardinality;
}

class Container {
   public:
    using Storage = std::variant<ArrayContainer, BitsetContainer, RunContainer>;

    Container() = default;
    explicit Container(ArrayContainer a) : storage_(std::move(a)) {}
    explicit Container(BitsetContainer b) : storage_(std::move(b)) {}
    explicit Container(RunContainer r) : storage_(std::move(r)) {}

    // Sorted, distinct values -> normalized array or bitset.
    static Container from_sorted(std::span<const std::uint16_t> values);
    // Every value in [first, last].
    static Container from_range(std::uint16_t first, std::uint16_t last);

    ContainerType type() const noexcept { return static_cast<ContainerType>(storage_.index() + 1); }
    std::uint32_t cardinality() const noexcept;
    bool empty() const noexcept { return cardinality() == 0; }

    bool contains(std::uint16_t v) const noexcept;
    // Returns true iff v was absent. Result is normalized.
    bool add(std::uint16_t v);
    // Returns true iff v was present. Result is normalized.
    bool remove(std::uint16_t v);

    const ArrayContainer* array() const noexcept { return std::get_if<ArrayContainer>(&storage_); }
    const BitsetContainer* bitset() const noexcept { return std::get_if<BitsetContainer>(&storage_); }
    const RunContainer* runs() const noexcept { return std::get_if<RunContainer>(&storage_); }
    ArrayContainer* array() noexcept { return std::get_if<ArrayContainer>(&storage_); }
    BitsetContainer* bitset() noexcept { return std::get_if<BitsetContainer>(&storage_); }
    RunContainer* runs() noexcept { return std::get_if<RunContainer>(&storage_); }

    const Storage& storage() const noexcept { return storage_; }
    Storage& storage() noexcept { return storage_; }

    // Number of maximal runs of consecutive values.
    std::size_t count_runs() const noexcept;

    // Visits values in ascending order until `fn` returns false. Returns the
    // number of values visited.
    template <class Fn>
    std::size_t for_each(Fn&& fn) const;

    std::vector<std::uint16_t> values() const;

    // In-memory payload: 2*capacity for arrays, 8192 for bitsets,
    // 4*capacity for runs.
    std::size_t payload_bytes() const noexcept;
    // Trims spare capacity; returns bytes released.
    std::size_t shrink_to_fit();

    bool operator==(const Container&) const = default;

   private:
    Storage storage_;
};

// Canonical type for the stored values (see the header comment).
Container normalize(Container c);
bool is_normalized(const Container& c) noexcept;

// Switches to the smallest admissible encoding, runs included. Returns true
// iff the container type changed.
bool run_optimize(Container& c);

Container pairwise(SetOp op, const Container& a, const Container& b);
std::uint32_t pairwise_cardinality(SetOp op, const Container& a, const Container& b);

// Structural invariants only (sortedness, cardinality bookkeeping, run
// bounds); does not check normalization.
bool is_well_formed(const Container& c) noexcept;

// ---------------------------------------------------------------------------

template <class Fn>
std::size_t Container::for_each(Fn&& fn) const {
    std::size_t visited = 0;
    if (const auto* a = array()) {
        for (std::uint16_t v : a->values) {
            ++visited;
            if (!fn(v)) return visited;
        }
    } else if (const auto* b = bitset()) {
        for (std::size_t i = 0; i < b->words.size(); ++i) {
            std::uint64_t w = b->words[i];
            while (w != 0) {
                const auto v = static_cast<std::uint16_t>(i * 64 + std::countr_zero(w));
                w &= w - 1;
                ++visited;
                if (!fn(v)) return visited;
            }
        }
    } else {
        for (const Run& r : runs()->runs) {
            for (std::uint32_t v = r.start; v <= r.last(); ++v) {
                ++visited;
                if (!fn(static_cast<std::uint16_t>(v))) return visited;
            }
        }
    }
    return visited;
}

}  // namespace roaring
