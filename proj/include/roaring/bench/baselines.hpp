#pragma once
// Uncompressed bitset, sorted array and hash set baselines. The sorted-array
// merge in oracle_pairwise is the reference every other result is checked
// against.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "roaring/kernels.hpp"

namespace roaring::bench {

std::vector<std::uint32_t> oracle_pairwise(SetOp op, std::span<const std::uint32_t> a,
                                           std::span<const std::uint32_t> b);
std::uint64_t oracle_cardinality(SetOp op, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b) noexcept;

struct BaselineBitset {
    std::vector<std::uint64_t> words;

    // ceil(universe / 64) words.
    static BaselineBitset from_sorted(std::span<const std::uint32_t> values,
                                      std::uint64_t universe);

    bool contains(std::uint32_t v) const noexcept {
        const std::size_t w = v / 64;
        return w < words.size() && ((words[w] >> (v % 64)) & 1u);
    }
    std::uint64_t cardinality() const noexcept;
    std::uint64_t bytes() const noexcept { return 8 * words.size(); }
    std::vector<std::uint32_t> to_vector() const;

    template <class Fn>
    std::uint64_t for_each(Fn&& fn) const {
        std::uint64_t visited = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::uint64_t w = words[i];
            while (w != 0) {
                const auto v = static_cast<std::uint32_t>(i * 64 + std::countr_zero(w));
                w &= w - 1;
                ++visited;
                if (!fn(v)) return visited;
            }
        }
        return visited;
    }
};

BaselineBitset op(SetOp op, const BaselineBitset& a, const BaselineBitset& b);
std::uint64_t op_cardinality(SetOp op, const BaselineBitset& a, const BaselineBitset& b) noexcept;

struct BaselineSortedArray {
    std::vector<std::uint32_t> values;

    bool contains(std::uint32_t v) const noexcept;
    std::uint64_t cardinality() const noexcept { return values.size(); }
    std::uint64_t bytes() const noexcept { return 4 * values.size(); }
};

BaselineSortedArray op(SetOp op, const BaselineSortedArray& a, const BaselineSortedArray& b);
std::uint64_t op_cardinality(SetOp op, const BaselineSortedArray& a,
                             const BaselineSortedArray& b) noexcept;

struct BaselineHashSet {
    std::unordered_set<std::uint32_t> values;

    bool contains(std::uint32_t v) const noexcept { return values.count(v) != 0; }
    std::uint64_t cardinality() const noexcept { return values.size(); }
};

BaselineHashSet op(SetOp op, const BaselineHashSet& a, const BaselineHashSet& b);
std::uint64_t op_cardinality(SetOp op, const BaselineHashSet& a, const BaselineHashSet& b);

// Bytes requested from the allocator by a hash set holding `values`, counted
// through an allocation-tracking allocator.
std::uint64_t hash_set_bytes(std::span<const std::uint32_t> values);

}  // namespace roaring::bench
