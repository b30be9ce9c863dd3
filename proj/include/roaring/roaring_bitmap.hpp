#pragma once
// roaring_bitmap.hpp - 32-bit integer set split into 2^16-value chunks.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "roaring/container.hpp"

namespace roaring {

struct MemoryUsage {
    std::uint64_t in_memory = 0;
    std::uint64_t serialized = 0;
};

inline constexpr std::uint64_t kBitmapHeaderBytes = 16;
// key (2) + type tag (1) + cardinality (4)
inline constexpr std::uint64_t kContainerBookkeepingBytes = 7;

class RoaringBitmap {
   public:
    RoaringBitmap() = default;
    RoaringBitmap(std::initializer_list<std::uint32_t> values);

    // Any order, duplicates allowed.
    static RoaringBitmap from_values(std::span<const std::uint32_t> values);
    // Strictly increasing values.
    static RoaringBitmap from_sorted(std::span<const std::uint32_t> values);
    // Keys strictly increasing, containers non-empty and normalized; checked
    // by validate().
    static RoaringBitmap from_parts(std::vector<std::uint16_t> keys,
                                    std::vector<Container> containers);

    bool contains(std::uint32_t v) const noexcept;
    bool add(std::uint32_t v);
    bool remove(std::uint32_t v);

    std::uint64_t cardinality() const noexcept;
    bool empty() const noexcept { return keys_.empty(); }

    const std::vector<std::uint16_t>& keys() const noexcept { return keys_; }
    const std::vector<Container>& containers() const noexcept { return containers_; }

    // Visits members in ascending order until `fn` returns false; returns the
    // number of members visited.
    template <class Fn>
    std::uint64_t for_each(Fn&& fn) const;

    std::vector<std::uint32_t> to_vector() const;

    // Returns true iff any container changed type.
    bool run_optimize();
    // Returns the number of payload bytes released.
    std::size_t shrink_to_fit();

    MemoryUsage memory_bytes() const noexcept;

    // Empty string when every invariant holds, otherwise a description of
    // the first violation.
    std::string validate() const;

    bool operator==(const RoaringBitmap&) const = default;

   private:
    std::size_t find_key(std::uint16_t key) const noexcept;

    std::vector<std::uint16_t> keys_;
    std::vector<Container> containers_;
};

RoaringBitmap op(SetOp op, const RoaringBitmap& a, const RoaringBitmap& b);
std::uint64_t op_cardinality(SetOp op, const RoaringBitmap& a, const RoaringBitmap& b);

// Left fold of OR. Bitset cardinalities are left stale while accumulating and
// recounted once at the end. Empty input gives the empty bitmap.
RoaringBitmap or_many(std::span<const RoaringBitmap* const> bitmaps);
RoaringBitmap or_many(std::span<const RoaringBitmap> bitmaps);

inline RoaringBitmap operator&(const RoaringBitmap& a, const RoaringBitmap& b) {
    return op(SetOp::And, a, b);
}
inline RoaringBitmap operator|(const RoaringBitmap& a, const RoaringBitmap& b) {
    return op(SetOp::Or, a, b);
}
inline RoaringBitmap operator-(const RoaringBitmap& a, const RoaringBitmap& b) {
    return op(SetOp::AndNot, a, b);
}
inline RoaringBitmap operator^(const RoaringBitmap& a, const RoaringBitmap& b) {
    return op(SetOp::Xor, a, b);
}

// ---------------------------------------------------------------------------

template <class Fn>
std::uint64_t RoaringBitmap::for_each(Fn&& fn) const {
    std::uint64_t visited = 0;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        const std::uint32_t high = std::uint32_t{keys_[i]} << 16;
        bool stopped = false;
        visited += containers_[i].for_each([&](std::uint16_t low) {
            if (fn(high | low)) return true;
            stopped = true;
            return false;
        });
        if (stopped) break;
    }
    return visited;
}

}  // namespace roaring
