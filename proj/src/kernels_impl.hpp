#pragma once
// Raw-pointer entry points of the two kernel backends. Only kernels.cpp
// dispatches to these; everything else goes through roaring/kernels.hpp.
//
// Output buffers for the array kernels need kArraySlack spare slots past the
// largest possible result because block stores write whole lanes.

#include <cstddef>
#include <cstdint>

#include "roaring/kernels.hpp"

namespace roaring::kernels {

inline constexpr std::size_t kArraySlack = 16;

#define ROARING_KERNEL_DECLS                                                                 \
    std::uint64_t popcount(const std::uint64_t* words, std::size_t n) noexcept;              \
    std::uint32_t op_with_count(const std::uint64_t* a, const std::uint64_t* b,              \
                                std::uint64_t* out, std::size_t n, SetOp op) noexcept;       \
    std::uint32_t op_count(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,    \
                           SetOp op) noexcept;                                               \
    std::size_t extract32(const std::uint64_t* words, std::size_t n, std::uint32_t base,     \
                          std::uint32_t* out) noexcept;                                      \
    std::size_t extract16(const std::uint64_t* words, std::size_t n, std::uint16_t base,     \
                          std::uint16_t* out) noexcept;                                      \
    std::int64_t apply_array(std::uint64_t* words, const std::uint16_t* pos, std::size_t n, \
                             BitMode mode, bool track) noexcept;                             \
    std::size_t intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,    \
                          std::size_t nb, std::uint16_t* out) noexcept;                      \
    std::size_t intersect_count(const std::uint16_t* a, std::size_t na,                      \
                                const std::uint16_t* b, std::size_t nb) noexcept;            \
    std::size_t union_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,       \
                       std::size_t nb, std::uint16_t* out) noexcept;                         \
    std::size_t union_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,  \
                            std::size_t nb) noexcept;                                        \
    std::size_t difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,   \
                           std::size_t nb, std::uint16_t* out) noexcept;                     \
    std::size_t difference_count(const std::uint16_t* a, std::size_t na,                     \
                                 const std::uint16_t* b, std::size_t nb) noexcept;           \
    std::size_t xor_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,         \
                     std::size_t nb, std::uint16_t* out) noexcept;                           \
    std::size_t xor_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,    \
                          std::size_t nb) noexcept;                                          \
    void merge(const std::uint16_t* b1, const std::uint16_t* b2, std::uint16_t* lo,          \
               std::uint16_t* hi) noexcept;                                                  \
    std::size_t dedup(std::int32_t prev_last, const std::uint16_t* block,                    \
                      std::uint16_t* out) noexcept;

namespace scalar {
ROARING_KERNEL_DECLS
}  // namespace scalar

#if defined(ROARING_HAVE_ACCELERATED)
namespace simd {
ROARING_KERNEL_DECLS
}  // namespace simd
#endif

#undef ROARING_KERNEL_DECLS

// Scalar merges shared by both backends for the short tails.
std::size_t merge_intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                            std::size_t nb, std::uint16_t* out) noexcept;
std::size_t merge_union(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                        std::size_t nb, std::uint16_t* out) noexcept;
std::size_t merge_difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                             std::size_t nb, std::uint16_t* out) noexcept;
std::size_t merge_xor(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb, std::uint16_t* out) noexcept;

// In-place sort + dedup of a short buffer (at most a few dozen values).
std::size_t sort_unique(std::uint16_t* buf, std::size_t n) noexcept;
// In-place sort, then drop every value that occurs twice.
std::size_t sort_unique_xor(std::uint16_t* buf, std::size_t n) noexcept;

}  // namespace roaring::kernels
