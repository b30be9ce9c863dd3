#pragma once
// kernels.hpp - inner loops shared by every container type.
//
// Every kernel has a portable scalar implementation and an accelerated one
// (SSE4.2 / AVX2 / BMI1 on x86-64). Both produce identical outputs; the
// backend is chosen once at startup by a CPU capability probe and can be
// forced to Scalar with the ROARING_FORCE_SCALAR environment variable.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace roaring {

enum class SetOp : std::uint8_t { And, Or, AndNot, Xor };

const char* to_string(SetOp op) noexcept;

enum class Backend : std::uint8_t { Scalar, Accelerated };

const char* to_string(Backend backend) noexcept;

// True when this binary carries the accelerated kernels and the CPU runs them.
bool accelerated_available() noexcept;

// Backend used when none is passed explicitly. Decided on first use:
// Accelerated when available, unless ROARING_FORCE_SCALAR is set to a value
// other than "0" or "".
Backend active_backend() noexcept;

inline constexpr const char* kForceScalarEnv = "ROARING_FORCE_SCALAR";

namespace kernels {

inline constexpr std::size_t kBitsetWords = 1024;  // 2^16 bits
inline constexpr std::size_t kBlockWidth = 8;      // 16-bit values per 128-bit lane group
inline constexpr std::size_t kGallopFactor = 64;

// ---------------------------------------------------------------------------
// Population count
// ---------------------------------------------------------------------------

struct CsaResult {
    std::uint64_t high;
    std::uint64_t low;
};

// Carry-save adder: per bit lane, 2*high + low == a + b + c.
constexpr CsaResult csa(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    const std::uint64_t u = a ^ b;
    return {(a & b) | (u & c), u ^ c};
}

/// Bit-sliced Harley-Seal accumulator over 64-bit lanes. Each bit position of
/// ones/twos/fours/eights is one digit of an independent 4-bit counter; the
/// sixteens carry is folded into `spill` after every block of 16 words.
struct HarleySealAccumulator {
    static constexpr std::size_t kWordsPerBlock = 16;

    std::uint64_t ones = 0;
    std::uint64_t twos = 0;
    std::uint64_t fours = 0;
    std::uint64_t eights = 0;
    std::uint64_t spill = 0;  // number of sixteens carries seen so far

    void add_block(std::span<const std::uint64_t, kWordsPerBlock> block) noexcept;

    // 16*spill + 8*count(eights) + 4*count(fours) + 2*count(twos) + count(ones)
    std::uint64_t total() const noexcept;
};

std::uint64_t popcount_block(std::span<const std::uint64_t> words,
                             Backend backend = active_backend()) noexcept;

// ---------------------------------------------------------------------------
// Bitset / bitset
// ---------------------------------------------------------------------------

// out[i] = op(a[i], b[i]); returns the popcount of out. a, b, out same length;
// out may alias a or b.
std::uint32_t bitset_op_with_count(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b,
                                   std::span<std::uint64_t> out, SetOp op,
                                   Backend backend = active_backend()) noexcept;

std::uint32_t bitset_op_count_only(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b, SetOp op,
                                   Backend backend = active_backend()) noexcept;

// ---------------------------------------------------------------------------
// Bitset / array
// ---------------------------------------------------------------------------

// Writes base + position of every 1-bit, ascending. `out` must have room for
// the popcount of `words`. Returns the number written.
std::size_t extract_set_bits(std::span<const std::uint64_t> words, std::uint32_t base,
                             std::uint32_t* out,
                             Backend backend = active_backend()) noexcept;

// 16-bit variant for bitset -> array conversion. Offsets wrap modulo 2^16.
std::size_t extract_set_bits(std::span<const std::uint64_t> words, std::uint16_t base,
                             std::uint16_t* out,
                             Backend backend = active_backend()) noexcept;

enum class BitMode : std::uint8_t { Set, Clear, Flip };

// Applies `mode` to each position (any order, duplicates allowed). With
// `track` the return value is new popcount minus old popcount; without it the
// return value is 0.
std::int64_t bitset_apply_array(std::span<std::uint64_t> words,
                                std::span<const std::uint16_t> positions, BitMode mode,
                                bool track, Backend backend = active_backend()) noexcept;

// ---------------------------------------------------------------------------
// Sorted 16-bit arrays
//
// Inputs are strictly increasing. Output vectors are overwritten; they may be
// given a few slots of extra capacity because block stores write whole lanes.
// ---------------------------------------------------------------------------

void array_intersect(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                     std::vector<std::uint16_t>& out, Backend backend = active_backend());
std::size_t array_intersect_count(std::span<const std::uint16_t> a,
                                  std::span<const std::uint16_t> b,
                                  Backend backend = active_backend()) noexcept;

// Exponential probe + binary search for each element of `small`.
void array_intersect_galloping(std::span<const std::uint16_t> small,
                               std::span<const std::uint16_t> large,
                               std::vector<std::uint16_t>& out);
std::size_t array_intersect_galloping_count(std::span<const std::uint16_t> small,
                                            std::span<const std::uint16_t> large) noexcept;

void array_union(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                 std::vector<std::uint16_t>& out, Backend backend = active_backend());
std::size_t array_union_count(std::span<const std::uint16_t> a,
                              std::span<const std::uint16_t> b,
                              Backend backend = active_backend()) noexcept;

void array_difference(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                      std::vector<std::uint16_t>& out, Backend backend = active_backend());
std::size_t array_difference_count(std::span<const std::uint16_t> a,
                                   std::span<const std::uint16_t> b,
                                   Backend backend = active_backend()) noexcept;

void array_xor(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
               std::vector<std::uint16_t>& out, Backend backend = active_backend());
std::size_t array_xor_count(std::span<const std::uint16_t> a,
                            std::span<const std::uint16_t> b,
                            Backend backend = active_backend()) noexcept;

// Dispatches to the four kernels above.
void array_op(SetOp op, std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
              std::vector<std::uint16_t>& out, Backend backend = active_backend());
std::size_t array_op_count(SetOp op, std::span<const std::uint16_t> a,
                           std::span<const std::uint16_t> b,
                           Backend backend = active_backend()) noexcept;

// ---------------------------------------------------------------------------
// Block primitives used by the union / symmetric difference kernels.
// ---------------------------------------------------------------------------

using Block = std::span<const std::uint16_t, kBlockWidth>;

struct MergedBlocks {
    std::uint16_t lo[kBlockWidth];
    std::uint16_t hi[kBlockWidth];
};

// Sorting-network merge of two sorted blocks: lo gets the 8 smallest, hi the
// 8 largest, both ascending.
MergedBlocks merge_blocks(Block b1, Block b2, Backend backend = active_backend()) noexcept;

inline constexpr std::int32_t kNoPrevious = -1;

// Writes the values of `block` that differ from their predecessor, where the
// predecessor of block[0] is `prev_last` (kNoPrevious for none). `out` needs
// room for 8 values. Returns the number written.
std::size_t dedup_store(std::int32_t prev_last, Block block, std::uint16_t* out,
                        Backend backend = active_backend()) noexcept;

}  // namespace kernels
}  // namespace roaring
