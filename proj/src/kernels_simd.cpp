// Accelerated backend: SSE4.2 string compare for block intersections, SSE
// min/max sorting network for block merges, AVX2 Harley-Seal population
// count, BMI1 bit extraction. Built with the matching -m flags and only
// entered after a runtime CPU probe.
//
// Keep standard-library templates out of this file: anything instantiated
// here is compiled for AVX2.

#include <immintrin.h>

#include <cstring>

#include "block_algorithms.hpp"
#include "kernels_impl.hpp"

namespace roaring::kernels {
namespace {

// ---------------------------------------------------------------------------
// Lookup tables
// ---------------------------------------------------------------------------

struct ShuffleTable {
    alignas(16) std::uint8_t bytes[256][16];
};

// Entry m moves the 16-bit lanes whose bit is set in m to the front.
constexpr ShuffleTable make_compaction_table() {
    ShuffleTable t{};
    for (unsigned m = 0; m < 256; ++m) {
        unsigned w = 0;
        for (unsigned k = 0; k < 8; ++k) {
            if (m & (1u << k)) {
                t.bytes[m][2 * w] = static_cast<std::uint8_t>(2 * k);
                t.bytes[m][2 * w + 1] = static_cast<std::uint8_t>(2 * k + 1);
                ++w;
            }
        }
        for (unsigned b = 2 * w; b < 16; ++b) t.bytes[m][b] = 0x80;
    }
    return t;
}

constexpr ShuffleTable kCompact = make_compaction_table();

inline __m128i compaction_key(std::uint32_t keep) noexcept {
    return _mm_load_si128(reinterpret_cast<const __m128i*>(kCompact.bytes[keep]));
}

constexpr int kCmpMode = _SIDD_UWORD_OPS | _SIDD_CMP_EQUAL_ANY | _SIDD_BIT_MASK;

struct SseLanes {
    using Vec = __m128i;

    static Vec load(const std::uint16_t* p) noexcept {
        return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p));
    }
    static std::uint16_t lane(Vec v, std::size_t i) noexcept {
        alignas(16) std::uint16_t tmp[8];
        _mm_store_si128(reinterpret_cast<__m128i*>(tmp), v);
        return tmp[i];
    }
    static Vec sentinel() noexcept { return _mm_set1_epi16(-1); }

    static std::uint32_t match_mask(Vec a, Vec b) noexcept {
        return static_cast<std::uint32_t>(_mm_extract_epi32(_mm_cmpistrm(b, a, kCmpMode), 0));
    }
    static std::uint32_t match_mask_partial(Vec a, const std::uint16_t* b,
                                            std::size_t nb) noexcept {
        // zero padding terminates the implicit-length string
        alignas(16) std::uint16_t buffer[8] = {};
        std::memcpy(buffer, b, nb * sizeof(std::uint16_t));
        return match_mask(a, _mm_load_si128(reinterpret_cast<const __m128i*>(buffer)));
    }
    static std::size_t store_compact(std::uint16_t* out, Vec v, std::uint32_t keep) noexcept {
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out),
                         _mm_shuffle_epi8(v, compaction_key(keep)));
        return static_cast<std::size_t>(_mm_popcnt_u32(keep));
    }

    static void merge(Vec in1, Vec in2, Vec& vec_min, Vec& vec_max) noexcept {
        Vec tmp = _mm_min_epu16(in1, in2);
        Vec mx = _mm_max_epu16(in1, in2);
        tmp = _mm_alignr_epi8(tmp, tmp, 2);
        Vec mn = _mm_min_epu16(tmp, mx);
        mx = _mm_max_epu16(tmp, mx);
        for (int round = 0; round < 6; ++round) {
            tmp = _mm_alignr_epi8(mn, mn, 2);
            mn = _mm_min_epu16(tmp, mx);
            mx = _mm_max_epu16(tmp, mx);
        }
        vec_min = _mm_alignr_epi8(mn, mn, 2);
        vec_max = mx;
    }

    // lane i set when n[i] equals its predecessor; prev's last lane precedes n[0]
    static std::uint32_t dup_mask(Vec prev, Vec n) noexcept {
        const Vec v = _mm_alignr_epi8(n, prev, 16 - 2);
        return static_cast<std::uint32_t>(
            _mm_movemask_epi8(_mm_packs_epi16(_mm_cmpeq_epi16(v, n), _mm_setzero_si128())));
    }
    static std::size_t store_unique(Vec prev, Vec n, std::uint16_t* out) noexcept {
        return store_compact(out, n, ~dup_mask(prev, n) & 0xFFu);
    }
    static std::size_t count_unique(Vec prev, Vec n) noexcept {
        return 8 - static_cast<std::size_t>(_mm_popcnt_u32(dup_mask(prev, n)));
    }

    static std::uint32_t xor_mask(Vec prev, Vec n, Vec& v2) noexcept {
        const Vec v1 = _mm_alignr_epi8(n, prev, 16 - 4);
        v2 = _mm_alignr_epi8(n, prev, 16 - 2);
        const Vec el = _mm_cmpeq_epi16(v1, v2);
        const Vec er = _mm_cmpeq_epi16(v2, n);
        return static_cast<std::uint32_t>(
            _mm_movemask_epi8(_mm_packs_epi16(_mm_or_si128(el, er), _mm_setzero_si128())));
    }
    static std::size_t store_unique_xor(Vec prev, Vec n, std::uint16_t* out) noexcept {
        Vec v2;
        const std::uint32_t m = xor_mask(prev, n, v2);
        return store_compact(out, v2, ~m & 0xFFu);
    }
    static std::size_t count_unique_xor(Vec prev, Vec n) noexcept {
        Vec v2;
        return 8 - static_cast<std::size_t>(_mm_popcnt_u32(xor_mask(prev, n, v2)));
    }
};

// ---------------------------------------------------------------------------
// AVX2 Harley-Seal
// ---------------------------------------------------------------------------

inline void csa256(__m256i& h, __m256i& l, __m256i a, __m256i b, __m256i c) noexcept {
    const __m256i u = _mm256_xor_si256(a, b);
    h = _mm256_or_si256(_mm256_and_si256(a, b), _mm256_and_si256(u, c));
    l = _mm256_xor_si256(u, c);
}

// four 64-bit popcounts via nibble lookup + sum of absolute differences
inline __m256i popcount256(__m256i v) noexcept {
    const __m256i lookup_pos = _mm256_setr_epi8(
        4 + 0, 4 + 1, 4 + 1, 4 + 2, 4 + 1, 4 + 2, 4 + 2, 4 + 3, 4 + 1, 4 + 2, 4 + 2, 4 + 3,
        4 + 2, 4 + 3, 4 + 3, 4 + 4, 4 + 0, 4 + 1, 4 + 1, 4 + 2, 4 + 1, 4 + 2, 4 + 2, 4 + 3,
        4 + 1, 4 + 2, 4 + 2, 4 + 3, 4 + 2, 4 + 3, 4 + 3, 4 + 4);
    const __m256i lookup_neg = _mm256_setr_epi8(
        4 - 0, 4 - 1, 4 - 1, 4 - 2, 4 - 1, 4 - 2, 4 - 2, 4 - 3, 4 - 1, 4 - 2, 4 - 2, 4 - 3,
        4 - 2, 4 - 3, 4 - 3, 4 - 4, 4 - 0, 4 - 1, 4 - 1, 4 - 2, 4 - 1, 4 - 2, 4 - 2, 4 - 3,
        4 - 1, 4 - 2, 4 - 2, 4 - 3, 4 - 2, 4 - 3, 4 - 3, 4 - 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i popcnt1 = _mm256_shuffle_epi8(lookup_pos, lo);
    const __m256i popcnt2 = _mm256_shuffle_epi8(lookup_neg, hi);
    return _mm256_sad_epu8(popcnt1, popcnt2);
}

inline std::uint64_t hsum(__m256i total) noexcept {
    return static_cast<std::uint64_t>(_mm256_extract_epi64(total, 0)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(total, 1)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(total, 2)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(total, 3));
}

struct LoadOnly {
    const std::uint64_t* a;
    __m256i operator()(std::size_t i) const noexcept {
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a) + i);
    }
};

template <SetOp Op, bool kStore>
struct LoadOpStore {
    const std::uint64_t* a;
    const std::uint64_t* b;
    std::uint64_t* out;
    __m256i operator()(std::size_t i) const noexcept {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a) + i);
        const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b) + i);
        __m256i r;
        if constexpr (Op == SetOp::And) r = _mm256_and_si256(x, y);
        if constexpr (Op == SetOp::Or) r = _mm256_or_si256(x, y);
        if constexpr (Op == SetOp::AndNot) r = _mm256_andnot_si256(y, x);
        if constexpr (Op == SetOp::Xor) r = _mm256_xor_si256(x, y);
        if constexpr (kStore) _mm256_storeu_si256(reinterpret_cast<__m256i*>(out) + i, r);
        return r;
    }
};

// Harley-Seal over `nvec` 256-bit inputs produced by `in(i)`: sixteen inputs
// per block folded into ones/twos/fours/eights, with sixteens counted and
// cleared at the end of every block.
template <class Input>
std::uint64_t harley_seal(Input in, std::size_t nvec) noexcept {
    __m256i total = _mm256_setzero_si256();
    __m256i ones = _mm256_setzero_si256();
    __m256i twos = _mm256_setzero_si256();
    __m256i fours = _mm256_setzero_si256();
    __m256i eights = _mm256_setzero_si256();
    __m256i sixteens, twos_a, twos_b, fours_a, fours_b, eights_a, eights_b;
    const std::size_t limit = nvec - nvec % 16;
    std::size_t i = 0;
    for (; i < limit; i += 16) {
        csa256(twos_a, ones, ones, in(i), in(i + 1));
        csa256(twos_b, ones, ones, in(i + 2), in(i + 3));
        csa256(fours_a, twos, twos, twos_a, twos_b);
        csa256(twos_a, ones, ones, in(i + 4), in(i + 5));
        csa256(twos_b, ones, ones, in(i + 6), in(i + 7));
        csa256(fours_b, twos, twos, twos_a, twos_b);
        csa256(eights_a, fours, fours, fours_a, fours_b);
        csa256(twos_a, ones, ones, in(i + 8), in(i + 9));
        csa256(twos_b, ones, ones, in(i + 10), in(i + 11));
        csa256(fours_a, twos, twos, twos_a, twos_b);
        csa256(twos_a, ones, ones, in(i + 12), in(i + 13));
        csa256(twos_b, ones, ones, in(i + 14), in(i + 15));
        csa256(fours_b, twos, twos, twos_a, twos_b);
        csa256(eights_b, fours, fours, fours_a, fours_b);
        csa256(sixteens, eights, eights, eights_a, eights_b);
        total = _mm256_add_epi64(total, popcount256(sixteens));
    }
    total = _mm256_slli_epi64(total, 4);
    total = _mm256_add_epi64(total, _mm256_slli_epi64(popcount256(eights), 3));
    total = _mm256_add_epi64(total, _mm256_slli_epi64(popcount256(fours), 2));
    total = _mm256_add_epi64(total, _mm256_slli_epi64(popcount256(twos), 1));
    total = _mm256_add_epi64(total, popcount256(ones));
    for (; i < nvec; ++i) total = _mm256_add_epi64(total, popcount256(in(i)));
    return hsum(total);
}

inline std::uint64_t word_op(std::uint64_t a, std::uint64_t b, SetOp op) noexcept {
    switch (op) {
        case SetOp::And: return a & b;
        case SetOp::Or: return a | b;
        case SetOp::AndNot: return a & ~b;
        case SetOp::Xor: return a ^ b;
    }
    return 0;
}

template <SetOp Op, bool kStore>
std::uint32_t fused(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                    std::size_t n) noexcept {
    const std::size_t nvec = n / 4;
    std::uint64_t card = harley_seal(LoadOpStore<Op, kStore>{a, b, out}, nvec);
    for (std::size_t i = nvec * 4; i < n; ++i) {
        const std::uint64_t w = word_op(a[i], b[i], Op);
        if constexpr (kStore) out[i] = w;
        card += static_cast<std::uint64_t>(_mm_popcnt_u64(w));
    }
    return static_cast<std::uint32_t>(card);
}

template <bool kStore>
std::uint32_t fused_dispatch(const std::uint64_t* a, const std::uint64_t* b,
                             std::uint64_t* out, std::size_t n, SetOp op) noexcept {
    switch (op) {
        case SetOp::And: return fused<SetOp::And, kStore>(a, b, out, n);
        case SetOp::Or: return fused<SetOp::Or, kStore>(a, b, out, n);
        case SetOp::AndNot: return fused<SetOp::AndNot, kStore>(a, b, out, n);
        case SetOp::Xor: return fused<SetOp::Xor, kStore>(a, b, out, n);
    }
    return 0;
}

// Branch-free per update; with BMI2 the variable shifts become shlx/shrx.
template <BitMode Mode, bool kTrack>
std::int64_t apply(std::uint64_t* words, const std::uint16_t* pos, std::size_t n) noexcept {
    std::int64_t delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned p = pos[i];
        const std::uint64_t old_w = words[p >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (p & 63);
        std::uint64_t new_w;
        if constexpr (Mode == BitMode::Set) new_w = old_w | bit;
        if constexpr (Mode == BitMode::Clear) new_w = old_w & ~bit;
        if constexpr (Mode == BitMode::Flip) new_w = old_w ^ bit;
        words[p >> 6] = new_w;
        if constexpr (kTrack) {
            if constexpr (Mode == BitMode::Set)
                delta += static_cast<std::int64_t>((old_w ^ new_w) >> (p & 63));
            if constexpr (Mode == BitMode::Clear)
                delta -= static_cast<std::int64_t>((old_w ^ new_w) >> (p & 63));
            if constexpr (Mode == BitMode::Flip)
                delta += 2 * static_cast<std::int64_t>((new_w >> (p & 63)) & 1) - 1;
        }
    }
    return delta;
}

}  // namespace

namespace simd {

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) noexcept {
    const std::size_t nvec = n / 4;
    std::uint64_t total = harley_seal(LoadOnly{words}, nvec);
    for (std::size_t i = nvec * 4; i < n; ++i)
        total += static_cast<std::uint64_t>(_mm_popcnt_u64(words[i]));
    return total;
}

std::uint32_t op_with_count(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                            std::size_t n, SetOp op) noexcept {
    return fused_dispatch<true>(a, b, out, n, op);
}

std::uint32_t op_count(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,
                       SetOp op) noexcept {
    return fused_dispatch<false>(a, b, nullptr, n, op);
}

std::size_t extract32(const std::uint64_t* words, std::size_t n, std::uint32_t base,
                      std::uint32_t* out) noexcept {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            const std::uint64_t lowest = _blsi_u64(w);
            out[pos++] = base + static_cast<std::uint32_t>(_tzcnt_u64(w));
            w ^= lowest;
        }
        base += 64;
    }
    return pos;
}

std::size_t extract16(const std::uint64_t* words, std::size_t n, std::uint16_t base,
                      std::uint16_t* out) noexcept {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            const std::uint64_t lowest = _blsi_u64(w);
            out[pos++] = static_cast<std::uint16_t>(base + _tzcnt_u64(w));
            w ^= lowest;
        }
        base = static_cast<std::uint16_t>(base + 64);
    }
    return pos;
}

std::int64_t apply_array(std::uint64_t* words, const std::uint16_t* pos, std::size_t n,
                         BitMode mode, bool track) noexcept {
    switch (mode) {
        case BitMode::Set:
            return track ? apply<BitMode::Set, true>(words, pos, n)
                         : apply<BitMode::Set, false>(words, pos, n);
        case BitMode::Clear:
            return track ? apply<BitMode::Clear, true>(words, pos, n)
                         : apply<BitMode::Clear, false>(words, pos, n);
        case BitMode::Flip:
            return track ? apply<BitMode::Flip, true>(words, pos, n)
                         : apply<BitMode::Flip, false>(words, pos, n);
    }
    return 0;
}

std::size_t intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::intersect<SseLanes, false>(a, na, b, nb, out);
}
std::size_t intersect_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                            std::size_t nb) noexcept {
    return blocks::intersect<SseLanes, true>(a, na, b, nb, nullptr);
}
std::size_t union_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                   std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::union_<SseLanes, false>(a, na, b, nb, out);
}
std::size_t union_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                        std::size_t nb) noexcept {
    return blocks::union_<SseLanes, true>(a, na, b, nb, nullptr);
}
std::size_t difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                       std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::difference<SseLanes, false>(a, na, b, nb, out);
}
std::size_t difference_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                             std::size_t nb) noexcept {
    return blocks::difference<SseLanes, true>(a, na, b, nb, nullptr);
}
std::size_t xor_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b, std::size_t nb,
                 std::uint16_t* out) noexcept {
    return blocks::xor_<SseLanes, false>(a, na, b, nb, out);
}
std::size_t xor_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb) noexcept {
    return blocks::xor_<SseLanes, true>(a, na, b, nb, nullptr);
}

void merge(const std::uint16_t* b1, const std::uint16_t* b2, std::uint16_t* lo,
           std::uint16_t* hi) noexcept {
    __m128i l, h;
    SseLanes::merge(SseLanes::load(b1), SseLanes::load(b2), l, h);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(lo), l);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(hi), h);
}

std::size_t dedup(std::int32_t prev_last, const std::uint16_t* block,
                  std::uint16_t* out) noexcept {
    const auto p = prev_last == kNoPrevious ? static_cast<std::uint16_t>(~block[0])
                                            : static_cast<std::uint16_t>(prev_last);
    return SseLanes::store_unique(_mm_set1_epi16(static_cast<short>(p)), SseLanes::load(block),
                                  out);
}

}  // namespace simd
}  // namespace roaring::kernels
