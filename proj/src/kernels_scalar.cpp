// Portable backend. Mirrors the block schedule of the accelerated backend
// lane by lane so that both produce the same bytes.

#include <algorithm>
#include <bit>
#include <cstring>

#include "block_algorithms.hpp"
#include "kernels_impl.hpp"

namespace roaring::kernels {

// ---------------------------------------------------------------------------
// Shared scalar helpers
// ---------------------------------------------------------------------------

std::size_t merge_intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                            std::size_t nb, std::uint16_t* out) noexcept {
    std::size_t i = 0, j = 0, n = 0;
    while (i < na && j < nb) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            if (out) out[n] = a[i];
            ++n, ++i, ++j;
        }
    }
    return n;
}

std::size_t merge_union(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                        std::size_t nb, std::uint16_t* out) noexcept {
    std::size_t i = 0, j = 0, n = 0;
    while (i < na && j < nb) {
        std::uint16_t v;
        if (a[i] < b[j]) {
            v = a[i++];
        } else if (b[j] < a[i]) {
            v = b[j++];
        } else {
            v = a[i++];
            ++j;
        }
        if (out) out[n] = v;
        ++n;
    }
    if (out) {
        std::memcpy(out + n, a + i, (na - i) * sizeof(std::uint16_t));
        n += na - i;
        std::memcpy(out + n, b + j, (nb - j) * sizeof(std::uint16_t));
        n += nb - j;
    } else {
        n += (na - i) + (nb - j);
    }
    return n;
}

std::size_t merge_difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                             std::size_t nb, std::uint16_t* out) noexcept {
    std::size_t i = 0, j = 0, n = 0;
    while (i < na && j < nb) {
        if (a[i] < b[j]) {
            if (out) out[n] = a[i];
            ++n, ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++i, ++j;
        }
    }
    if (out) std::memcpy(out + n, a + i, (na - i) * sizeof(std::uint16_t));
    return n + (na - i);
}

std::size_t merge_xor(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb, std::uint16_t* out) noexcept {
    std::size_t i = 0, j = 0, n = 0;
    while (i < na && j < nb) {
        if (a[i] < b[j]) {
            if (out) out[n] = a[i];
            ++n, ++i;
        } else if (b[j] < a[i]) {
            if (out) out[n] = b[j];
            ++n, ++j;
        } else {
            ++i, ++j;
        }
    }
    if (out) {
        std::memcpy(out + n, a + i, (na - i) * sizeof(std::uint16_t));
        std::memcpy(out + n + (na - i), b + j, (nb - j) * sizeof(std::uint16_t));
    }
    return n + (na - i) + (nb - j);
}

std::size_t sort_unique(std::uint16_t* buf, std::size_t n) noexcept {
    std::sort(buf, buf + n);
    return static_cast<std::size_t>(std::unique(buf, buf + n) - buf);
}

std::size_t sort_unique_xor(std::uint16_t* buf, std::size_t n) noexcept {
    std::sort(buf, buf + n);
    std::size_t w = 0;
    for (std::size_t r = 0; r < n;) {
        std::size_t e = r + 1;
        while (e < n && buf[e] == buf[r]) ++e;
        if (e - r == 1) buf[w++] = buf[r];
        r = e;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Harley-Seal over 64-bit lanes
// ---------------------------------------------------------------------------

void HarleySealAccumulator::add_block(
    std::span<const std::uint64_t, kWordsPerBlock> d) noexcept {
    auto step = [](std::uint64_t& acc, std::uint64_t x, std::uint64_t y) {
        const CsaResult r = csa(acc, x, y);
        acc = r.low;
        return r.high;
    };
    std::uint64_t twos_a = step(ones, d[0], d[1]);
    std::uint64_t twos_b = step(ones, d[2], d[3]);
    std::uint64_t fours_a = step(twos, twos_a, twos_b);
    twos_a = step(ones, d[4], d[5]);
    twos_b = step(ones, d[6], d[7]);
    std::uint64_t fours_b = step(twos, twos_a, twos_b);
    const std::uint64_t eights_a = step(fours, fours_a, fours_b);
    twos_a = step(ones, d[8], d[9]);
    twos_b = step(ones, d[10], d[11]);
    fours_a = step(twos, twos_a, twos_b);
    twos_a = step(ones, d[12], d[13]);
    twos_b = step(ones, d[14], d[15]);
    fours_b = step(twos, twos_a, twos_b);
    const std::uint64_t eights_b = step(fours, fours_a, fours_b);
    const std::uint64_t sixteens = step(eights, eights_a, eights_b);
    spill += static_cast<std::uint64_t>(std::popcount(sixteens));
}

std::uint64_t HarleySealAccumulator::total() const noexcept {
    return 16 * spill + 8 * static_cast<std::uint64_t>(std::popcount(eights)) +
           4 * static_cast<std::uint64_t>(std::popcount(fours)) +
           2 * static_cast<std::uint64_t>(std::popcount(twos)) +
           static_cast<std::uint64_t>(std::popcount(ones));
}

namespace {

template <SetOp Op>
inline std::uint64_t word_op(std::uint64_t a, std::uint64_t b) noexcept {
    if constexpr (Op == SetOp::And) return a & b;
    if constexpr (Op == SetOp::Or) return a | b;
    if constexpr (Op == SetOp::AndNot) return a & ~b;
    if constexpr (Op == SetOp::Xor) return a ^ b;
}

template <SetOp Op, bool kStore>
std::uint32_t op_loop(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                      std::size_t n) noexcept {
    std::uint64_t card = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = word_op<Op>(a[i], b[i]);
        if constexpr (kStore) out[i] = w;
        card += static_cast<std::uint64_t>(std::popcount(w));
    }
    return static_cast<std::uint32_t>(card);
}

template <bool kStore>
std::uint32_t op_dispatch(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                          std::size_t n, SetOp op) noexcept {
    switch (op) {
        case SetOp::And: return op_loop<SetOp::And, kStore>(a, b, out, n);
        case SetOp::Or: return op_loop<SetOp::Or, kStore>(a, b, out, n);
        case SetOp::AndNot: return op_loop<SetOp::AndNot, kStore>(a, b, out, n);
        case SetOp::Xor: return op_loop<SetOp::Xor, kStore>(a, b, out, n);
    }
    return 0;
}

struct ScalarLanes {
    static constexpr std::size_t K = kBlockWidth;

    struct Vec {
        std::uint16_t v[K];
    };

    static Vec load(const std::uint16_t* p) noexcept {
        Vec r;
        std::memcpy(r.v, p, sizeof(r.v));
        return r;
    }
    static std::uint16_t lane(const Vec& x, std::size_t i) noexcept { return x.v[i]; }
    static Vec sentinel() noexcept {
        Vec r;
        std::fill(std::begin(r.v), std::end(r.v), std::uint16_t{0xFFFF});
        return r;
    }

    static std::uint32_t match_mask(const Vec& a, const Vec& b) noexcept {
        std::uint32_t m = 0;
        for (std::size_t k = 0; k < K; ++k) {
            bool hit = false;
            for (std::size_t l = 0; l < K; ++l) hit |= a.v[k] == b.v[l];
            m |= static_cast<std::uint32_t>(hit) << k;
        }
        return m;
    }
    static std::uint32_t match_mask_partial(const Vec& a, const std::uint16_t* b,
                                            std::size_t nb) noexcept {
        std::uint32_t m = 0;
        for (std::size_t k = 0; k < K; ++k) {
            bool hit = false;
            for (std::size_t l = 0; l < nb; ++l) hit |= a.v[k] == b[l];
            m |= static_cast<std::uint32_t>(hit) << k;
        }
        return m;
    }
    static std::size_t store_compact(std::uint16_t* out, const Vec& x,
                                     std::uint32_t keep) noexcept {
        std::size_t n = 0;
        for (std::size_t k = 0; k < K; ++k) {
            if (keep & (1u << k)) out[n++] = x.v[k];
        }
        return n;
    }

    // rotate lanes down by one: r[i] = x[(i + 1) % 8]
    static Vec rotate(const Vec& x) noexcept {
        Vec r;
        for (std::size_t i = 0; i < K; ++i) r.v[i] = x.v[(i + 1) % K];
        return r;
    }
    static void minmax(const Vec& x, const Vec& y, Vec& lo, Vec& hi) noexcept {
        Vec l, h;
        for (std::size_t i = 0; i < K; ++i) {
            l.v[i] = std::min(x.v[i], y.v[i]);
            h.v[i] = std::max(x.v[i], y.v[i]);
        }
        lo = l;
        hi = h;
    }
    static void merge(const Vec& x, const Vec& y, Vec& lo, Vec& hi) noexcept {
        Vec tmp, mn, mx;
        minmax(x, y, tmp, mx);
        tmp = rotate(tmp);
        minmax(tmp, mx, mn, mx);
        for (int round = 0; round < 6; ++round) {
            tmp = rotate(mn);
            minmax(tmp, mx, mn, mx);
        }
        lo = rotate(mn);
        hi = mx;
    }

    // bit i set when n[i] equals its predecessor (prev[7] for i == 0)
    static std::uint32_t dup_mask(const Vec& prev, const Vec& n) noexcept {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < K; ++i) {
            const std::uint16_t before = i == 0 ? prev.v[K - 1] : n.v[i - 1];
            m |= static_cast<std::uint32_t>(before == n.v[i]) << i;
        }
        return m;
    }
    static std::size_t store_unique(const Vec& prev, const Vec& n, std::uint16_t* out) noexcept {
        return store_compact(out, n, ~dup_mask(prev, n) & 0xFFu);
    }
    static std::size_t count_unique(const Vec& prev, const Vec& n) noexcept {
        return K - static_cast<std::size_t>(std::popcount(dup_mask(prev, n)));
    }

    // Over w = prev[6], prev[7], n[0..7]: lane i stands for w[i + 1] and is
    // set when w[i + 1] equals a neighbour.
    static std::uint32_t xor_mask(const Vec& prev, const Vec& n, Vec& shifted) noexcept {
        std::uint16_t w[K + 2];
        w[0] = prev.v[K - 2];
        w[1] = prev.v[K - 1];
        std::memcpy(w + 2, n.v, sizeof(n.v));
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < K; ++i) {
            shifted.v[i] = w[i + 1];
            const bool dup = w[i] == w[i + 1] || w[i + 1] == w[i + 2];
            m |= static_cast<std::uint32_t>(dup) << i;
        }
        return m;
    }
    static std::size_t store_unique_xor(const Vec& prev, const Vec& n,
                                        std::uint16_t* out) noexcept {
        Vec shifted;
        const std::uint32_t m = xor_mask(prev, n, shifted);
        return store_compact(out, shifted, ~m & 0xFFu);
    }
    static std::size_t count_unique_xor(const Vec& prev, const Vec& n) noexcept {
        Vec shifted;
        return K - static_cast<std::size_t>(std::popcount(xor_mask(prev, n, shifted)));
    }
};

}  // namespace

namespace scalar {

std::uint64_t popcount(const std::uint64_t* words, std::size_t n) noexcept {
    constexpr std::size_t kB = HarleySealAccumulator::kWordsPerBlock;
    HarleySealAccumulator acc;
    std::size_t i = 0;
    for (; i + kB <= n; i += kB) acc.add_block(std::span<const std::uint64_t, kB>(words + i, kB));
    std::uint64_t total = acc.total();
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

std::uint32_t op_with_count(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
                            std::size_t n, SetOp op) noexcept {
    return op_dispatch<true>(a, b, out, n, op);
}

std::uint32_t op_count(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,
                       SetOp op) noexcept {
    return op_dispatch<false>(a, b, nullptr, n, op);
}

std::size_t extract32(const std::uint64_t* words, std::size_t n, std::uint32_t base,
                      std::uint32_t* out) noexcept {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t w = words[i];
        while (w != 0) {
            const std::uint64_t lowest = w & (~w + 1);
            out[pos++] = base + static_cast<std::uint32_t>(std::countr_zero(w));
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
            const std::uint64_t lowest = w & (~w + 1);
            out[pos++] = static_cast<std::uint16_t>(base + std::countr_zero(w));
            w ^= lowest;
        }
        base = static_cast<std::uint16_t>(base + 64);
    }
    return pos;
}

std::int64_t apply_array(std::uint64_t* words, const std::uint16_t* pos, std::size_t n,
                         BitMode mode, bool track) noexcept {
    std::int64_t delta = 0;
    switch (mode) {
        case BitMode::Set:
            for (std::size_t i = 0; i < n; ++i) {
                const unsigned p = pos[i];
                const std::uint64_t old_w = words[p >> 6];
                const std::uint64_t new_w = old_w | (std::uint64_t{1} << (p & 63));
                if (track) delta += static_cast<std::int64_t>((old_w ^ new_w) >> (p & 63));
                words[p >> 6] = new_w;
            }
            break;
        case BitMode::Clear:
            for (std::size_t i = 0; i < n; ++i) {
                const unsigned p = pos[i];
                const std::uint64_t old_w = words[p >> 6];
                const std::uint64_t new_w = old_w & ~(std::uint64_t{1} << (p & 63));
                if (track) delta -= static_cast<std::int64_t>((old_w ^ new_w) >> (p & 63));
                words[p >> 6] = new_w;
            }
            break;
        case BitMode::Flip:
            for (std::size_t i = 0; i < n; ++i) {
                const unsigned p = pos[i];
                const std::uint64_t old_w = words[p >> 6];
                const std::uint64_t new_w = old_w ^ (std::uint64_t{1} << (p & 63));
                // +1 when the bit went 0 -> 1, -1 otherwise
                if (track) delta += 2 * static_cast<std::int64_t>((new_w >> (p & 63)) & 1) - 1;
                words[p >> 6] = new_w;
            }
            break;
    }
    return delta;
}

std::size_t intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::intersect<ScalarLanes, false>(a, na, b, nb, out);
}
std::size_t intersect_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                            std::size_t nb) noexcept {
    return blocks::intersect<ScalarLanes, true>(a, na, b, nb, nullptr);
}
std::size_t union_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                   std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::union_<ScalarLanes, false>(a, na, b, nb, out);
}
std::size_t union_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                        std::size_t nb) noexcept {
    return blocks::union_<ScalarLanes, true>(a, na, b, nb, nullptr);
}
std::size_t difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                       std::size_t nb, std::uint16_t* out) noexcept {
    return blocks::difference<ScalarLanes, false>(a, na, b, nb, out);
}
std::size_t difference_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                             std::size_t nb) noexcept {
    return blocks::difference<ScalarLanes, true>(a, na, b, nb, nullptr);
}
std::size_t xor_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b, std::size_t nb,
                 std::uint16_t* out) noexcept {
    return blocks::xor_<ScalarLanes, false>(a, na, b, nb, out);
}
std::size_t xor_count(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb) noexcept {
    return blocks::xor_<ScalarLanes, true>(a, na, b, nb, nullptr);
}

void merge(const std::uint16_t* b1, const std::uint16_t* b2, std::uint16_t* lo,
           std::uint16_t* hi) noexcept {
    ScalarLanes::Vec l, h;
    ScalarLanes::merge(ScalarLanes::load(b1), ScalarLanes::load(b2), l, h);
    std::memcpy(lo, l.v, sizeof(l.v));
    std::memcpy(hi, h.v, sizeof(h.v));
}

std::size_t dedup(std::int32_t prev_last, const std::uint16_t* block,
                  std::uint16_t* out) noexcept {
    ScalarLanes::Vec prev;
    const auto p = prev_last == kNoPrevious ? static_cast<std::uint16_t>(~block[0])
                                            : static_cast<std::uint16_t>(prev_last);
    std::fill(std::begin(prev.v), std::end(prev.v), p);
    return ScalarLanes::store_unique(prev, ScalarLanes::load(block), out);
}

}  // namespace scalar
}  // namespace roaring::kernels
