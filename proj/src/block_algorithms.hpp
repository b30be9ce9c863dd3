#pragma once
// Block-based sorted-array algorithms, written once against a lane policy `L`
// so that the scalar and accelerated backends run the same block schedule.
//
// A lane policy provides:
//   Vec                                   8 x uint16 block
//   load(p), lane(v, i), sentinel()       sentinel() is all 0xFFFF
//   match_mask(a, b)                      bit k set iff a[k] occurs in b
//   match_mask_partial(a, p, n)           same against the n (< 8) values at p
//   store_compact(out, v, keep)           writes lanes of v whose keep bit is set
//   merge(x, y, lo, hi)                   sorting network over two sorted blocks
//   store_unique(prev, n, out), count_unique(prev, n)
//   store_unique_xor(prev, n, out), count_unique_xor(prev, n)
//
// Values are strictly increasing within each input. The accelerated
// all-pairs compare treats 0 as a string terminator, so leading zeros are
// peeled off before any block is loaded.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>

#include "kernels_impl.hpp"

namespace roaring::kernels::blocks {

inline constexpr std::size_t K = kBlockWidth;

template <class L, bool kCount>
std::size_t intersect(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                      std::size_t nb, std::uint16_t* out) noexcept {
    if (na == 0 || nb == 0) return 0;
    std::size_t count = 0;
    if (a[0] == 0 || b[0] == 0) {
        if (a[0] == 0 && b[0] == 0) {
            if constexpr (!kCount) out[count] = 0;
            ++count;
        }
        if (a[0] == 0) ++a, --na;
        if (b[0] == 0) ++b, --nb;
    }
    std::size_t i = 0, j = 0;
    const std::size_t st_a = na / K * K;
    const std::size_t st_b = nb / K * K;
    if (st_a != 0 && st_b != 0) {
        typename L::Vec va = L::load(a);
        typename L::Vec vb = L::load(b);
        while (true) {
            const std::uint32_t r = L::match_mask(va, vb);
            if constexpr (kCount) {
                count += static_cast<std::size_t>(std::popcount(r));
            } else {
                count += L::store_compact(out + count, va, r);
            }
            const std::uint16_t a_max = a[i + K - 1];
            const std::uint16_t b_max = b[j + K - 1];
            if (a_max <= b_max) {
                i += K;
                if (i == st_a) break;
                va = L::load(a + i);
            }
            if (b_max <= a_max) {
                j += K;
                if (j == st_b) break;
                vb = L::load(b + j);
            }
        }
    }
    return count + merge_intersect(a + i, na - i, b + j, nb - j, kCount ? nullptr : out + count);
}

template <class L, bool kCount>
std::size_t difference(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                       std::size_t nb, std::uint16_t* out) noexcept {
    if (na == 0) return 0;
    if (nb == 0) {
        if constexpr (!kCount) std::memcpy(out, a, na * sizeof(std::uint16_t));
        return na;
    }
    std::size_t count = 0;
    if (a[0] == 0 || b[0] == 0) {
        if (a[0] == 0 && b[0] == 0) {
            ++a, --na;
            ++b, --nb;
        } else if (a[0] == 0) {
            if constexpr (!kCount) out[count] = 0;
            ++count;
            ++a, --na;
        } else {
            ++b, --nb;
        }
    }
    std::size_t i = 0, j = 0;
    const std::size_t st_a = na / K * K;
    const std::size_t st_b = nb / K * K;
    auto emit = [&](typename L::Vec v, std::uint32_t found) {
        const std::uint32_t keep = ~found & 0xFFu;
        if constexpr (kCount) {
            count += static_cast<std::size_t>(std::popcount(keep));
        } else {
            count += L::store_compact(out + count, v, keep);
        }
    };
    if (st_a != 0 && st_b != 0) {
        typename L::Vec va = L::load(a);
        typename L::Vec vb = L::load(b);
        // lanes of va seen in any b block so far
        std::uint32_t found = 0;
        while (true) {
            found |= L::match_mask(va, vb);
            const std::uint16_t a_max = a[i + K - 1];
            const std::uint16_t b_max = b[j + K - 1];
            if (a_max <= b_max) {
                emit(va, found);
                i += K;
                if (i == st_a) break;
                found = 0;
                va = L::load(a + i);
            }
            if (b_max <= a_max) {
                j += K;
                if (j == st_b) break;
                vb = L::load(b + j);
            }
        }
        if (i < st_a) {
            // b ran out of full blocks while an a block is still open
            found |= L::match_mask_partial(va, b + j, nb - j);
            emit(va, found);
            i += K;
        }
    }
    return count +
           merge_difference(a + i, na - i, b + j, nb - j, kCount ? nullptr : out + count);
}

template <class L, bool kCount>
std::size_t union_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                   std::size_t nb, std::uint16_t* out) noexcept {
    if (na < K || nb < K) return merge_union(a, na, b, nb, kCount ? nullptr : out);
    using Vec = typename L::Vec;
    const std::size_t blocks_a = na / K;
    const std::size_t blocks_b = nb / K;
    std::size_t pos_a = 1, pos_b = 1;
    std::size_t count = 0;

    auto store = [&](Vec prev, Vec v) {
        if constexpr (kCount) {
            count += L::count_unique(prev, v);
        } else {
            count += L::store_unique(prev, v, out + count);
        }
    };

    Vec lo, hi;
    L::merge(L::load(a), L::load(b), lo, hi);
    Vec last = L::sentinel();
    store(last, lo);
    last = lo;
    if (pos_a < blocks_a && pos_b < blocks_b) {
        std::uint16_t cur_a = a[K * pos_a];
        std::uint16_t cur_b = b[K * pos_b];
        Vec v;
        while (true) {
            if (cur_a <= cur_b) {
                v = L::load(a + K * pos_a);
                ++pos_a;
                if (pos_a < blocks_a) {
                    cur_a = a[K * pos_a];
                } else {
                    break;
                }
            } else {
                v = L::load(b + K * pos_b);
                ++pos_b;
                if (pos_b < blocks_b) {
                    cur_b = b[K * pos_b];
                } else {
                    break;
                }
            }
            L::merge(v, hi, lo, hi);
            store(last, lo);
            last = lo;
        }
        L::merge(v, hi, lo, hi);
        store(last, lo);
        last = lo;
    }

    // Scalar finish: what is left of `hi`, the partial block of the exhausted
    // side, and the untouched rest of the other side.
    std::uint16_t buffer[3 * K];
    std::size_t left = L::store_unique(last, hi, buffer);
    std::uint16_t* dst = kCount ? nullptr : out + count;
    if (pos_a == blocks_a) {
        const std::size_t rest = na - K * blocks_a;
        std::memcpy(buffer + left, a + K * blocks_a, rest * sizeof(std::uint16_t));
        left = sort_unique(buffer, left + rest);
        count += merge_union(buffer, left, b + K * pos_b, nb - K * pos_b, dst);
    } else {
        const std::size_t rest = nb - K * blocks_b;
        std::memcpy(buffer + left, b + K * blocks_b, rest * sizeof(std::uint16_t));
        left = sort_unique(buffer, left + rest);
        count += merge_union(buffer, left, a + K * pos_a, na - K * pos_a, dst);
    }
    return count;
}

template <class L, bool kCount>
std::size_t xor_(const std::uint16_t* a, std::size_t na, const std::uint16_t* b,
                 std::size_t nb, std::uint16_t* out) noexcept {
    if (na < K || nb < K) return merge_xor(a, na, b, nb, kCount ? nullptr : out);
    using Vec = typename L::Vec;
    const std::size_t blocks_a = na / K;
    const std::size_t blocks_b = nb / K;
    std::size_t pos_a = 1, pos_b = 1;
    std::size_t count = 0;

    // The largest lane of each merged block is held back: the next block may
    // start with the same value.
    auto store = [&](Vec prev, Vec v) {
        if constexpr (kCount) {
            count += L::count_unique_xor(prev, v);
        } else {
            count += L::store_unique_xor(prev, v, out + count);
        }
    };

    Vec lo, hi;
    L::merge(L::load(a), L::load(b), lo, hi);
    Vec last = L::sentinel();
    store(last, lo);
    last = lo;
    if (pos_a < blocks_a && pos_b < blocks_b) {
        std::uint16_t cur_a = a[K * pos_a];
        std::uint16_t cur_b = b[K * pos_b];
        Vec v;
        while (true) {
            if (cur_a <= cur_b) {
                v = L::load(a + K * pos_a);
                ++pos_a;
                if (pos_a < blocks_a) {
                    cur_a = a[K * pos_a];
                } else {
                    break;
                }
            } else {
                v = L::load(b + K * pos_b);
                ++pos_b;
                if (pos_b < blocks_b) {
                    cur_b = b[K * pos_b];
                } else {
                    break;
                }
            }
            L::merge(v, hi, lo, hi);
            store(last, lo);
            last = lo;
        }
        L::merge(v, hi, lo, hi);
        store(last, lo);
        last = lo;
    }

    std::uint16_t buffer[3 * K];
    std::size_t left = L::store_unique_xor(last, hi, buffer);
    const std::uint16_t hi7 = L::lane(hi, K - 1);
    if (hi7 != L::lane(hi, K - 2)) buffer[left++] = hi7;
    std::uint16_t* dst = kCount ? nullptr : out + count;

    const std::uint16_t* rest_src;
    std::size_t rest;
    const std::uint16_t* other;
    std::size_t other_len;
    if (pos_a == blocks_a) {
        rest_src = a + K * blocks_a;
        rest = na - K * blocks_a;
        other = b + K * pos_b;
        other_len = nb - K * pos_b;
    } else {
        rest_src = b + K * blocks_b;
        rest = nb - K * blocks_b;
        other = a + K * pos_a;
        other_len = na - K * pos_a;
    }
    std::memcpy(buffer + left, rest_src, rest * sizeof(std::uint16_t));
    left = sort_unique_xor(buffer, left + rest);
    return count + merge_xor(buffer, left, other, other_len, dst);
}

}  // namespace roaring::kernels::blocks
