#include "roaring/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace roaring {

const char* to_string(SetOp op) noexcept {
    switch (op) {
        case SetOp::And: return "and";
        case SetOp::Or: return "or";
        case SetOp::AndNot: return "andnot";
        case SetOp::Xor: return "xor";
    }
    return "?";
}

const char* to_string(Backend backend) noexcept {
    return backend == Backend::Scalar ? "scalar" : "accelerated";
}

bool accelerated_available() noexcept {
#if defined(ROARING_HAVE_ACCELERATED)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("sse4.2") &&
               __builtin_cpu_supports("popcnt") && __builtin_cpu_supports("bmi") &&
               __builtin_cpu_supports("bmi2");
    }();
    return supported;
#else
    return false;
#endif
}

Backend active_backend() noexcept {
    static const Backend chosen = [] {
        const char* env = std::getenv(kForceScalarEnv);
        const bool forced = env != nullptr && std::string_view(env) != "" &&
                            std::string_view(env) != "0";
        return (!forced && accelerated_available()) ? Backend::Accelerated : Backend::Scalar;
    }();
    return chosen;
}

namespace kernels {
namespace {

// Requests for the accelerated backend on a machine without it quietly run
// the scalar one.
inline bool use_simd(Backend backend) noexcept {
#if defined(ROARING_HAVE_ACCELERATED)
    return backend == Backend::Accelerated && accelerated_available();
#else
    (void)backend;
    return false;
#endif
}

#if defined(ROARING_HAVE_ACCELERATED)
#define ROARING_DISPATCH(backend, fn, ...) \
    (use_simd(backend) ? simd::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define ROARING_DISPATCH(backend, fn, ...) scalar::fn(__VA_ARGS__)
#endif

inline bool should_gallop(std::size_t small, std::size_t large) noexcept {
    return small * kGallopFactor < large;
}

// Resize `out` to an upper bound plus lane slack, run `fn`, trim.
template <class Fn>
void run_into(std::vector<std::uint16_t>& out, std::size_t bound, Fn fn) {
    out.resize(bound + kArraySlack);
    const std::size_t n = fn(out.data());
    out.resize(n);
}

// Number of elements of `large` in [from, ...) that are < target, found by
// doubling the step and then binary searching the last interval.
inline std::size_t gallop_to(const std::uint16_t* large, std::size_t n, std::size_t from,
                             std::uint16_t target) noexcept {
    if (from >= n || large[from] >= target) return from;
    std::size_t step = 1;
    std::size_t lo = from;  // large[lo] < target
    while (lo + step < n && large[lo + step] < target) {
        lo += step;
        step *= 2;
    }
    const std::size_t hi = std::min(n, lo + step);
    return static_cast<std::size_t>(std::lower_bound(large + lo + 1, large + hi, target) - large);
}

template <bool kCount>
std::size_t gallop_intersect(const std::uint16_t* small, std::size_t ns,
                             const std::uint16_t* large, std::size_t nl,
                             std::uint16_t* out) noexcept {
    std::size_t count = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < ns; ++i) {
        pos = gallop_to(large, nl, pos, small[i]);
        if (pos == nl) break;
        if (large[pos] == small[i]) {
            if constexpr (!kCount) out[count] = small[i];
            ++count;
            ++pos;
        }
    }
    return count;
}

}  // namespace

std::uint64_t popcount_block(std::span<const std::uint64_t> words, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, popcount, words.data(), words.size());
}

std::uint32_t bitset_op_with_count(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b,
                                   std::span<std::uint64_t> out, SetOp op,
                                   Backend backend) noexcept {
    assert(a.size() == b.size() && a.size() == out.size());
    return ROARING_DISPATCH(backend, op_with_count, a.data(), b.data(), out.data(), a.size(), op);
}

std::uint32_t bitset_op_count_only(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b, SetOp op,
                                   Backend backend) noexcept {
    assert(a.size() == b.size());
    return ROARING_DISPATCH(backend, op_count, a.data(), b.data(), a.size(), op);
}

std::size_t extract_set_bits(std::span<const std::uint64_t> words, std::uint32_t base,
                             std::uint32_t* out, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, extract32, words.data(), words.size(), base, out);
}

std::size_t extract_set_bits(std::span<const std::uint64_t> words, std::uint16_t base,
                             std::uint16_t* out, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, extract16, words.data(), words.size(), base, out);
}

std::int64_t bitset_apply_array(std::span<std::uint64_t> words,
                                std::span<const std::uint16_t> positions, BitMode mode,
                                bool track, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, apply_array, words.data(), positions.data(), positions.size(),
                            mode, track);
}

void array_intersect_galloping(std::span<const std::uint16_t> small,
                               std::span<const std::uint16_t> large,
                               std::vector<std::uint16_t>& out) {
    run_into(out, std::min(small.size(), large.size()), [&](std::uint16_t* dst) {
        return gallop_intersect<false>(small.data(), small.size(), large.data(), large.size(),
                                       dst);
    });
}

std::size_t array_intersect_galloping_count(std::span<const std::uint16_t> small,
                                            std::span<const std::uint16_t> large) noexcept {
    return gallop_intersect<true>(small.data(), small.size(), large.data(), large.size(),
                                  nullptr);
}

void array_intersect(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                     std::vector<std::uint16_t>& out, Backend backend) {
    if (should_gallop(a.size(), b.size())) return array_intersect_galloping(a, b, out);
    if (should_gallop(b.size(), a.size())) return array_intersect_galloping(b, a, out);
    run_into(out, std::min(a.size(), b.size()), [&](std::uint16_t* dst) {
        return ROARING_DISPATCH(backend, intersect, a.data(), a.size(), b.data(), b.size(), dst);
    });
}

std::size_t array_intersect_count(std::span<const std::uint16_t> a,
                                  std::span<const std::uint16_t> b, Backend backend) noexcept {
    if (should_gallop(a.size(), b.size())) return array_intersect_galloping_count(a, b);
    if (should_gallop(b.size(), a.size())) return array_intersect_galloping_count(b, a);
    return ROARING_DISPATCH(backend, intersect_count, a.data(), a.size(), b.data(), b.size());
}

void array_union(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                 std::vector<std::uint16_t>& out, Backend backend) {
    run_into(out, a.size() + b.size(), [&](std::uint16_t* dst) {
        return ROARING_DISPATCH(backend, union_, a.data(), a.size(), b.data(), b.size(), dst);
    });
}

std::size_t array_union_count(std::span<const std::uint16_t> a,
                              std::span<const std::uint16_t> b, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, union_count, a.data(), a.size(), b.data(), b.size());
}

void array_difference(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                      std::vector<std::uint16_t>& out, Backend backend) {
    run_into(out, a.size(), [&](std::uint16_t* dst) {
        return ROARING_DISPATCH(backend, difference, a.data(), a.size(), b.data(), b.size(),
                                dst);
    });
}

std::size_t array_difference_count(std::span<const std::uint16_t> a,
                                   std::span<const std::uint16_t> b, Backend backend) noexcept {
    return ROARING_DISPATCH(backend, difference_count, a.data(), a.size(), b.data(), b.size());
}

void array_xor(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
               std::vector<std::uint16_t>& out, Backend backend) {
    run_into(out, a.size() + b.size(), [&](std::uint16_t* dst) {
        return ROARING_DISPATCH(backend, xor_, a.data(), a.size(), b.data(), b.size(), dst);
    });
}

std::size_t array_xor_count(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
                            Backend backend) noexcept {
    return ROARING_DISPATCH(backend, xor_count, a.data(), a.size(), b.data(), b.size());
}

void array_op(SetOp op, std::span<const std::uint16_t> a, std::span<const std::uint16_t> b,
              std::vector<std::uint16_t>& out, Backend backend) {
    switch (op) {
        case SetOp::And: return array_intersect(a, b, out, backend);
        case SetOp::Or: return array_union(a, b, out, backend);
        case SetOp::AndNot: return array_difference(a, b, out, backend);
        case SetOp::Xor: return array_xor(a, b, out, backend);
    }
}

std::size_t array_op_count(SetOp op, std::span<const std::uint16_t> a,
                           std::span<const std::uint16_t> b, Backend backend) noexcept {
    switch (op) {
        case SetOp::And: return array_intersect_count(a, b, backend);
        case SetOp::Or: return array_union_count(a, b, backend);
        case SetOp::AndNot: return array_difference_count(a, b, backend);
        case SetOp::Xor: return array_xor_count(a, b, backend);
    }
    return 0;
}

MergedBlocks merge_blocks(Block b1, Block b2, Backend backend) noexcept {
    MergedBlocks r;
    ROARING_DISPATCH(backend, merge, b1.data(), b2.data(), r.lo, r.hi);
    return r;
}

std::size_t dedup_store(std::int32_t prev_last, Block block, std::uint16_t* out,
                        Backend backend) noexcept {
    return ROARING_DISPATCH(backend, dedup, prev_last, block.data(), out);
}

}  // namespace kernels
}  // namespace roaring
