#include "run_ops.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace roaring::detail {
namespace {

constexpr std::uint32_t kEnd = std::numeric_limits<std::uint32_t>::max();

inline bool keep(SetOp op, bool in_a, bool in_b) noexcept {
    switch (op) {
        case SetOp::And: return in_a && in_b;
        case SetOp::Or: return in_a || in_b;
        case SetOp::AndNot: return in_a && !in_b;
        case SetOp::Xor: return in_a != in_b;
    }
    return false;
}

// Walks the union of both boundary lists; between two consecutive boundaries
// membership in a and in b is constant. Emits half-open [from, to).
template <class Emit>
void sweep(SetOp op, std::span<const Run> a, std::span<const Run> b, Emit&& emit) {
    std::size_t i = 0, j = 0;
    std::uint32_t pos = 0;
    while (true) {
        const std::uint32_t a_first = i < a.size() ? a[i].start : kEnd;
        const std::uint32_t a_end = i < a.size() ? a[i].last() + 1 : kEnd;
        const std::uint32_t b_first = j < b.size() ? b[j].start : kEnd;
        const std::uint32_t b_end = j < b.size() ? b[j].last() + 1 : kEnd;
        const bool in_a = pos >= a_first;
        const bool in_b = pos >= b_first;
        const std::uint32_t next = std::min(in_a ? a_end : a_first, in_b ? b_end : b_first);
        if (next == kEnd) break;
        if (next > pos && keep(op, in_a, in_b)) emit(pos, next);
        pos = next;
        if (i < a.size() && pos >= a_end) ++i;
        if (j < b.size() && pos >= b_end) ++j;
    }
}

}  // namespace

std::uint32_t run_cardinality(std::span<const Run> runs) noexcept {
    std::uint32_t card = 0;
    for (const Run& r : runs) card += std::uint32_t{r.length} + 1;
    return card;
}

std::vector<Run> runs_op(SetOp op, std::span<const Run> a, std::span<const Run> b) {
    std::vector<Run> out;
    std::uint32_t open_first = 0, open_end = 0;
    bool open = false;
    auto flush = [&] {
        out.push_back({static_cast<std::uint16_t>(open_first),
                       static_cast<std::uint16_t>(open_end - open_first - 1)});
    };
    sweep(op, a, b, [&](std::uint32_t from, std::uint32_t to) {
        if (open && from == open_end) {
            open_end = to;
            return;
        }
        if (open) flush();
        open = true;
        open_first = from;
        open_end = to;
    });
    if (open) flush();
    return out;
}

std::uint32_t runs_op_cardinality(SetOp op, std::span<const Run> a,
                                  std::span<const Run> b) noexcept {
    std::uint32_t card = 0;
    sweep(op, a, b, [&](std::uint32_t from, std::uint32_t to) { card += to - from; });
    return card;
}

void set_range(std::span<std::uint64_t> words, std::uint32_t first, std::uint32_t last) noexcept {
    const std::uint32_t w0 = first / 64;
    const std::uint32_t w1 = last / 64;
    const std::uint64_t head = ~std::uint64_t{0} << (first % 64);
    const std::uint64_t tail = ~std::uint64_t{0} >> (63 - last % 64);
    if (w0 == w1) {
        words[w0] |= head & tail;
        return;
    }
    words[w0] |= head;
    for (std::uint32_t w = w0 + 1; w < w1; ++w) words[w] = ~std::uint64_t{0};
    words[w1] |= tail;
}

std::size_t count_runs(std::span<const std::uint64_t> words) noexcept {
    std::size_t runs = 0;
    std::uint64_t carry = 0;
    for (std::uint64_t w : words) {
        // a run starts wherever a set bit follows a clear one
        runs += static_cast<std::size_t>(std::popcount(w & ~((w << 1) | carry)));
        carry = w >> 63;
    }
    return runs;
}

std::size_t count_runs(std::span<const std::uint16_t> sorted) noexcept {
    if (sorted.empty()) return 0;
    std::size_t runs = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] != sorted[i - 1] + 1) ++runs;
    }
    return runs;
}

std::vector<Run> to_runs(const Container& c) {
    if (const auto* r = c.runs()) return r->runs;
    std::vector<Run> out;
    if (const auto* a = c.array()) {
        const auto& v = a->values;
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
            out.push_back({v[i], static_cast<std::uint16_t>(v[j] - v[i])});
            i = j + 1;
        }
        return out;
    }
    const auto& words = c.bitset()->words;
    const std::size_t n = words.size();
    std::uint32_t pos = 0;
    while (pos < kChunkSize) {
        std::size_t w = pos / 64;
        std::uint64_t bits = words[w] & (~std::uint64_t{0} << (pos % 64));
        while (bits == 0) {
            if (++w == n) return out;
            bits = words[w];
        }
        const std::uint32_t first = static_cast<std::uint32_t>(w * 64) +
                                    static_cast<std::uint32_t>(std::countr_zero(bits));
        bits = ~words[w] & (~std::uint64_t{0} << (first % 64));
        std::uint32_t end = kChunkSize;
        while (bits == 0) {
            if (++w == n) break;
            bits = ~words[w];
        }
        if (w < n) {
            end = static_cast<std::uint32_t>(w * 64) +
                  static_cast<std::uint32_t>(std::countr_zero(bits));
        }
        out.push_back({static_cast<std::uint16_t>(first),
                       static_cast<std::uint16_t>(end - first - 1)});
        pos = end;
    }
    return out;
}

}  // namespace roaring::detail
