#include "roaring/bench/baselines.hpp"

#include <algorithm>
#include <memory>

namespace roaring::bench {
namespace {

template <class T>
struct CountingAllocator {
    using value_type = T;

    std::uint64_t* live;

    explicit CountingAllocator(std::uint64_t* counter) noexcept : live(counter) {}
    template <class U>
    CountingAllocator(const CountingAllocator<U>& o) noexcept : live(o.live) {}

    T* allocate(std::size_t n) {
        *live += n * sizeof(T);
        return std::allocator<T>().allocate(n);
    }
    void deallocate(T* p, std::size_t n) noexcept {
        *live -= n * sizeof(T);
        std::allocator<T>().deallocate(p, n);
    }

    template <class U>
    bool operator==(const CountingAllocator<U>& o) const noexcept {
        return live == o.live;
    }
};

std::uint64_t from_intersection(SetOp op, std::uint64_t na, std::uint64_t nb,
                                std::uint64_t inter) noexcept {
    switch (op) {
        case SetOp::And: return inter;
        case SetOp::Or: return na + nb - inter;
        case SetOp::AndNot: return na - inter;
        case SetOp::Xor: return na + nb - 2 * inter;
    }
    return 0;
}

}  // namespace

std::vector<std::uint32_t> oracle_pairwise(SetOp op, std::span<const std::uint32_t> a,
                                           std::span<const std::uint32_t> b) {
    const bool keep_a = op != SetOp::And;
    const bool keep_b = op == SetOp::Or || op == SetOp::Xor;
    const bool keep_both = op == SetOp::And || op == SetOp::Or;
    std::vector<std::uint32_t> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            if (keep_a) out.push_back(a[i]);
            ++i;
        } else if (b[j] < a[i]) {
            if (keep_b) out.push_back(b[j]);
            ++j;
        } else {
            if (keep_both) out.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    if (keep_a) out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    if (keep_b) out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

std::uint64_t oracle_cardinality(SetOp op, std::span<const std::uint32_t> a,
                                 std::span<const std::uint32_t> b) noexcept {
    std::uint64_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++inter;
            ++i;
            ++j;
        }
    }
    return from_intersection(op, a.size(), b.size(), inter);
}

BaselineBitset BaselineBitset::from_sorted(std::span<const std::uint32_t> values,
                                           std::uint64_t universe) {
    BaselineBitset b;
    b.words.assign(static_cast<std::size_t>((universe + 63) / 64), 0);
    for (std::uint32_t v : values) b.words[v / 64] |= std::uint64_t{1} << (v % 64);
    return b;
}

std::uint64_t BaselineBitset::cardinality() const noexcept {
    return kernels::popcount_block(words);
}

std::vector<std::uint32_t> BaselineBitset::to_vector() const {
    std::vector<std::uint32_t> out(cardinality());
    out.resize(kernels::extract_set_bits(words, std::uint32_t{0}, out.data()));
    return out;
}

BaselineBitset op(SetOp op, const BaselineBitset& a, const BaselineBitset& b) {
    const std::size_t n = std::min(a.words.size(), b.words.size());
    BaselineBitset out;
    out.words.assign(std::max(a.words.size(), b.words.size()), 0);
    kernels::bitset_op_with_count(std::span(a.words).first(n), std::span(b.words).first(n),
                                  std::span(out.words).first(n), op);
    const bool keep_a = op != SetOp::And;
    const bool keep_b = op == SetOp::Or || op == SetOp::Xor;
    for (std::size_t i = n; i < out.words.size(); ++i) {
        if (keep_a && i < a.words.size()) out.words[i] = a.words[i];
        if (keep_b && i < b.words.size()) out.words[i] = b.words[i];
    }
    return out;
}

std::uint64_t op_cardinality(SetOp op, const BaselineBitset& a, const BaselineBitset& b) noexcept {
    const std::size_t n = std::min(a.words.size(), b.words.size());
    std::uint64_t card = kernels::bitset_op_count_only(std::span(a.words).first(n),
                                                       std::span(b.words).first(n), op);
    if (op != SetOp::And && a.words.size() > n) {
        card += kernels::popcount_block(std::span(a.words).subspan(n));
    }
    if ((op == SetOp::Or || op == SetOp::Xor) && b.words.size() > n) {
        card += kernels::popcount_block(std::span(b.words).subspan(n));
    }
    return card;
}

bool BaselineSortedArray::contains(std::uint32_t v) const noexcept {
    return std::binary_search(values.begin(), values.end(), v);
}

BaselineSortedArray op(SetOp op, const BaselineSortedArray& a, const BaselineSortedArray& b) {
    return {oracle_pairwise(op, a.values, b.values)};
}

std::uint64_t op_cardinality(SetOp op, const BaselineSortedArray& a,
                             const BaselineSortedArray& b) noexcept {
    return oracle_cardinality(op, a.values, b.values);
}

BaselineHashSet op(SetOp op, const BaselineHashSet& a, const BaselineHashSet& b) {
    const bool a_smaller = a.values.size() <= b.values.size();
    const auto& small = a_smaller ? a : b;
    const auto& large = a_smaller ? b : a;
    BaselineHashSet out;
    switch (op) {
        case SetOp::And:
            for (std::uint32_t v : small.values) {
                if (large.contains(v)) out.values.insert(v);
            }
            break;
        case SetOp::Or:
            out = large;
            out.values.insert(small.values.begin(), small.values.end());
            break;
        case SetOp::AndNot:
            for (std::uint32_t v : a.values) {
                if (!b.contains(v)) out.values.insert(v);
            }
            break;
        case SetOp::Xor:
            out = a;
            for (std::uint32_t v : b.values) {
                if (out.values.erase(v) == 0) out.values.insert(v);
            }
            break;
    }
    return out;
}

std::uint64_t op_cardinality(SetOp op, const BaselineHashSet& a, const BaselineHashSet& b) {
    const bool a_smaller = a.values.size() <= b.values.size();
    const auto& small = a_smaller ? a : b;
    const auto& large = a_smaller ? b : a;
    std::uint64_t inter = 0;
    for (std::uint32_t v : small.values) inter += large.contains(v) ? 1 : 0;
    return from_intersection(op, a.values.size(), b.values.size(), inter);
}

std::uint64_t hash_set_bytes(std::span<const std::uint32_t> values) {
    using Set = std::unordered_set<std::uint32_t, std::hash<std::uint32_t>,
                                   std::equal_to<std::uint32_t>, CountingAllocator<std::uint32_t>>;
    std::uint64_t live = 0;
    Set s(0, std::hash<std::uint32_t>(), std::equal_to<std::uint32_t>(),
          CountingAllocator<std::uint32_t>(&live));
    s.insert(values.begin(), values.end());
    return live;
}

}  // namespace roaring::bench
