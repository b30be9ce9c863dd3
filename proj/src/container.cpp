#include "roaring/container.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "run_ops.hpp"

namespace roaring {
namespace {

using kernels::BitMode;

inline bool test_bit(const BitsetContainer& b, std::uint16_t v) noexcept {
    return (b.words[v / 64] >> (v % 64)) & 1u;
}

BitsetContainer array_to_bitset(std::span<const std::uint16_t> values) {
    BitsetContainer b;
    kernels::bitset_apply_array(b.words, values, BitMode::Set, false);
    b.cardinality = static_cast<std::uint32_t>(values.size());
    return b;
}

ArrayContainer bitset_to_array(const BitsetContainer& b) {
    ArrayContainer a;
    a.values.resize(b.cardinality);
    const std::size_t n = kernels::extract_set_bits(b.words, std::uint16_t{0}, a.values.data());
    a.values.resize(n);
    return a;
}

ArrayContainer runs_to_array(std::span<const Run> runs) {
    ArrayContainer a;
    a.values.reserve(detail::run_cardinality(runs));
    for (const Run& r : runs) {
        for (std::uint32_t v = r.start; v <= r.last(); ++v) {
            a.values.push_back(static_cast<std::uint16_t>(v));
        }
    }
    return a;
}

BitsetContainer runs_to_bitset(std::span<const Run> runs) {
    BitsetContainer b;
    for (const Run& r : runs) detail::set_range(b.words, r.start, r.last());
    b.cardinality = detail::run_cardinality(runs);
    return b;
}

// Array or bitset holding the values of `c`, chosen by cardinality.
Container dense_or_sparse(const Container& c) {
    if (const auto* r = c.runs()) {
        if (detail::run_cardinality(r->runs) > kMaxArrayCardinality) {
            return Container(runs_to_bitset(r->runs));
        }
        return Container(runs_to_array(r->runs));
    }
    if (const auto* a = c.array(); a && a->values.size() > kMaxArrayCardinality) {
        return Container(array_to_bitset(a->values));
    }
    if (const auto* b = c.bitset(); b && b->cardinality <= kMaxArrayCardinality) {
        return Container(bitset_to_array(*b));
    }
    return c;
}

ArrayContainer filter_array(const ArrayContainer& a, const BitsetContainer& b, bool present) {
    ArrayContainer out;
    out.values.reserve(a.values.size());
    for (std::uint16_t v : a.values) {
        if (test_bit(b, v) == present) out.values.push_back(v);
    }
    return out;
}

Container apply_to_copy(const BitsetContainer& b, const ArrayContainer& a, BitMode mode) {
    BitsetContainer out = b;
    const std::int64_t delta = kernels::bitset_apply_array(out.words, a.values, mode, true);
    out.cardinality = static_cast<std::uint32_t>(std::int64_t{out.cardinality} + delta);
    return normalize(Container(std::move(out)));
}

Container array_bitset(SetOp op, const ArrayContainer& a, const BitsetContainer& b,
                       bool array_is_left) {
    switch (op) {
        case SetOp::And: return Container(filter_array(a, b, true));
        case SetOp::Or: return apply_to_copy(b, a, BitMode::Set);
        case SetOp::Xor: return apply_to_copy(b, a, BitMode::Flip);
        case SetOp::AndNot:
            if (array_is_left) return Container(filter_array(a, b, false));
            return apply_to_copy(b, a, BitMode::Clear);
    }
    return {};
}

std::uint32_t and_cardinality(const ArrayContainer& a, const BitsetContainer& b) noexcept {
    std::uint32_t card = 0;
    for (std::uint16_t v : a.values) card += test_bit(b, v) ? 1u : 0u;
    return card;
}

std::uint32_t from_intersection(SetOp op, std::uint32_t ca, std::uint32_t cb,
                                std::uint32_t inter) noexcept {
    switch (op) {
        case SetOp::And: return inter;
        case SetOp::Or: return ca + cb - inter;
        case SetOp::AndNot: return ca - inter;
        case SetOp::Xor: return ca + cb - 2 * inter;
    }
    return 0;
}

}  // namespace

const char* to_string(ContainerType type) noexcept {
    switch (type) {
        case ContainerType::Array: return "array";
        case ContainerType::Bitset: return "bitset";
        case ContainerType::Run: return "run";
    }
    return "?";
}

Container Container::from_sorted(std::span<const std::uint16_t> values) {
    if (values.size() > kMaxArrayCardinality) return Container(array_to_bitset(values));
    return Container(ArrayContainer{{values.begin(), values.end()}});
}

Container Container::from_range(std::uint16_t first, std::uint16_t last) {
    return normalize(
        Container(RunContainer{{Run{first, static_cast<std::uint16_t>(last - first)}}}));
}

std::uint32_t Container::cardinality() const noexcept {
    if (const auto* a = array()) return static_cast<std::uint32_t>(a->values.size());
    if (const auto* b = bitset()) return b->cardinality;
    return detail::run_cardinality(runs()->runs);
}

bool Container::contains(std::uint16_t v) const noexcept {
    if (const auto* a = array()) return std::binary_search(a->values.begin(), a->values.end(), v);
    if (const auto* b = bitset()) return test_bit(*b, v);
    const auto& rs = runs()->runs;
    auto it = std::upper_bound(rs.begin(), rs.end(), v,
                               [](std::uint16_t x, const Run& r) { return x < r.start; });
    if (it == rs.begin()) return false;
    --it;
    return v <= it->last();
}

bool Container::add(std::uint16_t v) {
    if (auto* a = array()) {
        auto& vals = a->values;
        auto it = std::lower_bound(vals.begin(), vals.end(), v);
        if (it != vals.end() && *it == v) return false;
        if (vals.size() == kMaxArrayCardinality) {
            BitsetContainer b = array_to_bitset(vals);
            b.words[v / 64] |= std::uint64_t{1} << (v % 64);
            ++b.cardinality;
            storage_ = std::move(b);
            return true;
        }
        if (vals.size() == vals.capacity()) {
            const std::size_t pos = static_cast<std::size_t>(it - vals.begin());
            vals.reserve(std::min<std::size_t>(kMaxArrayCardinality,
                                               std::max<std::size_t>(4, 2 * vals.capacity())));
            it = vals.begin() + static_cast<std::ptrdiff_t>(pos);
        }
        vals.insert(it, v);
        return true;
    }
    if (auto* b = bitset()) {
        std::uint64_t& w = b->words[v / 64];
        const std::uint64_t mask = std::uint64_t{1} << (v % 64);
        if (w & mask) return false;
        w |= mask;
        ++b->cardinality;
        return true;
    }
    if (contains(v)) return false;
    auto& rs = runs()->runs;
    auto next = std::upper_bound(rs.begin(), rs.end(), v,
                                 [](std::uint16_t x, const Run& r) { return x < r.start; });
    const bool joins_prev = next != rs.begin() && std::prev(next)->last() + 1 == v;
    const bool joins_next = next != rs.end() && std::uint32_t{v} + 1 == next->start;
    if (joins_prev && joins_next) {
        auto prev = std::prev(next);
        prev->length = static_cast<std::uint16_t>(next->last() - prev->start);
        rs.erase(next);
    } else if (joins_prev) {
        ++std::prev(next)->length;
    } else if (joins_next) {
        next->start = v;
        ++next->length;
    } else {
        rs.insert(next, Run{v, 0});
    }
    *this = normalize(std::move(*this));
    return true;
}

bool Container::remove(std::uint16_t v) {
    if (auto* a = array()) {
        auto& vals = a->values;
        auto it = std::lower_bound(vals.begin(), vals.end(), v);
        if (it == vals.end() || *it != v) return false;
        vals.erase(it);
        return true;
    }
    if (auto* b = bitset()) {
        std::uint64_t& w = b->words[v / 64];
        const std::uint64_t mask = std::uint64_t{1} << (v % 64);
        if (!(w & mask)) return false;
        w &= ~mask;
        --b->cardinality;
        if (b->cardinality <= kMaxArrayCardinality) storage_ = bitset_to_array(*b);
        return true;
    }
    if (!contains(v)) return false;
    auto& rs = runs()->runs;
    auto it = std::prev(std::upper_bound(
        rs.begin(), rs.end(), v, [](std::uint16_t x, const Run& r) { return x < r.start; }));
    const std::uint32_t first = it->start;
    const std::uint32_t last = it->last();
    if (first == last) {
        rs.erase(it);
    } else if (v == first) {
        ++it->start;
        --it->length;
    } else if (v == last) {
        --it->length;
    } else {
        it->length = static_cast<std::uint16_t>(v - 1 - first);
        rs.insert(std::next(it), Run{static_cast<std::uint16_t>(v + 1),
                                     static_cast<std::uint16_t>(last - v - 1)});
    }
    *this = normalize(std::move(*this));
    return true;
}

std::size_t Container::count_runs() const noexcept {
    if (const auto* a = array()) return detail::count_runs(std::span(a->values));
    if (const auto* b = bitset()) return detail::count_runs(std::span(b->words));
    return runs()->runs.size();
}

std::vector<std::uint16_t> Container::values() const {
    if (const auto* a = array()) return a->values;
    if (const auto* b = bitset()) return bitset_to_array(*b).values;
    return runs_to_array(runs()->runs).values;
}

std::size_t Container::payload_bytes() const noexcept {
    if (const auto* a = array()) return 2 * a->values.capacity();
    if (bitset()) return 8 * kernels::kBitsetWords;
    return 4 * runs()->runs.capacity();
}

std::size_t Container::shrink_to_fit() {
    const std::size_t before = payload_bytes();
    if (auto* a = array()) a->values.shrink_to_fit();
    if (auto* r = runs()) r->runs.shrink_to_fit();
    return before - payload_bytes();
}

Container normalize(Container c) {
    if (const auto* r = c.runs()) {
        if (r->runs.empty()) return {};
        if (run_encoding_preferred(detail::run_cardinality(r->runs), r->runs.size())) return c;
    }
    return dense_or_sparse(c);
}

bool is_normalized(const Container& c) noexcept {
    if (const auto* a = c.array()) return a->values.size() <= kMaxArrayCardinality;
    if (const auto* b = c.bitset()) return b->cardinality > kMaxArrayCardinality;
    const auto& rs = c.runs()->runs;
    return !rs.empty() && run_encoding_preferred(detail::run_cardinality(rs), rs.size());
}

bool run_optimize(Container& c) {
    const ContainerType before = c.type();
    if (run_encoding_preferred(c.cardinality(), c.count_runs())) {
        if (before != ContainerType::Run) c = Container(RunContainer{detail::to_runs(c)});
    } else {
        c = dense_or_sparse(c);
    }
    return c.type() != before;
}

Container pairwise(SetOp op, const Container& a, const Container& b) {
    const auto* aa = a.array();
    const auto* ab = a.bitset();
    const auto* ba = b.array();
    const auto* bb = b.bitset();
    if (aa && ba) {
        ArrayContainer out;
        kernels::array_op(op, aa->values, ba->values, out.values);
        return normalize(Container(std::move(out)));
    }
    if (ab && bb) {
        BitsetContainer out;
        out.cardinality = kernels::bitset_op_with_count(ab->words, bb->words, out.words, op);
        return normalize(Container(std::move(out)));
    }
    if (aa && bb) return array_bitset(op, *aa, *bb, true);
    if (ab && ba) return array_bitset(op, *ba, *ab, false);
    const std::vector<Run> ra = detail::to_runs(a);
    const std::vector<Run> rb = detail::to_runs(b);
    return normalize(Container(RunContainer{detail::runs_op(op, ra, rb)}));
}

std::uint32_t pairwise_cardinality(SetOp op, const Container& a, const Container& b) {
    const auto* aa = a.array();
    const auto* ab = a.bitset();
    const auto* ba = b.array();
    const auto* bb = b.bitset();
    if (aa && ba) {
        return static_cast<std::uint32_t>(kernels::array_op_count(op, aa->values, ba->values));
    }
    if (ab && bb) return kernels::bitset_op_count_only(ab->words, bb->words, op);
    if (aa && bb) {
        return from_intersection(op, a.cardinality(), b.cardinality(), and_cardinality(*aa, *bb));
    }
    if (ab && ba) {
        return from_intersection(op, a.cardinality(), b.cardinality(), and_cardinality(*ba, *ab));
    }
    const std::vector<Run> ra = detail::to_runs(a);
    const std::vector<Run> rb = detail::to_runs(b);
    return detail::runs_op_cardinality(op, ra, rb);
}

bool is_well_formed(const Container& c) noexcept {
    if (const auto* a = c.array()) {
        return std::adjacent_find(a->values.begin(), a->values.end(),
                                  std::greater_equal<>()) == a->values.end();
    }
    if (const auto* b = c.bitset()) {
        if (b->words.size() != kernels::kBitsetWords) return false;
        std::uint64_t card = 0;
        for (std::uint64_t w : b->words) card += static_cast<std::uint64_t>(std::popcount(w));
        return card == b->cardinality;
    }
    const auto& rs = c.runs()->runs;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].last() >= kChunkSize) return false;
        if (i > 0 && std::uint32_t{rs[i].start} <= rs[i - 1].last() + 1) return false;
    }
    return true;
}

}  // namespace roaring
