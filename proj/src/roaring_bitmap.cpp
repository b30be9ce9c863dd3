#include "roaring/roaring_bitmap.hpp"

#include <algorithm>
#include <utility>

#include "run_ops.hpp"

namespace roaring {
namespace {

constexpr std::uint16_t high_bits(std::uint32_t v) noexcept {
    return static_cast<std::uint16_t>(v >> 16);
}
constexpr std::uint16_t low_bits(std::uint32_t v) noexcept {
    return static_cast<std::uint16_t>(v & 0xFFFFu);
}

std::uint64_t serialized_payload(const Container& c) noexcept {
    if (const auto* a = c.array()) return 2 * a->values.size();
    if (c.bitset()) return 8 * kernels::kBitsetWords;
    return 2 + 4 * c.runs()->runs.size();
}

// Destination of a wide union. Bitset cardinalities are not maintained.
void lazy_or_into(Container& acc, const Container& other) {
    if (!acc.bitset()) {
        if (acc.cardinality() + other.cardinality() <= kMaxArrayCardinality ||
            other.runs() != nullptr) {
            acc = pairwise(SetOp::Or, acc, other);
            return;
        }
        BitsetContainer b;
        acc.for_each([&](std::uint16_t v) {
            b.words[v / 64] |= std::uint64_t{1} << (v % 64);
            return true;
        });
        acc = Container(std::move(b));
    }
    auto& words = acc.bitset()->words;
    if (const auto* ob = other.bitset()) {
        for (std::size_t i = 0; i < words.size(); ++i) words[i] |= ob->words[i];
    } else if (const auto* oa = other.array()) {
        kernels::bitset_apply_array(words, oa->values, kernels::BitMode::Set, false);
    } else {
        for (const Run& r : other.runs()->runs) detail::set_range(words, r.start, r.last());
    }
}

}  // namespace

RoaringBitmap::RoaringBitmap(std::initializer_list<std::uint32_t> values)
    : RoaringBitmap(from_values(std::span(values.begin(), values.size()))) {}

RoaringBitmap RoaringBitmap::from_values(std::span<const std::uint32_t> values) {
    std::vector<std::uint32_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return from_sorted(sorted);
}

RoaringBitmap RoaringBitmap::from_sorted(std::span<const std::uint32_t> values) {
    RoaringBitmap rb;
    std::vector<std::uint16_t> lows;
    std::size_t i = 0;
    while (i < values.size()) {
        const std::uint16_t key = high_bits(values[i]);
        lows.clear();
        while (i < values.size() && high_bits(values[i]) == key) lows.push_back(low_bits(values[i++]));
        rb.keys_.push_back(key);
        rb.containers_.push_back(Container::from_sorted(lows));
    }
    return rb;
}

RoaringBitmap RoaringBitmap::from_parts(std::vector<std::uint16_t> keys,
                                        std::vector<Container> containers) {
    RoaringBitmap rb;
    rb.keys_ = std::move(keys);
    rb.containers_ = std::move(containers);
    return rb;
}

std::size_t RoaringBitmap::find_key(std::uint16_t key) const noexcept {
    return static_cast<std::size_t>(std::lower_bound(keys_.begin(), keys_.end(), key) -
                                    keys_.begin());
}

bool RoaringBitmap::contains(std::uint32_t v) const noexcept {
    const std::size_t i = find_key(high_bits(v));
    return i < keys_.size() && keys_[i] == high_bits(v) && containers_[i].contains(low_bits(v));
}

bool RoaringBitmap::add(std::uint32_t v) {
    const std::uint16_t key = high_bits(v);
    const std::size_t i = find_key(key);
    if (i < keys_.size() && keys_[i] == key) return containers_[i].add(low_bits(v));
    keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(i), key);
    containers_.insert(containers_.begin() + static_cast<std::ptrdiff_t>(i),
                       Container(ArrayContainer{{low_bits(v)}}));
    return true;
}

bool RoaringBitmap::remove(std::uint32_t v) {
    const std::uint16_t key = high_bits(v);
    const std::size_t i = find_key(key);
    if (i == keys_.size() || keys_[i] != key) return false;
    if (!containers_[i].remove(low_bits(v))) return false;
    if (containers_[i].empty()) {
        keys_.erase(keys_.begin() + static_cast<std::ptrdiff_t>(i));
        containers_.erase(containers_.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return true;
}

std::uint64_t RoaringBitmap::cardinality() const noexcept {
    std::uint64_t card = 0;
    for (const Container& c : containers_) card += c.cardinality();
    return card;
}

std::vector<std::uint32_t> RoaringBitmap::to_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(cardinality());
    for_each([&](std::uint32_t v) {
        out.push_back(v);
        return true;
    });
    return out;
}

bool RoaringBitmap::run_optimize() {
    bool changed = false;
    for (Container& c : containers_) changed |= roaring::run_optimize(c);
    return changed;
}

std::size_t RoaringBitmap::shrink_to_fit() {
    std::size_t released = 0;
    for (Container& c : containers_) released += c.shrink_to_fit();
    const std::size_t before = keys_.capacity() * sizeof(std::uint16_t) +
                               containers_.capacity() * sizeof(Container);
    keys_.shrink_to_fit();
    containers_.shrink_to_fit();
    return released + before - keys_.capacity() * sizeof(std::uint16_t) -
           containers_.capacity() * sizeof(Container);
}

MemoryUsage RoaringBitmap::memory_bytes() const noexcept {
    MemoryUsage m;
    m.in_memory = kBitmapHeaderBytes;
    m.serialized = 8 + 8 * std::uint64_t{containers_.size()};
    for (const Container& c : containers_) {
        m.in_memory += kContainerBookkeepingBytes + c.payload_bytes();
        m.serialized += serialized_payload(c);
    }
    return m;
}

std::string RoaringBitmap::validate() const {
    if (keys_.size() != containers_.size()) return "key and container counts differ";
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        const std::string at = "container " + std::to_string(i) + " (key " +
                               std::to_string(keys_[i]) + "): ";
        if (i > 0 && keys_[i] <= keys_[i - 1]) return at + "keys not strictly increasing";
        if (!is_well_formed(containers_[i])) return at + "malformed";
        if (containers_[i].empty()) return at + "empty";
        if (!is_normalized(containers_[i])) return at + "not normalized";
    }
    return {};
}

RoaringBitmap op(SetOp op, const RoaringBitmap& a, const RoaringBitmap& b) {
    const auto& ka = a.keys();
    const auto& kb = b.keys();
    const auto& ca = a.containers();
    const auto& cb = b.containers();
    const bool keep_a = op != SetOp::And;
    const bool keep_b = op == SetOp::Or || op == SetOp::Xor;
    std::vector<std::uint16_t> keys;
    std::vector<Container> containers;
    std::size_t i = 0, j = 0;
    while (i < ka.size() || j < kb.size()) {
        if (j == kb.size() || (i < ka.size() && ka[i] < kb[j])) {
            if (keep_a) {
                keys.push_back(ka[i]);
                containers.push_back(ca[i]);
            }
            ++i;
        } else if (i == ka.size() || kb[j] < ka[i]) {
            if (keep_b) {
                keys.push_back(kb[j]);
                containers.push_back(cb[j]);
            }
            ++j;
        } else {
            Container c = pairwise(op, ca[i], cb[j]);
            if (!c.empty()) {
                keys.push_back(ka[i]);
                containers.push_back(std::move(c));
            }
            ++i;
            ++j;
        }
        if (!keep_a && (i == ka.size() || j == kb.size())) break;
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(containers));
}

std::uint64_t op_cardinality(SetOp op, const RoaringBitmap& a, const RoaringBitmap& b) {
    const auto& ka = a.keys();
    const auto& kb = b.keys();
    std::uint64_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < ka.size() && j < kb.size()) {
        if (ka[i] < kb[j]) {
            ++i;
        } else if (kb[j] < ka[i]) {
            ++j;
        } else {
            inter += pairwise_cardinality(SetOp::And, a.containers()[i], b.containers()[j]);
            ++i;
            ++j;
        }
    }
    const std::uint64_t na = a.cardinality();
    const std::uint64_t nb = b.cardinality();
    switch (op) {
        case SetOp::And: return inter;
        case SetOp::Or: return na + nb - inter;
        case SetOp::AndNot: return na - inter;
        case SetOp::Xor: return na + nb - 2 * inter;
    }
    return 0;
}

RoaringBitmap or_many(std::span<const RoaringBitmap* const> bitmaps) {
    if (bitmaps.empty()) return {};
    std::vector<std::uint16_t> keys = bitmaps[0]->keys();
    std::vector<Container> acc = bitmaps[0]->containers();
    for (std::size_t n = 1; n < bitmaps.size(); ++n) {
        const auto& kb = bitmaps[n]->keys();
        const auto& cb = bitmaps[n]->containers();
        std::vector<std::uint16_t> merged_keys;
        std::vector<Container> merged;
        merged_keys.reserve(keys.size() + kb.size());
        merged.reserve(keys.size() + kb.size());
        std::size_t i = 0, j = 0;
        while (i < keys.size() || j < kb.size()) {
            if (j == kb.size() || (i < keys.size() && keys[i] < kb[j])) {
                merged_keys.push_back(keys[i]);
                merged.push_back(std::move(acc[i++]));
            } else if (i == keys.size() || kb[j] < keys[i]) {
                merged_keys.push_back(kb[j]);
                merged.push_back(cb[j++]);
            } else {
                lazy_or_into(acc[i], cb[j++]);
                merged_keys.push_back(keys[i]);
                merged.push_back(std::move(acc[i++]));
            }
        }
        keys = std::move(merged_keys);
        acc = std::move(merged);
    }
    for (Container& c : acc) {
        if (auto* b = c.bitset()) {
            b->cardinality = static_cast<std::uint32_t>(kernels::popcount_block(b->words));
            c = normalize(std::move(c));
        }
    }
    return RoaringBitmap::from_parts(std::move(keys), std::move(acc));
}

RoaringBitmap or_many(std::span<const RoaringBitmap> bitmaps) {
    std::vector<const RoaringBitmap*> ptrs;
    ptrs.reserve(bitmaps.size());
    for (const RoaringBitmap& b : bitmaps) ptrs.push_back(&b);
    return or_many(std::span<const RoaringBitmap* const>(ptrs));
}

}  // namespace roaring
