#pragma once
// Shared input generators and brute-force references for the tests.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <random>
#include <set>
#include <vector>

#include "roaring/container.hpp"
#include "roaring/roaring_bitmap.hpp"

namespace testing {

using roaring::Backend;
using roaring::SetOp;

inline constexpr SetOp kAllOps[] = {SetOp::And, SetOp::Or, SetOp::AndNot, SetOp::Xor};
inline constexpr Backend kBackends[] = {Backend::Scalar, Backend::Accelerated};

template <class T>
std::vector<T> brute(SetOp op, const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    auto dst = std::back_inserter(out);
    switch (op) {
        case SetOp::And: std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), dst); break;
        case SetOp::Or: std::set_union(a.begin(), a.end(), b.begin(), b.end(), dst); break;
        case SetOp::AndNot: std::set_difference(a.begin(), a.end(), b.begin(), b.end(), dst); break;
        case SetOp::Xor:
            std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), dst);
            break;
    }
    return out;
}

// `count` distinct values below `universe`, sorted.
template <class T>
std::vector<T> sample(std::mt19937_64& rng, std::uint64_t universe, std::size_t count) {
    count = std::min<std::uint64_t>(count, universe);
    std::set<std::uint64_t> picked;
    const bool invert = count > universe / 2 && universe <= (1u << 22);
    if (invert) {
        std::uniform_int_distribution<std::uint64_t> d(0, universe - 1);
        std::set<std::uint64_t> drop;
        while (drop.size() < universe - count) drop.insert(d(rng));
        std::vector<T> out;
        out.reserve(count);
        for (std::uint64_t v = 0; v < universe; ++v) {
            if (!drop.count(v)) out.push_back(static_cast<T>(v));
        }
        return out;
    }
    std::uniform_int_distribution<std::uint64_t> d(0, universe - 1);
    while (picked.size() < count) picked.insert(d(rng));
    return {picked.begin(), picked.end()};
}

// Runs of consecutive values with random gaps, all below `universe`.
template <class T>
std::vector<T> clustered(std::mt19937_64& rng, std::uint64_t universe, std::size_t count,
                         std::uint32_t max_run = 64, std::uint32_t max_gap = 200) {
    std::vector<T> out;
    std::uniform_int_distribution<std::uint32_t> run_len(1, max_run);
    std::uniform_int_distribution<std::uint32_t> gap(2, max_gap);
    std::uint64_t v = std::uniform_int_distribution<std::uint64_t>(0, universe / 4)(rng);
    while (out.size() < count && v < universe) {
        for (std::uint32_t k = run_len(rng); k > 0 && v < universe && out.size() < count; --k) {
            out.push_back(static_cast<T>(v++));
        }
        v += gap(rng);
    }
    return out;
}

// A container of a random shape: sparse or dense array, bitset, runs.
inline roaring::Container random_container(std::mt19937_64& rng) {
    std::vector<std::uint16_t> values;
    switch (rng() % 5) {
        case 0: values = sample<std::uint16_t>(rng, 65536, 1 + rng() % 64); break;
        case 1: values = sample<std::uint16_t>(rng, 65536, 1 + rng() % 4096); break;
        case 2: values = sample<std::uint16_t>(rng, 65536, 4097 + rng() % 40000); break;
        case 3: values = clustered<std::uint16_t>(rng, 65536, 1 + rng() % 20000); break;
        default: values = clustered<std::uint16_t>(rng, 65536, 60000, 4000, 40); break;
    }
    roaring::Container c = roaring::Container::from_sorted(values);
    if (rng() % 2 == 0) roaring::run_optimize(c);
    return c;
}

// First 1000 multiples of 62 in chunk 0; [2^16, 2^16+100), [2^16+101, 2^16+201),
// [2^16+300, 2^16+400) in chunk 1; the even values of chunk 2.
inline std::vector<std::uint32_t> three_chunk_values() {
    std::vector<std::uint32_t> v;
    for (std::uint32_t i = 0; i < 1000; ++i) v.push_back(62 * i);
    for (std::uint32_t x = 65536; x < 65536 + 100; ++x) v.push_back(x);
    for (std::uint32_t x = 65536 + 101; x < 65536 + 201; ++x) v.push_back(x);
    for (std::uint32_t x = 65536 + 300; x < 65536 + 400; ++x) v.push_back(x);
    for (std::uint32_t x = 2 * 65536; x < 3 * 65536; x += 2) v.push_back(x);
    return v;
}

inline roaring::RoaringBitmap three_chunk_bitmap() {
    auto rb = roaring::RoaringBitmap::from_sorted(three_chunk_values());
    rb.run_optimize();
    return rb;
}

}  // namespace testing
