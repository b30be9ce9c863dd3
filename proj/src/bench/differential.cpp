#include "roaring/bench/differential.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <random>

#include "roaring/kernels.hpp"

namespace roaring::bench {
namespace {

using kernels::BitMode;
constexpr Backend kS = Backend::Scalar;
constexpr Backend kA = Backend::Accelerated;
constexpr SetOp kOps[] = {SetOp::And, SetOp::Or, SetOp::AndNot, SetOp::Xor};

class Gen {
   public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
    std::uint64_t word() { return rng_(); }

    // log-uniform in [1e-3, 1]
    double density() { return std::pow(10.0, -3.0 * std::uniform_real_distribution<double>(0, 1)(rng_)); }

    std::uint64_t word_with_density(double d) {
        if (d >= 1.0) return ~std::uint64_t{0};
        std::uint64_t w = 0;
        for (int b = 0; b < 64; ++b) {
            if (coin(d)) w |= std::uint64_t{1} << b;
        }
        return w;
    }

    std::vector<std::uint64_t> words(std::size_t n) {
        const double d = density();
        std::vector<std::uint64_t> out(n);
        for (auto& w : out) w = coin(0.5) ? word_with_density(d) : word();
        return out;
    }

    std::vector<std::uint16_t> array(std::size_t len, double d, bool force_zero) {
        const std::size_t range = std::clamp<std::size_t>(
            static_cast<std::size_t>(static_cast<double>(len) / d), len, 65536);
        std::vector<bool> picked(range, false);
        const bool invert = len > range / 2;
        std::size_t need = invert ? range - len : len;
        while (need > 0) {
            const std::size_t v = below(range);
            if (!picked[v]) {
                picked[v] = true;
                --need;
            }
        }
        std::vector<std::uint16_t> out;
        out.reserve(len);
        for (std::size_t v = 0; v < range; ++v) {
            if (picked[v] != invert) out.push_back(static_cast<std::uint16_t>(v));
        }
        if (force_zero && !out.empty() && out[0] != 0) out[0] = 0;
        return out;
    }

    std::size_t length() {
        // favour short and block-boundary lengths
        switch (below(4)) {
            case 0: return below(40);
            case 1: return 8 * below(64) + below(3);
            case 2: return below(1025);
            default: return below(8193);
        }
    }

   private:
    std::mt19937_64 rng_;
};

std::vector<std::uint16_t> reference(SetOp op, const std::vector<std::uint16_t>& a,
                                     const std::vector<std::uint16_t>& b) {
    std::vector<std::uint16_t> out;
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

class Runner {
   public:
    explicit Runner(std::uint64_t seed) : gen_(seed) {}

    void run(std::size_t cases) {
        for (case_ = 0; case_ < cases; ++case_) {
            switch (case_ % 8) {
                case 0: popcount(); break;
                case 1: bitset_ops(); break;
                case 2: extract(); break;
                case 3: apply_array(); break;
                case 4:
                case 5: array_ops(); break;
                case 6: blocks(); break;
                default: galloping(); break;
            }
        }
        result_.cases = cases;
        result_.accelerated = accelerated_available();
    }

    DifferentialResult take() { return std::move(result_); }

   private:
    void expect(bool ok, const std::string& kernel) {
        if (!ok && result_.failures.size() < 100) {
            result_.failures.push_back(kernel + " differs (case " + std::to_string(case_) + ")");
        }
    }

    void popcount() {
        const std::size_t n = gen_.coin(0.5) ? kernels::kBitsetWords : gen_.below(1100);
        const auto w = gen_.words(n);
        std::uint64_t naive = 0;
        for (std::uint64_t x : w) naive += static_cast<std::uint64_t>(std::popcount(x));
        const std::uint64_t s = kernels::popcount_block(w, kS);
        expect(s == kernels::popcount_block(w, kA) && s == naive, "popcount_block");
    }

    void bitset_ops() {
        const auto a = gen_.words(kernels::kBitsetWords);
        const auto b = gen_.coin(0.1) ? a : gen_.words(kernels::kBitsetWords);
        for (SetOp op : kOps) {
            std::vector<std::uint64_t> os(a.size()), oa(a.size());
            const auto cs = kernels::bitset_op_with_count(a, b, os, op, kS);
            const auto ca = kernels::bitset_op_with_count(a, b, oa, op, kA);
            expect(cs == ca && os == oa && cs == kernels::popcount_block(os, kS),
                   std::string("bitset_op_with_count/") + to_string(op));
            expect(kernels::bitset_op_count_only(a, b, op, kS) == cs &&
                       kernels::bitset_op_count_only(a, b, op, kA) == cs,
                   std::string("bitset_op_count_only/") + to_string(op));
        }
    }

    void extract() {
        const auto w = gen_.words(gen_.below(kernels::kBitsetWords + 1));
        const std::size_t total = kernels::popcount_block(w, kS);
        const auto base32 = static_cast<std::uint32_t>(gen_.word());
        std::vector<std::uint32_t> s32(total + 64), a32(total + 64);
        const std::size_t n32 = kernels::extract_set_bits(w, base32, s32.data(), kS);
        const std::size_t m32 = kernels::extract_set_bits(w, base32, a32.data(), kA);
        s32.resize(n32);
        a32.resize(m32);
        expect(n32 == total && s32 == a32, "extract_set_bits/32");
        const auto base16 = static_cast<std::uint16_t>(gen_.word());
        std::vector<std::uint16_t> s16(total + 64), a16(total + 64);
        const std::size_t n16 = kernels::extract_set_bits(w, base16, s16.data(), kS);
        const std::size_t m16 = kernels::extract_set_bits(w, base16, a16.data(), kA);
        s16.resize(n16);
        a16.resize(m16);
        expect(n16 == total && s16 == a16, "extract_set_bits/16");
    }

    void apply_array() {
        const auto start = gen_.words(kernels::kBitsetWords);
        std::vector<std::uint16_t> pos(gen_.length());
        for (auto& p : pos) p = static_cast<std::uint16_t>(gen_.below(65536));
        if (!pos.empty() && gen_.coin(0.3)) pos.push_back(pos.front());
        const std::uint64_t before = kernels::popcount_block(start, kS);
        for (BitMode mode : {BitMode::Set, BitMode::Clear, BitMode::Flip}) {
            for (bool track : {false, true}) {
                auto ws = start, wa = start;
                const auto ds = kernels::bitset_apply_array(ws, pos, mode, track, kS);
                const auto da = kernels::bitset_apply_array(wa, pos, mode, track, kA);
                const auto after = static_cast<std::int64_t>(kernels::popcount_block(ws, kS));
                const bool delta_ok =
                    !track || ds == after - static_cast<std::int64_t>(before);
                expect(ws == wa && (!track || ds == da) && delta_ok, "bitset_apply_array");
            }
        }
    }

    void array_pair(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) {
        for (SetOp op : kOps) {
            const std::string name = std::string("array_op/") + to_string(op);
            std::vector<std::uint16_t> os, oa;
            kernels::array_op(op, a, b, os, kS);
            kernels::array_op(op, a, b, oa, kA);
            const auto want = reference(op, a, b);
            expect(os == oa && os == want, name);
            expect(kernels::array_op_count(op, a, b, kS) == want.size() &&
                       kernels::array_op_count(op, a, b, kA) == want.size(),
                   name + "_count");
        }
    }

    void array_ops() {
        const bool zero_a = gen_.coin(0.25);
        const bool zero_b = gen_.coin(0.25);
        const auto a = gen_.array(gen_.length(), gen_.density(), zero_a);
        if (gen_.coin(0.1)) return array_pair(a, a);
        // overlapping ranges make the block paths do real work
        const auto b = gen_.array(gen_.length(), gen_.density(), zero_b);
        array_pair(a, b);
    }

    void blocks() {
        std::uint16_t b1[8], b2[8];
        const std::uint64_t span = gen_.coin(0.5) ? 16 : 65536;
        for (auto* blk : {b1, b2}) {
            for (int i = 0; i < 8; ++i) blk[i] = static_cast<std::uint16_t>(gen_.below(span));
            std::sort(blk, blk + 8);
        }
        const auto ms = kernels::merge_blocks(kernels::Block(b1, 8), kernels::Block(b2, 8), kS);
        const auto ma = kernels::merge_blocks(kernels::Block(b1, 8), kernels::Block(b2, 8), kA);
        std::vector<std::uint16_t> all(b1, b1 + 8);
        all.insert(all.end(), b2, b2 + 8);
        std::sort(all.begin(), all.end());
        const bool sorted = std::equal(ms.lo, ms.lo + 8, all.begin()) &&
                            std::equal(ms.hi, ms.hi + 8, all.begin() + 8);
        expect(sorted && std::equal(ms.lo, ms.lo + 8, ma.lo) && std::equal(ms.hi, ms.hi + 8, ma.hi),
               "merge_blocks");
        const std::int32_t prev = gen_.coin(0.3) ? kernels::kNoPrevious
                                                 : static_cast<std::int32_t>(all[0]);
        std::uint16_t os[16], oa[16];
        const std::size_t ns = kernels::dedup_store(prev, kernels::Block(ms.hi, 8), os, kS);
        const std::size_t na = kernels::dedup_store(prev, kernels::Block(ms.hi, 8), oa, kA);
        expect(ns == na && std::equal(os, os + ns, oa), "dedup_store");
    }

    void galloping() {
        const auto small = gen_.array(1 + gen_.below(20), gen_.density(), gen_.coin(0.25));
        const auto large = gen_.array(2000 + gen_.below(6000), 0.5 + 0.5 * gen_.density(), false);
        array_pair(small, large);
        array_pair(large, small);
        std::vector<std::uint16_t> out;
        kernels::array_intersect_galloping(small, large, out);
        expect(out == reference(SetOp::And, small, large) &&
                   kernels::array_intersect_galloping_count(small, large) == out.size(),
               "array_intersect_galloping");
    }

    Gen gen_;
    std::size_t case_ = 0;
    DifferentialResult result_;
};

}  // namespace

DifferentialResult run_differential(std::uint64_t seed, std::size_t cases) {
    Runner r(seed);
    r.run(cases);
    return r.take();
}

}  // namespace roaring::bench
