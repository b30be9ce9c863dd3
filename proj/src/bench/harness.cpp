#include "roaring/bench/harness.hpp"

#include <algorithm>
#include <sstream>

#include "roaring/serde.hpp"

namespace roaring::bench {
namespace {

constexpr SetOp kOps[] = {SetOp::And, SetOp::Or, SetOp::AndNot, SetOp::Xor};

// Keeps computed results observable so timed loops are not optimized away.
volatile std::uint64_t g_sink = 0;

struct Built {
    std::vector<RoaringBitmap> roaring;
    std::vector<BaselineBitset> bitsets;
    std::vector<BaselineSortedArray> arrays;
    std::vector<BaselineHashSet> hashes;
};

Built build(const Dataset& d, const std::vector<Structure>& structures) {
    Built b;
    const std::uint64_t universe = d.universe();
    for (Structure s : structures) {
        for (const auto& set : d.sets) {
            switch (s) {
                case Structure::Roaring: b.roaring.push_back(build_roaring(set)); break;
                case Structure::Bitset:
                    b.bitsets.push_back(BaselineBitset::from_sorted(set, universe));
                    break;
                case Structure::SortedArray: b.arrays.push_back({set}); break;
                case Structure::HashSet:
                    b.hashes.push_back({{set.begin(), set.end()}});
                    break;
            }
        }
    }
    return b;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw CorrectnessError(what);
}

std::string describe(Structure s, const std::string& what, std::size_t i) {
    return std::string(to_string(s)) + ": " + what + " (set " + std::to_string(i) + ")";
}

Row timing_row(const Dataset& d, Structure s, const char* benchmark, const std::string& metric,
               const Timing& t, double per, const char* units) {
    return {d.name, to_string(s), benchmark, metric, t.median_ns / per, units, t.runs,
            t.dispersion};
}

void require_sets(const Dataset& d, std::size_t minimum) {
    if (d.sets.size() < minimum) {
        throw std::invalid_argument("dataset needs at least " + std::to_string(minimum) +
                                    " sets");
    }
    const std::string problem = check_dataset(d);
    if (!problem.empty()) throw std::invalid_argument(problem);
}

// Sequential fold, each step checked by the caller.
template <class T, class Fold>
T fold_union(const std::vector<T>& sets, Fold fold) {
    T acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) fold(acc, sets[i]);
    return acc;
}

}  // namespace

const char* to_string(Structure s) noexcept {
    switch (s) {
        case Structure::Roaring: return "roaring";
        case Structure::Bitset: return "bitset";
        case Structure::SortedArray: return "array";
        case Structure::HashSet: return "hashset";
    }
    return "?";
}

std::vector<Structure> all_structures() {
    return {Structure::Roaring, Structure::Bitset, Structure::SortedArray, Structure::HashSet};
}

std::vector<Structure> parse_structures(const std::string& list) {
    std::vector<Structure> out;
    std::stringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        bool found = false;
        for (Structure s : all_structures()) {
            if (name == to_string(s)) {
                if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
                found = true;
            }
        }
        if (!found) throw std::invalid_argument("unknown structure '" + name + "'");
    }
    if (out.empty()) throw std::invalid_argument("no structures given");
    return out;
}

RoaringBitmap build_roaring(std::span<const std::uint32_t> values) {
    RoaringBitmap rb = RoaringBitmap::from_sorted(values);
    rb.run_optimize();
    rb.shrink_to_fit();
    return rb;
}

std::array<std::uint32_t, 3> membership_probes(std::uint64_t universe) noexcept {
    return {static_cast<std::uint32_t>(universe / 4), static_cast<std::uint32_t>(universe / 2),
            static_cast<std::uint32_t>(3 * universe / 4)};
}

std::vector<Row> bench_memory(const Dataset& d, const Options& o) {
    require_sets(d, 1);
    const double values = static_cast<double>(d.total_values());
    const std::uint64_t universe = d.universe();
    std::vector<Row> rows;
    auto add = [&](Structure s, const char* metric, std::uint64_t bytes) {
        rows.push_back({d.name, to_string(s), "memory", metric,
                        8.0 * static_cast<double>(bytes) / values, "bits/value", 1, 1.0});
    };
    for (Structure s : o.structures) {
        std::uint64_t bytes = 0;
        std::uint64_t serialized = 0;
        for (const auto& set : d.sets) {
            switch (s) {
                case Structure::Roaring: {
                    const MemoryUsage m = build_roaring(set).memory_bytes();
                    bytes += m.in_memory;
                    serialized += m.serialized;
                    break;
                }
                case Structure::Bitset: bytes += 8 * ((universe + 63) / 64); break;
                case Structure::SortedArray: bytes += 4 * set.size(); break;
                case Structure::HashSet: bytes += hash_set_bytes(set); break;
            }
        }
        add(s, "bits_per_value", bytes);
        if (s == Structure::Roaring) add(s, "serialized_bits_per_value", serialized);
    }
    return rows;
}

std::vector<Row> bench_membership(const Dataset& d, const Options& o) {
    require_sets(d, 1);
    const auto probes = membership_probes(d.universe());
    const Built b = build(d, o.structures);
    std::vector<std::array<bool, 3>> expected;
    for (const auto& set : d.sets) {
        std::array<bool, 3> e{};
        for (std::size_t k = 0; k < 3; ++k) {
            e[k] = std::binary_search(set.begin(), set.end(), probes[k]);
        }
        expected.push_back(e);
    }
    const double queries = 3.0 * static_cast<double>(d.sets.size());
    std::vector<Row> rows;
    auto run = [&](Structure s, const auto& sets) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t k = 0; k < 3; ++k) {
                require(sets[i].contains(probes[k]) == expected[i][k],
                        describe(s, "membership disagrees on " + std::to_string(probes[k]), i));
            }
        }
        const Timing t = time_runs(o.runs, o.warmup, [&] {
            std::uint64_t hits = 0;
            for (const auto& set : sets) {
                for (std::uint32_t p : probes) hits += set.contains(p) ? 1 : 0;
            }
            g_sink = g_sink + hits;
        });
        rows.push_back(timing_row(d, s, "membership", "contains", t, queries, "ns/query"));
    };
    for (Structure s : o.structures) {
        switch (s) {
            case Structure::Roaring: run(s, b.roaring); break;
            case Structure::Bitset: run(s, b.bitsets); break;
            case Structure::SortedArray: run(s, b.arrays); break;
            case Structure::HashSet: run(s, b.hashes); break;
        }
    }
    return rows;
}

std::vector<Row> bench_iterate(const Dataset& d, const Options& o) {
    require_sets(d, 1);
    const Built b = build(d, o.structures);
    const std::uint64_t total = d.total_values();
    std::vector<Row> rows;
    std::uint64_t mix = 0;
    auto run = [&](Structure s, auto&& count_all) {
        require(count_all() == total, describe(s, "iteration count differs from cardinality", 0));
        const Timing t = time_runs(o.runs, o.warmup, [&] { g_sink = g_sink + count_all() + mix; });
        rows.push_back(timing_row(d, s, "iterate", "count", t, static_cast<double>(total),
                                  "ns/value"));
    };
    for (Structure s : o.structures) {
        switch (s) {
            case Structure::Roaring:
                for (std::size_t i = 0; i < d.sets.size(); ++i) {
                    require(b.roaring[i].to_vector() == d.sets[i],
                            describe(s, "iteration order differs from the sorted set", i));
                }
                run(s, [&] {
                    std::uint64_t n = 0;
                    for (const auto& rb : b.roaring) {
                        rb.for_each([&](std::uint32_t v) {
                            mix ^= v;
                            ++n;
                            return true;
                        });
                    }
                    return n;
                });
                break;
            case Structure::Bitset:
                run(s, [&] {
                    std::uint64_t n = 0;
                    for (const auto& bs : b.bitsets) {
                        bs.for_each([&](std::uint32_t v) {
                            mix ^= v;
                            ++n;
                            return true;
                        });
                    }
                    return n;
                });
                break;
            case Structure::SortedArray:
                run(s, [&] {
                    std::uint64_t n = 0;
                    for (const auto& a : b.arrays) {
                        for (std::uint32_t v : a.values) {
                            mix ^= v;
                            ++n;
                        }
                    }
                    return n;
                });
                break;
            case Structure::HashSet:
                run(s, [&] {
                    std::uint64_t n = 0;
                    for (const auto& h : b.hashes) {
                        for (std::uint32_t v : h.values) {
                            mix ^= v;
                            ++n;
                        }
                    }
                    return n;
                });
                break;
        }
    }
    return rows;
}

std::vector<Row> bench_pairwise(const Dataset& d, SetOp set_op, bool count_only,
                                const Options& o) {
    require_sets(d, 2);
    const Built b = build(d, o.structures);
    const std::size_t pairs = d.sets.size() - 1;
    std::vector<std::uint64_t> expected(pairs);
    double inputs = 0;
    for (std::size_t i = 1; i <= pairs; ++i) {
        expected[i - 1] = oracle_cardinality(set_op, d.sets[i - 1], d.sets[i]);
        inputs += static_cast<double>(d.sets[i - 1].size() + d.sets[i].size());
    }
    const std::string metric = std::string(to_string(set_op)) + (count_only ? "_count" : "");
    std::vector<Row> rows;
    auto run = [&](Structure s, const auto& sets) {
        auto one = [&](std::size_t i) -> std::uint64_t {
            if (count_only) return op_cardinality(set_op, sets[i - 1], sets[i]);
            return op(set_op, sets[i - 1], sets[i]).cardinality();
        };
        for (std::size_t i = 1; i <= pairs; ++i) {
            require(one(i) == expected[i - 1],
                    describe(s, metric + " cardinality differs from the oracle", i));
        }
        const Timing t = time_runs(o.runs, o.warmup, [&] {
            std::uint64_t acc = 0;
            for (std::size_t i = 1; i <= pairs; ++i) acc += one(i);
            g_sink = g_sink + acc;
        });
        rows.push_back(timing_row(d, s, "pairwise", metric, t, inputs, "ns/value"));
    };
    for (Structure s : o.structures) {
        switch (s) {
            case Structure::Roaring: run(s, b.roaring); break;
            case Structure::Bitset: run(s, b.bitsets); break;
            case Structure::SortedArray: run(s, b.arrays); break;
            case Structure::HashSet: run(s, b.hashes); break;
        }
    }
    return rows;
}

std::vector<Row> bench_wide_union(const Dataset& d, const Options& o) {
    require_sets(d, 1);
    const Built b = build(d, o.structures);
    std::vector<std::uint32_t> oracle = d.sets.front();
    for (std::size_t i = 1; i < d.sets.size(); ++i) {
        oracle = oracle_pairwise(SetOp::Or, oracle, d.sets[i]);
    }
    const std::uint64_t expected = oracle.size();
    const double inputs = static_cast<double>(d.total_values());
    std::vector<Row> rows;
    auto run = [&](Structure s, auto&& union_all) {
        require(union_all() == expected, describe(s, "union cardinality differs from the oracle", 0));
        const Timing t = time_runs(o.runs, o.warmup, [&] { g_sink = g_sink + union_all(); });
        rows.push_back(timing_row(d, s, "wideunion", "union", t, inputs, "ns/value"));
    };
    for (Structure s : o.structures) {
        switch (s) {
            case Structure::Roaring:
                run(s, [&] { return or_many(std::span<const RoaringBitmap>(b.roaring)).cardinality(); });
                break;
            case Structure::Bitset:
                run(s, [&] {
                    return fold_union(b.bitsets, [](BaselineBitset& acc, const BaselineBitset& x) {
                               for (std::size_t w = 0; w < acc.words.size(); ++w) {
                                   acc.words[w] |= x.words[w];
                               }
                           }).cardinality();
                });
                break;
            case Structure::SortedArray:
                run(s, [&] {
                    return fold_union(b.arrays, [](BaselineSortedArray& acc,
                                                   const BaselineSortedArray& x) {
                               acc = op(SetOp::Or, acc, x);
                           }).cardinality();
                });
                break;
            case Structure::HashSet:
                run(s, [&] {
                    return fold_union(b.hashes, [](BaselineHashSet& acc, const BaselineHashSet& x) {
                               acc.values.insert(x.values.begin(), x.values.end());
                           }).cardinality();
                });
                break;
        }
    }
    return rows;
}

std::vector<std::string> validate(const Dataset& d) {
    std::vector<std::string> failures;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok && failures.size() < 50) failures.push_back(what);
    };
    const std::string problem = check_dataset(d);
    if (!problem.empty()) return {problem};
    if (d.sets.empty()) return {"dataset has no sets"};

    const std::uint64_t universe = d.universe();
    std::vector<RoaringBitmap> plain;
    std::vector<RoaringBitmap> optimized;
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& set = d.sets[i];
        const std::string at = " (set " + std::to_string(i) + ")";
        plain.push_back(RoaringBitmap::from_sorted(set));
        optimized.push_back(build_roaring(set));
        for (const RoaringBitmap* rb : {&plain.back(), &optimized.back()}) {
            const std::string v = rb->validate();
            check(v.empty(), "invariant: " + v + at);
            check(rb->to_vector() == set, "contents differ from input" + at);
            check(rb->cardinality() == set.size(), "cardinality differs from input" + at);
            const auto image = serialize(*rb);
            check(image.size() == rb->memory_bytes().serialized,
                  "serialized length differs from memory_bytes" + at);
            try {
                const RoaringBitmap back = deserialize(image);
                check(back.to_vector() == set, "round trip changed contents" + at);
                check(serialize(back) == image, "reserialization not byte-exact" + at);
            } catch (const DecodeError& e) {
                check(false, std::string("decode failed: ") + e.what() + at);
            }
        }
        const BaselineBitset bs = BaselineBitset::from_sorted(set, universe);
        check(bs.to_vector() == set, "bitset baseline contents differ" + at);
        for (std::uint32_t p : membership_probes(universe)) {
            const bool want = std::binary_search(set.begin(), set.end(), p);
            const BaselineHashSet hs{{set.begin(), set.end()}};
            check(optimized[i].contains(p) == want && bs.contains(p) == want &&
                      hs.contains(p) == want,
                  "membership disagreement on " + std::to_string(p) + at);
        }
    }

    for (std::size_t i = 1; i < d.sets.size(); ++i) {
        const auto& a = d.sets[i - 1];
        const auto& b = d.sets[i];
        const BaselineBitset ba = BaselineBitset::from_sorted(a, universe);
        const BaselineBitset bb = BaselineBitset::from_sorted(b, universe);
        const BaselineHashSet ha{{a.begin(), a.end()}};
        const BaselineHashSet hb{{b.begin(), b.end()}};
        for (SetOp o : kOps) {
            const std::string at =
                std::string(" (") + to_string(o) + ", pair " + std::to_string(i) + ")";
            const auto want = oracle_pairwise(o, a, b);
            for (const auto* pair : {&plain, &optimized}) {
                const RoaringBitmap& ra = (*pair)[i - 1];
                const RoaringBitmap& rb = (*pair)[i];
                const RoaringBitmap before_a = ra;
                const RoaringBitmap r = op(o, ra, rb);
                check(r.validate().empty(), "result invariant: " + r.validate() + at);
                check(r.to_vector() == want, "roaring result differs from oracle" + at);
                check(op_cardinality(o, ra, rb) == want.size(),
                      "roaring count-only differs from oracle" + at);
                check(ra == before_a, "input mutated" + at);
            }
            check(op(o, ba, bb).to_vector() == want, "bitset result differs from oracle" + at);
            check(op_cardinality(o, ba, bb) == want.size(), "bitset count differs" + at);
            check(op(o, ha, hb).cardinality() == want.size(), "hashset result size differs" + at);
            check(op_cardinality(o, ha, hb) == want.size(), "hashset count differs" + at);
        }
    }

    std::vector<std::uint32_t> oracle = d.sets.front();
    for (std::size_t i = 1; i < d.sets.size(); ++i) {
        oracle = oracle_pairwise(SetOp::Or, oracle, d.sets[i]);
    }
    const RoaringBitmap wide = or_many(std::span<const RoaringBitmap>(optimized));
    check(wide.validate().empty(), "or_many invariant: " + wide.validate());
    check(wide.to_vector() == oracle, "or_many differs from the folded oracle");
    return failures;
}

}  // namespace roaring::bench
