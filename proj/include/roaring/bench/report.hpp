#pragma once
// Benchmark rows, repeat-and-median timing, CSV/JSON output.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace roaring::bench {

struct Row {
    std::string dataset;
    std::string structure;
    std::string benchmark;
    std::string metric;
    double value = 0;
    std::string units;
    int runs = 1;
    double dispersion = 1.0;  // max / min over the timed runs

    bool operator==(const Row&) const = default;
};

inline constexpr const char* kCsvHeader =
    "dataset,structure,benchmark,metric,value,units,runs,dispersion";
inline constexpr int kMinRuns = 5;
inline constexpr double kDispersionFlag = 1.10;

struct Timing {
    double median_ns = 0;
    double dispersion = 1.0;
    int runs = 0;
};

// Untimed warm-up calls, then `runs` timed calls of `fn` (at least kMinRuns).
template <class Fn>
Timing time_runs(int runs, int warmup, Fn&& fn);

Timing summarize(std::vector<double> samples_ns);

void write_csv(std::ostream& out, const std::vector<Row>& rows);
void write_json(std::ostream& out, const std::vector<Row>& rows);
// Rows whose dispersion exceeds kDispersionFlag, one warning line each.
void warn_dispersion(std::ostream& err, const std::vector<Row>& rows);

// ---------------------------------------------------------------------------

template <class Fn>
Timing time_runs(int runs, int warmup, Fn&& fn) {
    if (runs < kMinRuns) runs = kMinRuns;
    for (int i = 0; i < warmup; ++i) fn();
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::nano>(stop - start).count());
    }
    return summarize(std::move(samples));
}

}  // namespace roaring::bench
