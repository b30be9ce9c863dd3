#pragma once
// Scalar-versus-accelerated comparison of every kernel on random inputs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace roaring::bench {

struct DifferentialResult {
    std::size_t cases = 0;
    bool accelerated = false;  // false: both sides ran the scalar code
    std::vector<std::string> failures;
};

// Array lengths span 0..8192 and densities 1e-3..1; a quarter of the arrays
// start with 0. Array results are also checked against std::set_* results.
DifferentialResult run_differential(std::uint64_t seed, std::size_t cases);

}  // namespace roaring::bench
