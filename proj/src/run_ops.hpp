#pragma once
// Interval walks used whenever a run container takes part in an operation.

#include <span>
#include <vector>

#include "roaring/container.hpp"

namespace roaring::detail {

std::vector<Run> to_runs(const Container& c);

std::uint32_t run_cardinality(std::span<const Run> runs) noexcept;

// Run list for `op` over two run lists; adjacent output intervals are merged.
std::vector<Run> runs_op(SetOp op, std::span<const Run> a, std::span<const Run> b);
std::uint32_t runs_op_cardinality(SetOp op, std::span<const Run> a, std::span<const Run> b) noexcept;

void set_range(std::span<std::uint64_t> words, std::uint32_t first, std::uint32_t last) noexcept;

std::size_t count_runs(std::span<const std::uint64_t> words) noexcept;
std::size_t count_runs(std::span<const std::uint16_t> sorted) noexcept;

}  // namespace roaring::detail
