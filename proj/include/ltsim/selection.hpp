#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ltsim {

struct SelectionReport {
    std::vector<std::size_t> indices;   // the k selected positions, ascending
    std::int64_t comparisons = 0;       // element-key comparisons performed
};

/**
 * Indices of the k smallest elements by |value|, ties broken toward the
 * lower index, found by quickselect in expected linear time.  The pivot rule
 * is median-of-three with a seeded random fallback on pathological inputs,
 * so a fixed pivot_seed gives a reproducible comparison count.  Selection
 * returns indices, not values, because callers track per-edge state.
 */
SelectionReport quickselect_k_smallest(std::span<const double> values, std::size_t k,
                                       std::uint64_t pivot_seed = 0);

}  // namespace ltsim
