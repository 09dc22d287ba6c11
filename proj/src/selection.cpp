#include "ltsim/selection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ltsim/rng.hpp"

namespace ltsim {

namespace {

// Selection key: (|value|, index), absolute value first, lower index on
// ties, so all keys are distinct and a two-way partition cannot degenerate.
// For finite values the IEEE bit pattern of |v| orders exactly like |v|
// itself, so the pair packs into one 128-bit integer ((mag bits << 64) |
// index) and the whole key comparison is a single branch-free integer
// compare.
using Key = unsigned __int128;

inline Key make_key(double value, std::size_t idx) {
    return (static_cast<Key>(std::bit_cast<std::uint64_t>(std::fabs(value))) << 64) |
           static_cast<Key>(idx);
}

inline std::size_t key_index(Key k) { return static_cast<std::size_t>(k & ~std::uint64_t{0}); }

}  // namespace

SelectionReport quickselect_k_smallest(std::span<const double> values, std::size_t k,
                                       std::uint64_t pivot_seed) {
    const std::size_t n = values.size();
    if (k < 1 || k > n) throw std::invalid_argument("selection: k out of range");

    SelectionReport report;
    if (k == n) {  // full selection, nothing to compare
        report.indices.resize(n);
        std::iota(report.indices.begin(), report.indices.end(), std::size_t{0});
        return report;
    }

    // Scratch reused across calls to avoid two large allocations per
    // selection; every slot consumed below is rewritten first, so reuse
    // cannot leak state between calls.
    static thread_local std::vector<Key> buf_a, buf_b;
    buf_a.resize(n);
    buf_b.resize(n);
    Key* src = buf_a.data();
    Key* dst = buf_b.data();
    for (std::size_t i = 0; i < n; ++i) src[i] = make_key(values[i], i);

    std::int64_t comparisons = 0;
    const auto less = [&comparisons](Key a, Key b) {
        ++comparisons;
        return a < b;
    };

    // Median-of-three keeps the comparison count near the linear reference on
    // typical inputs; after suspiciously many rounds switch to seeded random
    // pivots to dodge adversarial layouts.
    const int med3_budget = 2 * (std::bit_width(n) + 8);
    Rng fallback(mix_seed(pivot_seed, 0x5e1ec7ULL));
    int rounds = 0;

    report.indices.reserve(k);
    std::size_t lo = 0, hi = n;
    std::size_t remaining = k;  // members still to emit from [lo, hi)
    while (true) {
        if (hi - lo == 1) {
            report.indices.push_back(key_index(src[lo]));
            break;
        }

        std::size_t p = lo;
        if (hi - lo >= 3) {
            if (rounds < med3_budget) {
                const std::size_t a = lo, b = lo + (hi - lo) / 2, c = hi - 1;
                if (less(src[a], src[b]))
                    p = less(src[b], src[c]) ? b : (less(src[a], src[c]) ? c : a);
                else
                    p = less(src[a], src[c]) ? a : (less(src[b], src[c]) ? c : b);
            } else {
                p = lo + uniform_index(fallback, hi - lo);
            }
        }
        ++rounds;

        const Key pivot = src[p];
        src[p] = src[hi - 1];  // exclude the pivot from the scan
        // Stream the window into the other buffer from both ends: smaller
        // keys grow from the left cursor, larger ones shrink the right one.
        std::size_t a = lo, b = hi - 1;
        for (std::size_t i = lo; i + 1 < hi; ++i) {
            const Key x = src[i];
            const bool lt = less(x, pivot);
            dst[a] = x;
            dst[b] = x;
            a += lt;
            b -= !lt;
        }
        dst[a] = pivot;
        const std::size_t store = a;
        std::swap(src, dst);

        if (remaining == store - lo || remaining == store - lo + 1) {
            for (std::size_t i = lo; i < lo + remaining; ++i)
                report.indices.push_back(key_index(src[i]));
            break;
        }
        if (remaining < store - lo) {
            hi = store;
        } else {  // everything through the pivot is in the answer
            for (std::size_t i = lo; i <= store; ++i)
                report.indices.push_back(key_index(src[i]));
            remaining -= store - lo + 1;
            lo = store + 1;
        }
    }

    report.comparisons = comparisons;
    std::sort(report.indices.begin(), report.indices.end());  // bookkeeping order, not counted
    return report;
}

}  // namespace ltsim
