#pragma once

#include <utility>
#include <vector>

#include "ltsim/rng.hpp"

namespace ltsim {

/**
 * Output-symbol degree distribution.  Weights are renormalized to unit mass
 * at construction (the stock coefficient set below sums to 1.001 raw) and
 * sampling is inverse-CDF on a single uniform draw.
 */
class DegreeDistribution {
public:
    struct Entry {
        int degree;
        double probability;  // renormalized mass
    };

    static DegreeDistribution from_pairs(const std::vector<std::pair<int, double>>& pairs);

    const std::vector<Entry>& entries() const { return entries_; }
    int max_degree() const { return entries_.back().degree; }

    double average_degree() const;

    int sample_degree(Rng& rng) const;

private:
    explicit DegreeDistribution(std::vector<Entry> entries);

    std::vector<Entry> entries_;   // sorted by degree
    std::vector<double> cdf_;      // same order, last element forced to 1.0
};

// Stock degree/weight table used by default throughout the toolkit.
const std::vector<std::pair<int, double>>& default_degree_pairs();
DegreeDistribution default_degree_distribution();

}  // namespace ltsim
