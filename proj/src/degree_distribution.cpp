#include "ltsim/degree_distribution.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltsim {

DegreeDistribution DegreeDistribution::from_pairs(const std::vector<std::pair<int, double>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("degree distribution: empty pair list");

    std::vector<Entry> entries;
    entries.reserve(pairs.size());
    double total = 0.0;
    for (const auto& [degree, weight] : pairs) {
        if (degree < 1) throw std::invalid_argument("degree distribution: degree must be >= 1");
        if (!(weight > 0.0)) throw std::invalid_argument("degree distribution: weight must be > 0");
        entries.push_back({degree, weight});
        total += weight;
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.degree < b.degree; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].degree == entries[i - 1].degree)
            throw std::invalid_argument("degree distribution: duplicate degree");
    }
    for (auto& e : entries) e.probability /= total;
    return DegreeDistribution(std::move(entries));
}

DegreeDistribution::DegreeDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
    cdf_.reserve(entries_.size());
    double acc = 0.0;
    for (const auto& e : entries_) {
        acc += e.probability;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;  // kill the last-ulp rounding so the CDF ends exactly at 1
}

double DegreeDistribution::average_degree() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.degree * e.probability;
    return sum;
}

int DegreeDistribution::sample_degree(Rng& rng) const {
    const double u = uniform_unit(rng);  // in [0,1), so u < cdf_.back() always holds
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return entries_[static_cast<std::size_t>(it - cdf_.begin())].degree;
}

const std::vector<std::pair<int, double>>& default_degree_pairs() {
    static const std::vector<std::pair<int, double>> pairs = {
        {1, 0.008}, {2, 0.494}, {3, 0.166}, {4, 0.073}, {5, 0.083},
        {8, 0.056}, {9, 0.037}, {19, 0.056}, {65, 0.025}, {66, 0.003},
    };
    return pairs;
}

DegreeDistribution default_degree_distribution() {
    return DegreeDistribution::from_pairs(default_degree_pairs());
}

}  // namespace ltsim
