#include "ltsim/tanner_graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ltsim {

TannerGraph TannerGraph::build(int k, int n, const DegreeDistribution& dist, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("graph: k must be >= 1");
    if (n < 1) throw std::invalid_argument("graph: n must be >= 1");

    TannerGraph g;
    g.k_ = k;
    g.n_ = n;
    g.cn_offsets_.reserve(n + 1);
    g.cn_offsets_.push_back(0);

    Rng rng(seed);
    // Persistent permutation: a partial Fisher-Yates prefix is a uniform
    // without-replacement sample regardless of the array's starting order,
    // so no reset is needed between CNs.
    std::vector<std::int32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<std::int32_t> picked;
    for (int c = 0; c < n; ++c) {
        const int d = std::min(dist.sample_degree(rng), k);  // clamp for toy K
        picked.resize(d);
        for (int j = 0; j < d; ++j) {
            const std::size_t r = j + uniform_index(rng, k - j);
            std::swap(perm[j], perm[r]);
            picked[j] = perm[j];
        }
        std::sort(picked.begin(), picked.end());
        g.cn_neighbors_.insert(g.cn_neighbors_.end(), picked.begin(), picked.end());
        g.cn_offsets_.push_back(g.cn_neighbors_.size());
    }
    g.build_transpose();
    return g;
}

TannerGraph TannerGraph::from_adjacency(int k, const std::vector<std::vector<int>>& cn_lists) {
    if (k < 1) throw std::invalid_argument("graph: k must be >= 1");
    if (cn_lists.empty()) throw std::invalid_argument("graph: need at least one CN");

    TannerGraph g;
    g.k_ = k;
    g.n_ = static_cast<int>(cn_lists.size());
    g.cn_offsets_.reserve(cn_lists.size() + 1);
    g.cn_offsets_.push_back(0);
    for (const auto& list : cn_lists) {
        if (list.empty()) throw std::invalid_argument("graph: CN degree must be >= 1");
        std::vector<std::int32_t> sorted(list.begin(), list.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= k)
                throw std::invalid_argument("graph: VN index out of range");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw std::invalid_argument("graph: duplicate VN in CN list");
        }
        g.cn_neighbors_.insert(g.cn_neighbors_.end(), sorted.begin(), sorted.end());
        g.cn_offsets_.push_back(g.cn_neighbors_.size());
    }
    g.build_transpose();
    return g;
}

void TannerGraph::build_transpose() {
    edge_cn_.resize(cn_neighbors_.size());
    for (int c = 0; c < n_; ++c) {
        for (std::size_t e = cn_offsets_[c]; e < cn_offsets_[c + 1]; ++e) edge_cn_[e] = c;
    }

    std::vector<std::size_t> deg(k_, 0);
    for (const auto v : cn_neighbors_) ++deg[v];
    vn_offsets_.assign(k_ + 1, 0);
    for (int v = 0; v < k_; ++v) vn_offsets_[v + 1] = vn_offsets_[v] + deg[v];

    vn_edges_.resize(cn_neighbors_.size());
    std::vector<std::size_t> cursor(vn_offsets_.begin(), vn_offsets_.end() - 1);
    for (std::size_t e = 0; e < cn_neighbors_.size(); ++e)
        vn_edges_[cursor[cn_neighbors_[e]]++] = e;  // edge ids per VN end up ascending
}

GraphStats graph_stats(const TannerGraph& g) {
    GraphStats s;
    int deg1 = 0;
    for (int v = 0; v < g.num_vn(); ++v)
        if (g.vn_degree(v) == 1) ++deg1;
    s.lambda1 = static_cast<double>(deg1) / g.num_vn();

    std::map<int, int> counts;
    for (int c = 0; c < g.num_cn(); ++c) ++counts[g.cn_degree(c)];
    for (const auto& [d, cnt] : counts) {
        s.rho[d] = static_cast<double>(cnt) / g.num_cn();
        s.dc_max = std::max(s.dc_max, d);
    }
    s.avg_cn_degree = static_cast<double>(g.edge_count()) / g.num_cn();
    return s;
}

std::vector<std::uint8_t> encode(const TannerGraph& g, std::span<const std::uint8_t> data) {
    if (data.size() != static_cast<std::size_t>(g.num_vn()))
        throw std::invalid_argument("encode: data length != K");
    std::vector<std::uint8_t> code(g.num_cn());
    for (int c = 0; c < g.num_cn(); ++c) {
        std::uint8_t bit = 0;
        for (const auto v : g.cn_neighbors(c)) bit ^= data[v];
        code[c] = bit;
    }
    return code;
}

void dump_graph(const TannerGraph& g, std::ostream& os) {
    os << g.num_vn() << ' ' << g.num_cn() << ' ' << g.edge_count() << '\n';
    for (int c = 0; c < g.num_cn(); ++c) {
        const auto nbrs = g.cn_neighbors(c);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (i) os << ' ';
            os << nbrs[i];
        }
        os << '\n';
    }
}

}  // namespace ltsim
