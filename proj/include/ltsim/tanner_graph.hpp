#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "ltsim/degree_distribution.hpp"
#include "ltsim/rng.hpp"

namespace ltsim {

/**
 * Fixed-rate LT Tanner graph: one check node (CN) per coded symbol, one
 * variable node (VN) per data symbol.  Edges are numbered CN-major -- the
 * edges of CN c are the contiguous range [cn_offset(c), cn_offset(c+1)), in
 * ascending VN order -- and that numbering is shared by both message
 * directions, so per-edge state stays valid across iterations.
 */
class TannerGraph {
public:
    // Samples a degree for every CN from dist (clamped to K) and picks that
    // many distinct VNs uniformly.  Pure function of (k, n, dist, seed).
    static TannerGraph build(int k, int n, const DegreeDistribution& dist, std::uint64_t seed);

    // Explicit adjacency, mainly for fixtures: one VN index list per CN.
    static TannerGraph from_adjacency(int k, const std::vector<std::vector<int>>& cn_lists);

    int num_vn() const { return k_; }
    int num_cn() const { return n_; }
    std::size_t edge_count() const { return cn_neighbors_.size(); }

    int cn_degree(int c) const { return static_cast<int>(cn_offsets_[c + 1] - cn_offsets_[c]); }
    std::size_t cn_offset(int c) const { return cn_offsets_[c]; }
    std::span<const std::int32_t> cn_neighbors(int c) const {
        return {cn_neighbors_.data() + cn_offsets_[c], cn_offsets_[c + 1] - cn_offsets_[c]};
    }

    int vn_degree(int v) const { return static_cast<int>(vn_offsets_[v + 1] - vn_offsets_[v]); }
    std::span<const std::size_t> vn_edges(int v) const {
        return {vn_edges_.data() + vn_offsets_[v], vn_offsets_[v + 1] - vn_offsets_[v]};
    }

    int edge_vn(std::size_t e) const { return cn_neighbors_[e]; }
    int edge_cn(std::size_t e) const { return edge_cn_[e]; }

    // Position of edge e inside its CN's neighbor list.
    int edge_pos(std::size_t e) const { return static_cast<int>(e - cn_offsets_[edge_cn_[e]]); }

    bool operator==(const TannerGraph& other) const = default;

private:
    TannerGraph() = default;
    void build_transpose();

    int k_ = 0;
    int n_ = 0;
    std::vector<std::size_t> cn_offsets_;       // n_+1 entries
    std::vector<std::int32_t> cn_neighbors_;    // VN endpoint per edge, CN-major
    std::vector<std::int32_t> edge_cn_;         // CN endpoint per edge
    std::vector<std::size_t> vn_offsets_;       // k_+1 entries
    std::vector<std::size_t> vn_edges_;         // incident edge ids per VN, ascending
};

struct GraphStats {
    double lambda1 = 0.0;           // fraction of VNs of degree 1
    std::map<int, double> rho;      // CN degree -> fraction of CNs
    int dc_max = 0;
    double avg_cn_degree = 0.0;
};

GraphStats graph_stats(const TannerGraph& g);

// Coded bit c = XOR of the data bits on c's neighbor list.
std::vector<std::uint8_t> encode(const TannerGraph& g, std::span<const std::uint8_t> data);

// Fixture dump: "K N edge_count" header, then one line per CN with its
// neighbor indices, space-separated.
void dump_graph(const TannerGraph& g, std::ostream& os);

}  // namespace ltsim
