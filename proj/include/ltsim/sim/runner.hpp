#pragma once

#include <cstdint>
#include <vector>

#include "ltsim/complexity.hpp"
#include "ltsim/sim/config.hpp"

namespace ltsim::sim {

struct BlockRecord {
    std::int64_t bit_errors = 0;
    int iterations = 0;
    bool terminated_early = false;
    OpCounters etm_ops;
    std::int64_t etm_time_ns = 0;
    int convergence_iter = -1;  // -1 not probed, 0 never converged, else 1-based iteration
    std::size_t edges = 0;
    int deg1_vns = 0;
    bool has_deg0_vn = false;   // such VNs decode from zero LLRs alone
    std::size_t nb = 0;         // realized LRM cluster size, 0 if never selected
};

struct AggregateResult {
    double ebno_db = 0.0;
    std::string strategy;
    std::string kind;
    int blocks = 0;

    // integer ground truth; everything derived comes from these, which keeps
    // aggregates identical under any block order or worker count
    std::int64_t bit_errors = 0;
    std::int64_t total_iterations = 0;
    std::int64_t total_etm_time_ns = 0;
    OpCounters total_etm_ops;
    std::int64_t total_edges = 0;
    std::int64_t total_deg1_vns = 0;
    std::int64_t total_active_lrm_iterations = 0;  // iterations past dc_lrm (lrm only)
    std::int64_t total_nb = 0;                     // summed realized cluster sizes (lrm only)
    std::int64_t convergence_iter_sum = 0;         // over converged probed blocks
    int converged_blocks = 0;
    int nonconvergent_blocks = 0;
    int early_blocks = 0;
    int degree0_blocks = 0;
    int dc_lrm = -1;  // effective selection iteration (lrm only)

    // derived
    double ber = 0.0;
    double avg_iterations = 0.0;
    bool has_convergence = false;
    double convergence_avg = 0.0;  // NaN unless has_convergence
    double avg_etm_time_ms = 0.0;
    OpCounts avg_etm_ops;          // per block
};

// Runs the full (ebno x strategy x block) sweep.  Every block draws its data,
// noise, graph seed and pivot seed from a stream derived only from
// (config.seed, block index), so all strategies and Eb/N0 points see paired
// channels and results don't depend on scheduling.
std::vector<AggregateResult> run_experiment(const SimConfig& config);

// Smallest 1-based iteration whose decisions match the data and keep
// matching through the last pass; 0 when there is none.  match[i] is the
// comparison outcome after pass i+1.
int first_stable_iteration(const std::vector<std::uint8_t>& match);

}  // namespace ltsim::sim
