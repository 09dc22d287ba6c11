#include "ltsim/sim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "ltsim/bp_decoder.hpp"
#include "ltsim/channel.hpp"
#include "ltsim/degree_distribution.hpp"
#include "ltsim/etm.hpp"
#include "ltsim/tanner_graph.hpp"

namespace ltsim::sim {

namespace {

// stream tag for the shared graph in pinned mode, distinct from block indices
constexpr std::uint64_t kPinnedGraphStream = 0xB10C6AFFFFFFFFFFULL;

std::unique_ptr<EtmStrategy> make_strategy(const EtmConfig& e, double ebno_db,
                                           std::uint64_t pivot_seed) {
    if (e.kind == "fixed") return std::make_unique<FixedStrategy>();
    if (e.kind == "csr") {
        CsrParams p;
        p.gamma_lc = e.gamma_lc;
        p.gamma_csr = e.gamma_csr;
        return std::make_unique<CsrStrategy>(p);
    }
    LrmParams p;
    p.gamma_lc = e.gamma_lc;
    p.b_fraction = e.b_percent / 100.0;
    p.dc_lrm = resolve_dc_lrm(e, ebno_db);
    return std::make_unique<LrmStrategy>(p, pivot_seed);
}

}  // namespace

int first_stable_iteration(const std::vector<std::uint8_t>& match) {
    int last_mismatch = 0;  // 1-based iteration of the last mismatch
    for (std::size_t i = 0; i < match.size(); ++i)
        if (!match[i]) last_mismatch = static_cast<int>(i) + 1;
    if (match.empty() || last_mismatch == static_cast<int>(match.size())) return 0;
    return last_mismatch + 1;
}

std::vector<AggregateResult> run_experiment(const SimConfig& config) {
    validate_config(config);

    const auto dist = config.degree_pairs.empty()
                          ? default_degree_distribution()
                          : DegreeDistribution::from_pairs(config.degree_pairs);
    const int n = static_cast<int>(std::llround(config.k / config.rate));

    const bool pinned = config.graph_mode == "pinned";
    std::optional<TannerGraph> pinned_graph;
    if (pinned)
        pinned_graph =
            TannerGraph::build(config.k, n, dist, mix_seed(config.seed, kPinnedGraphStream));

    const std::size_t num_e = config.ebno_points.size();
    const std::size_t num_s = config.etms.size();
    std::vector<std::vector<std::vector<BlockRecord>>> records(num_e);
    for (auto& per_strategy : records) {
        per_strategy.resize(num_s);
        for (auto& blocks : per_strategy) blocks.resize(config.num_blocks);
    }

    struct Job {
        std::size_t ei, si;
        int block;
    };
    std::vector<Job> jobs;
    jobs.reserve(num_e * num_s * static_cast<std::size_t>(config.num_blocks));
    for (std::size_t ei = 0; ei < num_e; ++ei)
        for (std::size_t si = 0; si < num_s; ++si)
            for (int b = 0; b < config.num_blocks; ++b) jobs.push_back({ei, si, b});

    const auto run_job = [&](const Job& job) {
        const double ebno = config.ebno_points[job.ei];
        const auto& etm_cfg = config.etms[job.si];

        // One stream per block index: graph seed, pivot seed, data, then
        // noise, in that order, so every strategy and Eb/N0 point sees the
        // same block-b randomness.
        Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(job.block));
        const std::uint64_t graph_seed = rng();
        const std::uint64_t pivot_seed = rng();

        std::optional<TannerGraph> local;
        if (!pinned) local = TannerGraph::build(config.k, n, dist, graph_seed);
        const TannerGraph& graph = pinned ? *pinned_graph : *local;

        std::vector<std::uint8_t> data(config.k);
        for (auto& bit : data) bit = static_cast<std::uint8_t>(rng() >> 63);

        const auto params = ChannelParams::make(ebno, config.rate);
        const auto code = encode(graph, data);
        const auto y = transmit(code, params, rng);
        auto m_c = channel_llr(y, params);

        auto strategy = make_strategy(etm_cfg, ebno, pivot_seed);
        DecodeOptions opts;
        opts.time_etm = config.time_etm;
        std::vector<std::uint8_t> match;
        const bool probe = config.probe_convergence && etm_cfg.kind == "fixed";
        if (probe) {
            match.reserve(config.max_iter);
            opts.observer = [&](int, std::span<const std::uint8_t> bits) {
                match.push_back(std::equal(bits.begin(), bits.end(), data.begin()) ? 1 : 0);
            };
        }

        const auto res = decode(graph, std::move(m_c), config.max_iter, *strategy, opts);

        BlockRecord rec;
        for (int i = 0; i < config.k; ++i) rec.bit_errors += res.bits[i] != data[i];
        rec.iterations = res.iterations_used;
        rec.terminated_early = res.terminated_early;
        rec.etm_ops = res.etm_ops;
        rec.etm_time_ns = res.etm_time_ns;
        if (probe) rec.convergence_iter = first_stable_iteration(match);
        rec.edges = graph.edge_count();
        for (int v = 0; v < config.k; ++v) {
            const int dv = graph.vn_degree(v);
            rec.deg1_vns += dv == 1;
            if (dv == 0) rec.has_deg0_vn = true;
        }
        if (etm_cfg.kind == "lrm" && res.iterations_used >= resolve_dc_lrm(etm_cfg, ebno)) {
            rec.nb = static_cast<std::size_t>(
                std::ceil(etm_cfg.b_percent / 100.0 * static_cast<double>(graph.edge_count())));
        }
        records[job.ei][job.si][job.block] = rec;
    };

    const auto worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(config.workers), jobs.size());
    if (worker_count <= 1) {
        for (const auto& job : jobs) run_job(job);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex err_mutex;
        std::exception_ptr error;
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    try {
                        run_job(jobs[i]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    std::vector<AggregateResult> out;
    out.reserve(num_e * num_s);
    for (std::size_t ei = 0; ei < num_e; ++ei) {
        for (std::size_t si = 0; si < num_s; ++si) {
            const auto& etm_cfg = config.etms[si];
            AggregateResult a;
            a.ebno_db = config.ebno_points[ei];
            a.strategy = etm_cfg.label();
            a.kind = etm_cfg.kind;
            a.blocks = config.num_blocks;
            if (etm_cfg.kind == "lrm") a.dc_lrm = resolve_dc_lrm(etm_cfg, a.ebno_db);

            for (const auto& rec : records[ei][si]) {
                a.bit_errors += rec.bit_errors;
                a.total_iterations += rec.iterations;
                a.total_etm_time_ns += rec.etm_time_ns;
                a.total_etm_ops += rec.etm_ops;
                a.total_edges += static_cast<std::int64_t>(rec.edges);
                a.total_deg1_vns += rec.deg1_vns;
                a.total_nb += static_cast<std::int64_t>(rec.nb);
                if (a.dc_lrm >= 0)
                    a.total_active_lrm_iterations += std::max(0, rec.iterations - a.dc_lrm);
                if (rec.convergence_iter > 0) {
                    a.convergence_iter_sum += rec.convergence_iter;
                    ++a.converged_blocks;
                } else if (rec.convergence_iter == 0) {
                    ++a.nonconvergent_blocks;
                }
                if (rec.terminated_early) ++a.early_blocks;
                if (rec.has_deg0_vn) ++a.degree0_blocks;
            }

            const double blocks = a.blocks;
            a.ber = static_cast<double>(a.bit_errors) / (blocks * config.k);
            a.avg_iterations = static_cast<double>(a.total_iterations) / blocks;
            a.has_convergence = a.converged_blocks > 0;
            a.convergence_avg =
                a.has_convergence
                    ? static_cast<double>(a.convergence_iter_sum) / a.converged_blocks
                    : std::numeric_limits<double>::quiet_NaN();
            a.avg_etm_time_ms = static_cast<double>(a.total_etm_time_ns) / blocks / 1e6;
            a.avg_etm_ops.additions = static_cast<double>(a.total_etm_ops.additions) / blocks;
            a.avg_etm_ops.sign_domain_ops = static_cast<double>(a.total_etm_ops.sign_ops) / blocks;
            a.avg_etm_ops.compares = static_cast<double>(a.total_etm_ops.compares) / blocks;
            out.push_back(std::move(a));
        }
    }
    return out;
}

}  // namespace ltsim::sim
