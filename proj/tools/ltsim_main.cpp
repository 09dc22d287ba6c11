#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ltsim/degree_distribution.hpp"
#include "ltsim/rng.hpp"
#include "ltsim/sim/config.hpp"
#include "ltsim/sim/results.hpp"
#include "ltsim/sim/runner.hpp"
#include "ltsim/tanner_graph.hpp"

namespace {

struct SimulateArgs {
    std::string config_path;
    std::vector<double> ebno;
    std::string etm_kind;
    int blocks = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = ".";
    int workers = 0;
    bool probe = false;
    bool pinned = false;
    bool no_timing = false;
    bool gnuplot = false;
};

int run_simulate(const SimulateArgs& args) {
    auto config = ltsim::sim::load_config(args.config_path);
    if (!args.ebno.empty()) config.ebno_points = args.ebno;
    if (!args.etm_kind.empty()) {
        std::vector<ltsim::sim::EtmConfig> kept;
        for (const auto& e : config.etms)
            if (e.kind == args.etm_kind) kept.push_back(e);
        if (kept.empty()) {
            ltsim::sim::EtmConfig e;
            e.kind = args.etm_kind;
            e.gamma_lc = args.etm_kind == "csr" ? 5 : 1;
            kept.push_back(e);
        }
        config.etms = std::move(kept);
    }
    if (args.blocks > 0) config.num_blocks = args.blocks;
    if (args.seed_set) config.seed = args.seed;
    if (args.workers > 0) config.workers = args.workers;
    if (args.probe) config.probe_convergence = true;
    if (args.pinned) config.graph_mode = "pinned";
    if (args.no_timing) config.time_etm = false;
    ltsim::sim::validate_config(config);

    const auto rows = ltsim::sim::run_experiment(config);

    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    const auto csv_path = fs::path(args.out_dir) / "results.csv";
    const auto json_path = fs::path(args.out_dir) / "summary.json";
    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
        ltsim::sim::write_csv(rows, csv);
    }
    {
        std::ofstream js(json_path);
        if (!js) throw std::runtime_error("cannot write " + json_path.string());
        ltsim::sim::write_json_summary(config, rows, js);
    }
    if (args.gnuplot) {
        const auto dat_path = fs::path(args.out_dir) / "ber.dat";
        std::ofstream dat(dat_path);
        if (!dat) throw std::runtime_error("cannot write " + dat_path.string());
        ltsim::sim::write_gnuplot_ber(rows, dat);
    }

    for (const auto& a : rows) {
        std::cout << "ebno=" << a.ebno_db << " strategy=" << a.strategy << " ber=" << a.ber
                  << " avg_iter=" << a.avg_iterations;
        if (a.has_convergence) std::cout << " convergence_avg=" << a.convergence_avg;
        std::cout << " etm_ms=" << a.avg_etm_time_ms << '\n';
    }
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << '\n';
    return 0;
}

int run_dump_graph(int k, double rate, int n, std::uint64_t seed, const std::string& out) {
    if (n <= 0) n = static_cast<int>(std::llround(k / rate));
    const auto dist = ltsim::default_degree_distribution();
    const auto graph = ltsim::TannerGraph::build(k, n, dist, seed);
    if (out.empty() || out == "-") {
        ltsim::dump_graph(graph, std::cout);
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        ltsim::dump_graph(graph, os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LT-code BP decoding simulator with early-termination methods"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "run a Monte Carlo sweep");
    sim->add_option("--config", sim_args.config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--ebno", sim_args.ebno, "Eb/N0 points in dB (overrides config)");
    sim->add_option("--etm", sim_args.etm_kind, "restrict to one strategy kind")
        ->check(CLI::IsMember({"fixed", "csr", "lrm"}));
    sim->add_option("--blocks", sim_args.blocks, "blocks per point (overrides config)");
    auto* seed_opt = sim->add_option("--seed", sim_args.seed, "master seed (overrides config)");
    sim->add_option("--out", sim_args.out_dir, "output directory")->capture_default_str();
    sim->add_option("--workers", sim_args.workers, "worker threads (overrides config)");
    sim->add_flag("--probe-convergence", sim_args.probe,
                  "record first-stable iteration on fixed-strategy runs");
    sim->add_flag("--pinned-graph", sim_args.pinned, "share one graph across all blocks");
    sim->add_flag("--no-etm-timing", sim_args.no_timing,
                  "skip ETM wall-time measurement for bitwise-reproducible output");
    sim->add_flag("--gnuplot", sim_args.gnuplot, "also write a gnuplot BER table");

    int dump_k = 0;
    int dump_n = 0;
    double dump_rate = 0.5;
    std::uint64_t dump_seed = 1;
    std::string dump_out = "-";
    auto* dump = app.add_subcommand("dump-graph", "write a graph fixture");
    dump->add_option("--k", dump_k, "data packet length")->required();
    dump->add_option("--rate", dump_rate, "code rate (sets N = K/rate)")->capture_default_str();
    dump->add_option("--n", dump_n, "coded packet length (overrides --rate)");
    dump->add_option("--seed", dump_seed, "graph seed")->capture_default_str();
    dump->add_option("--out", dump_out, "output file, '-' for stdout")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            sim_args.seed_set = seed_opt->count() > 0;
            return run_simulate(sim_args);
        }
        if (dump->parsed()) return run_dump_graph(dump_k, dump_rate, dump_n, dump_seed, dump_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
