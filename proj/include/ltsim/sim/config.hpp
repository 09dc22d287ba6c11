#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltsim/etm.hpp"

namespace ltsim::sim {

struct EtmConfig {
    std::string kind = "fixed";            // fixed | csr | lrm
    std::string name;                      // CSV label; empty means same as kind
    int gamma_lc = 1;                      // defaults: 5 for csr, 1 otherwise
    std::optional<double> gamma_csr;       // csr only, off by default
    double b_percent = 5.0;                // lrm cluster size, percent of all v->c messages
    std::optional<int> dc_lrm;             // lrm: explicit selection iteration
    std::vector<DcLrmEntry> dc_lrm_table;  // lrm: per-dB schedule; empty = stock table

    std::string label() const { return name.empty() ? kind : name; }
};

struct SimConfig {
    int k = 1000;
    double rate = 0.5;
    int max_iter = 100;
    std::vector<double> ebno_points;
    int num_blocks = 200;
    std::uint64_t seed = 1;
    std::vector<EtmConfig> etms;
    std::string graph_mode = "fresh";  // fresh (new graph per block) | pinned (one shared graph)
    int workers = 1;
    bool probe_convergence = false;    // record first-stable iteration on fixed runs
    bool time_etm = true;              // off: deterministic output, etm_time_ms column reads 0
    std::vector<std::pair<int, double>> degree_pairs;  // empty = stock distribution
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const SimConfig& c);

SimConfig parse_config_json(const std::string& text);
SimConfig load_config(const std::string& path);

// Effective selection iteration for an LRM entry at one operating point.
int resolve_dc_lrm(const EtmConfig& e, double ebno_db);

}  // namespace ltsim::sim
