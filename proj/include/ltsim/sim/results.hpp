#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltsim/sim/config.hpp"
#include "ltsim/sim/runner.hpp"

namespace ltsim::sim {

inline constexpr const char* kCsvHeader =
    "ebno_db,strategy,blocks,ber,avg_iterations,convergence_avg,etm_time_ms,"
    "etm_add,etm_signops,etm_compares";

// Shortest round-trip representation ("nan" for NaN).
std::string format_double(double v);

void write_csv(const std::vector<AggregateResult>& rows, std::ostream& os);
std::string csv_string(const std::vector<AggregateResult>& rows);

struct CsvRow {
    double ebno_db = 0.0;
    std::string strategy;
    long blocks = 0;
    double ber = 0.0;
    double avg_iterations = 0.0;
    double convergence_avg = 0.0;
    double etm_time_ms = 0.0;
    double etm_add = 0.0;
    double etm_signops = 0.0;
    double etm_compares = 0.0;
};

// Inverse of write_csv, for round-trip checks and downstream tooling.
std::vector<CsvRow> parse_csv(std::istream& is);

// Full machine-readable summary: config echo, per-row aggregates, and for
// csr/lrm rows the measured-vs-analytic operation reconciliation.
void write_json_summary(const SimConfig& config, const std::vector<AggregateResult>& rows,
                        std::ostream& os);

// gnuplot-friendly BER table: one "ebno ber" block per strategy, blank-line
// separated, with strategy names in comments.
void write_gnuplot_ber(const std::vector<AggregateResult>& rows, std::ostream& os);

}  // namespace ltsim::sim
