#pragma once

#include <map>
#include <string>
#include <vector>

namespace ltsim {

// Analytic per-iteration operation counts, one bucket per cost category.
// abs/sign/XOR are pooled since they are assumed equally cheap.
struct OpCounts {
    double additions = 0.0;
    double sign_domain_ops = 0.0;
    double compares = 0.0;

    double total() const { return additions + sign_domain_ops + compares; }
};

// CSR check per iteration on a graph of N CNs / K VNs with VN degree-1
// fraction lambda1 and CN degree spectrum rho: additions N + K(1 - lambda1)
// (satisfied-count accumulation plus the two-term decision sums), sign ops
// N * sum_d d*rho_d (re-encode XORs, one per edge), compares K (decision
// thresholds).
OpCounts csr_cost(double n, double k, double lambda1, const std::map<int, double>& rho,
                  int dc_max);

// LRM check per iteration: the tracked cluster has N_B = b_fraction * N *
// avg_degree members (kept un-rounded in the model), each costing one add,
// one sign op and one compare; selection adds ~2 * (N * avg_degree)
// comparisons once per block, amortized over l_avg iterations.
OpCounts lrm_cost(double n, double avg_degree, double b_fraction, double l_avg);

struct ReconcileRow {
    std::string category;
    double measured = 0.0;
    double model = 0.0;
    double rel_diff = 0.0;
    bool pass = true;
};

struct ReconcileReport {
    std::vector<ReconcileRow> rows;
    bool pass = true;
};

// Relative difference per category between measured per-iteration counters
// and the analytic model; a category passes when |measured - model| <=
// tolerance * |model|.
ReconcileReport reconcile(const OpCounts& measured, const OpCounts& model, double tolerance);

}  // namespace ltsim
