#include "ltsim/complexity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltsim {

OpCounts csr_cost(double n, double k, double lambda1, const std::map<int, double>& rho,
                  int dc_max) {
    if (lambda1 < 0.0 || lambda1 > 1.0)
        throw std::invalid_argument("csr_cost: lambda1 must be in [0,1]");
    double mass = 0.0;
    double avg_degree = 0.0;
    for (const auto& [d, frac] : rho) {
        if (d < 1 || d > dc_max) throw std::invalid_argument("csr_cost: rho degree out of range");
        if (frac < 0.0) throw std::invalid_argument("csr_cost: rho fraction must be >= 0");
        mass += frac;
        avg_degree += d * frac;
    }
    if (std::fabs(mass - 1.0) > 1e-6) throw std::invalid_argument("csr_cost: rho must sum to 1");

    OpCounts c;
    c.additions = n + k * (1.0 - lambda1);
    c.sign_domain_ops = n * avg_degree;
    c.compares = k;
    return c;
}

OpCounts lrm_cost(double n, double avg_degree, double b_fraction, double l_avg) {
    if (!(l_avg > 0.0)) throw std::invalid_argument("lrm_cost: l_avg must be > 0");
    const double n_msgs = n * avg_degree;       // total v->c messages
    const double n_b = b_fraction * n_msgs;     // model keeps this un-rounded

    OpCounts c;
    c.additions = n_b;
    c.sign_domain_ops = n_b;
    c.compares = n_b + 2.0 * n_msgs / l_avg;
    return c;
}

ReconcileReport reconcile(const OpCounts& measured, const OpCounts& model, double tolerance) {
    const auto row = [&](const char* name, double m, double mod) {
        ReconcileRow r;
        r.category = name;
        r.measured = m;
        r.model = mod;
        if (mod == 0.0)
            r.rel_diff = m == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        else
            r.rel_diff = std::fabs(m - mod) / std::fabs(mod);
        r.pass = r.rel_diff <= tolerance;
        return r;
    };

    ReconcileReport rep;
    rep.rows.push_back(row("additions", measured.additions, model.additions));
    rep.rows.push_back(row("sign_domain_ops", measured.sign_domain_ops, model.sign_domain_ops));
    rep.rows.push_back(row("compares", measured.compares, model.compares));
    for (const auto& r : rep.rows) rep.pass = rep.pass && r.pass;
    return rep;
}

}  // namespace ltsim
