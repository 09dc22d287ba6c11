#include "ltsim/etm.hpp"

#include <cmath>
#include <stdexcept>

#include "ltsim/selection.hpp"

namespace ltsim {

namespace {

void check_gamma_lc(int gamma_lc) {
    if (gamma_lc < 1) throw std::invalid_argument("etm: gamma_lc must be >= 1");
}

}  // namespace

// ---- CSR ----

CsrStrategy::CsrStrategy(CsrParams params) : params_(params) {
    check_gamma_lc(params_.gamma_lc);
    if (params_.gamma_csr && (!(*params_.gamma_csr > 0.0) || *params_.gamma_csr > 1.0))
        throw std::invalid_argument("etm: gamma_csr must be in (0,1]");
}

void CsrStrategy::begin(const TannerGraph& g, const MessageStore& store) {
    ops_ = {};
    state_ = {};
    // Channel hard decisions don't change across iterations, so they are
    // decided once here and not charged to the per-iteration counters.
    m_c_hard_.resize(g.num_cn());
    for (int c = 0; c < g.num_cn(); ++c) m_c_hard_[c] = store.m_c[c] >= 0.0 ? 1 : 0;
    bits_.assign(g.num_vn(), 0);
}

bool CsrStrategy::step(int, const MessageStore& store, const TannerGraph& g) {
    // Per-iteration decision in the two-term form m_v = m_{c->v} + m_{v->c}
    // on the VN's first edge: one addition for VNs of degree >= 2, none for
    // degree 1 (the v->c term is an empty sum), one threshold per VN.
    for (int v = 0; v < g.num_vn(); ++v) {
        const auto edges = g.vn_edges(v);
        double m = 0.0;
        if (edges.size() == 1) {
            m = store.c2v[edges[0]];
        } else if (!edges.empty()) {
            m = store.c2v[edges[0]] + store.v2c[edges[0]];
            ++ops_.additions;
        }
        bits_[v] = m >= 0.0 ? 1 : 0;
        ++ops_.compares;
    }

    auto r = csr_step(state_, bits_, m_c_hard_, g, params_, &ops_);
    state_ = r.state;
    return r.terminate;
}

CsrStepResult csr_step(const CsrState& state, std::span<const std::uint8_t> bits,
                       std::span<const std::uint8_t> m_c_hard, const TannerGraph& g,
                       const CsrParams& params, OpCounters* ops) {
    check_gamma_lc(params.gamma_lc);
    if (bits.size() != static_cast<std::size_t>(g.num_vn()) ||
        m_c_hard.size() != static_cast<std::size_t>(g.num_cn()))
        throw std::invalid_argument("csr_step: vector length mismatch");

    int satisfied = 0;
    for (int c = 0; c < g.num_cn(); ++c) {
        std::uint8_t parity = m_c_hard[c];
        for (const auto v : g.cn_neighbors(c)) parity ^= bits[v];
        satisfied += parity == 0;
        if (ops) {
            ops->sign_ops += g.cn_degree(c);
            ++ops->additions;
        }
    }

    CsrStepResult r;
    r.satisfied = satisfied;
    r.mu_csr = static_cast<double>(satisfied) / g.num_cn();
    r.state = state;
    // Equal ratios over the same N are exact in floating point, so delta == 0
    // is a plain equality test against the previous ratio.
    if (r.mu_csr == r.state.prev_csr)
        ++r.state.stall_count;
    else
        r.state.stall_count = 0;
    r.state.prev_csr = r.mu_csr;

    const bool stalled = r.state.stall_count >= params.gamma_lc;
    const bool ratio_ok = !params.gamma_csr || r.mu_csr >= *params.gamma_csr;
    r.terminate = stalled && ratio_ok;
    return r;
}

// ---- LRM ----

LrmStrategy::LrmStrategy(LrmParams params, std::uint64_t pivot_seed)
    : params_(params), pivot_seed_(pivot_seed) {
    check_gamma_lc(params_.gamma_lc);
    if (!(params_.b_fraction > 0.0) || params_.b_fraction > 1.0)
        throw std::invalid_argument("etm: b_fraction must be in (0,1]");
    if (params_.dc_lrm < 0) throw std::invalid_argument("etm: dc_lrm must be >= 0");
}

void LrmStrategy::begin(const TannerGraph&, const MessageStore& store) {
    ops_ = {};
    state_ = {};
    if (params_.dc_lrm == 0) {
        // Degenerate schedule: select from the all-zero initial messages.
        std::int64_t cmp = 0;
        state_.lrm_indices = lrm_select(store.v2c, params_.b_fraction, pivot_seed_, &cmp);
        ops_.compares += cmp;
        ops_.quickselect_compares += cmp;
        state_.prev_signs.resize(state_.lrm_indices.size());
        for (std::size_t i = 0; i < state_.lrm_indices.size(); ++i)
            state_.prev_signs[i] = store.v2c[state_.lrm_indices[i]] >= 0.0 ? 1 : 0;
    }
}

bool LrmStrategy::step(int iter, const MessageStore& store, const TannerGraph&) {
    return lrm_step(state_, store.v2c, iter, params_, pivot_seed_, &ops_).terminate;
}

std::vector<std::size_t> lrm_select(std::span<const double> v2c, double b_fraction,
                                    std::uint64_t pivot_seed, std::int64_t* comparisons) {
    if (!(b_fraction > 0.0)) throw std::invalid_argument("lrm: b_fraction must be > 0");
    const auto nb = static_cast<std::size_t>(std::ceil(b_fraction * static_cast<double>(v2c.size())));
    if (nb > v2c.size()) throw std::invalid_argument("lrm: cluster larger than edge count");
    auto report = quickselect_k_smallest(v2c, nb, pivot_seed);
    if (comparisons) *comparisons += report.comparisons;
    return std::move(report.indices);
}

LrmStepResult lrm_step(LrmState& state, std::span<const double> v2c, int iter,
                       const LrmParams& params, std::uint64_t pivot_seed, OpCounters* ops) {
    LrmStepResult r;
    if (iter < params.dc_lrm) return r;

    if (iter == params.dc_lrm) {
        std::int64_t cmp = 0;
        state.lrm_indices = lrm_select(v2c, params.b_fraction, pivot_seed, &cmp);
        if (ops) {
            ops->compares += cmp;
            ops->quickselect_compares += cmp;
        }
        // Initial sign capture; one-off bookkeeping, not a counted category.
        state.prev_signs.resize(state.lrm_indices.size());
        for (std::size_t i = 0; i < state.lrm_indices.size(); ++i)
            state.prev_signs[i] = v2c[state.lrm_indices[i]] >= 0.0 ? 1 : 0;
        state.stable_count = 0;
        return r;
    }

    if (state.lrm_indices.empty())
        throw std::invalid_argument("lrm_step: cluster not selected yet");

    int changes = 0;
    for (std::size_t i = 0; i < state.lrm_indices.size(); ++i) {
        const std::uint8_t sign = v2c[state.lrm_indices[i]] >= 0.0 ? 1 : 0;
        changes += sign != state.prev_signs[i];
        state.prev_signs[i] = sign;
    }
    if (ops) {
        const auto nb = static_cast<std::int64_t>(state.lrm_indices.size());
        ops->sign_ops += nb;   // sign extraction
        ops->compares += nb;   // against the stored sign
        ops->additions += nb;  // change-count accumulation
    }

    if (changes == 0)
        ++state.stable_count;
    else
        state.stable_count = 0;
    r.sign_changes = changes;
    r.terminate = state.stable_count >= params.gamma_lc;
    return r;
}

// ---- schedule lookup ----

const std::vector<DcLrmEntry>& default_dc_lrm_table() {
    static const std::vector<DcLrmEntry> table = {
        {0.5, 45}, {1.0, 28}, {1.5, 22}, {2.0, 18}, {2.5, 15},
    };
    return table;
}

int dc_lrm_lookup(double ebno_db, const std::vector<DcLrmEntry>& table) {
    if (table.empty()) throw std::invalid_argument("dc_lrm: empty table");
    const DcLrmEntry* best = &table.front();
    double best_dist = std::fabs(ebno_db - best->ebno_db);
    for (const auto& e : table) {
        const double dist = std::fabs(ebno_db - e.ebno_db);
        if (dist < best_dist || (dist == best_dist && e.ebno_db < best->ebno_db)) {
            best = &e;
            best_dist = dist;
        }
    }
    return best->value;
}

}  // namespace ltsim
