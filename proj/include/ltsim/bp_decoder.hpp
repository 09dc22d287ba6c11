#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ltsim/tanner_graph.hpp"

namespace ltsim {

// LLR magnitudes are saturated here before tanh (and on VN sums), keeping
// atanh finite while staying far above any decision-relevant magnitude.
inline constexpr double kLlrSaturation = 30.0;

/**
 * Per-edge LLR state for one decode: channel LLRs m_c per CN plus both
 * message directions, indexed by the graph's CN-major edge numbering.
 * Iteration 0 state is all-zero messages.
 */
struct MessageStore {
    std::vector<double> m_c;
    std::vector<double> c2v;
    std::vector<double> v2c;
    int iteration = 0;

    MessageStore(const TannerGraph& g, std::vector<double> channel_llrs);
};

// Operation counters for the early-termination section, in the analytic
// model's categories.  quickselect_compares is the slice of compares spent
// inside cluster selection, kept separate so the amortized selection cost
// can be reconciled on its own.
struct OpCounters {
    std::int64_t additions = 0;
    std::int64_t sign_ops = 0;  // abs/sign/XOR, treated as one category
    std::int64_t compares = 0;
    std::int64_t quickselect_compares = 0;

    OpCounters& operator+=(const OpCounters& o) {
        additions += o.additions;
        sign_ops += o.sign_ops;
        compares += o.compares;
        quickselect_compares += o.quickselect_compares;
        return *this;
    }
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    int iterations_used = 0;
    bool terminated_early = false;
    OpCounters etm_ops;
    std::int64_t etm_time_ns = 0;  // wall time of strategy-hook work only
};

class EtmStrategy;

// m_{c->v}: magnitude 2*atanh of the product of tanh(|.|/2) over m_c and the
// other incoming v->c messages; sign from the product of their signs
// (sign(0) = +1) times the XOR-constraint parity factor (-1)^(deg+1), which
// keeps the rule consistent with the positive-LLR == bit-1 convention.  A
// zero input forces output magnitude 0.
void cn_update(MessageStore& store, const TannerGraph& g);

// m_{v->c}: sum of incoming c->v over all neighbors except the target,
// accumulated left to right in edge order, then saturated.
void vn_update(MessageStore& store, const TannerGraph& g);

// Total per-VN LLR m_v = sum of all incoming c->v (unsaturated).
std::vector<double> decision_llrs(const MessageStore& store, const TannerGraph& g);

// Bit 1 iff m_v >= 0 (ties decide 1).
std::vector<std::uint8_t> hard_decision(const MessageStore& store, const TannerGraph& g);

struct DecodeOptions {
    bool time_etm = true;  // off: etm_time_ns stays 0 and no clock is read
    // Called after every completed pass with the 1-based iteration index and
    // that iteration's hard decisions; runs outside the timed ETM section.
    std::function<void(int, std::span<const std::uint8_t>)> observer;
};

// Flooding BP: per iteration one cn_update, one vn_update, then the
// strategy hook, which may stop the loop early; final bits by hard decision
// after the loop.
DecodeResult decode(const TannerGraph& g, std::vector<double> m_c, int max_iter,
                    EtmStrategy& etm, const DecodeOptions& opts = {});

}  // namespace ltsim
