#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ltsim/bp_decoder.hpp"
#include "ltsim/tanner_graph.hpp"

namespace ltsim {

/**
 * Early-termination strategies.  All of them are read-only observers of the
 * decoder's messages; whatever work they do is what the decoder's ETM op
 * counters and ETM wall time measure.
 */
class EtmStrategy {
public:
    virtual ~EtmStrategy() = default;

    virtual std::string_view name() const = 0;

    // Reset per-block state.  Called once, before the first iteration.
    virtual void begin(const TannerGraph& g, const MessageStore& store) = 0;

    // Called after each completed (CN, VN) pass; iter counts from 1.
    // Returns true to stop decoding.
    virtual bool step(int iter, const MessageStore& store, const TannerGraph& g) = 0;

    const OpCounters& ops() const { return ops_; }

protected:
    OpCounters ops_;
};

// Benchmark strategy: never stops early, costs nothing.
class FixedStrategy final : public EtmStrategy {
public:
    std::string_view name() const override { return "fixed"; }
    void begin(const TannerGraph&, const MessageStore&) override { ops_ = {}; }
    bool step(int, const MessageStore&, const TannerGraph&) override { return false; }
};

// ---- CSR: check-sum satisfaction ratio ----

struct CsrParams {
    int gamma_lc = 5;                 // consecutive zero-delta iterations required
    std::optional<double> gamma_csr;  // optional extra "ratio >= threshold" condition
};

struct CsrState {
    double prev_csr = -1.0;  // sentinel: no previous ratio yet
    int stall_count = 0;
};

struct CsrStepResult {
    CsrState state;
    bool terminate = false;
    double mu_csr = 0.0;
    int satisfied = 0;
};

// One CSR check for freshly decided bits: per CN the parity
// m_c_hard XOR (XOR of neighbor bits), mu = satisfied/N; the stall counter
// tracks consecutive iterations with unchanged mu.  When ops is given it
// accumulates deg(c) XORs plus one satisfied-count addition per CN; the
// caller owns the cost of producing bits.
CsrStepResult csr_step(const CsrState& state, std::span<const std::uint8_t> bits,
                       std::span<const std::uint8_t> m_c_hard, const TannerGraph& g,
                       const CsrParams& params, OpCounters* ops = nullptr);

class CsrStrategy final : public EtmStrategy {
public:
    explicit CsrStrategy(CsrParams params);

    std::string_view name() const override { return "csr"; }
    void begin(const TannerGraph& g, const MessageStore& store) override;
    bool step(int iter, const MessageStore& store, const TannerGraph& g) override;

    const CsrState& state() const { return state_; }

private:
    CsrParams params_;
    CsrState state_;
    std::vector<std::uint8_t> m_c_hard_;  // fixed per block, decided once in begin()
    std::vector<std::uint8_t> bits_;
};

// ---- LRM: least reliable messages ----

struct LrmParams {
    int gamma_lc = 1;        // consecutive zero-change iterations required
    double b_fraction = 0.05;  // cluster size as a fraction of all v->c messages
    int dc_lrm = 18;         // iteration at which the cluster is selected
};

struct LrmState {
    std::vector<std::size_t> lrm_indices;  // fixed once selected
    std::vector<std::uint8_t> prev_signs;  // sign bit (LLR >= 0) per tracked edge
    int stable_count = 0;
};

// Indices of the ceil(b_fraction * edge_count) v->c messages of smallest
// |LLR|, ties toward the lower edge index.
std::vector<std::size_t> lrm_select(std::span<const double> v2c, double b_fraction,
                                    std::uint64_t pivot_seed = 0,
                                    std::int64_t* comparisons = nullptr);

struct LrmStepResult {
    bool terminate = false;
    int sign_changes = 0;
};

// Before dc_lrm: nothing.  At dc_lrm: select the cluster and capture signs.
// After dc_lrm: count tracked sign flips; zero flips bumps the stability
// counter, any flip resets it.  Counted ops: the selection's comparisons
// once, then one sign op + one compare + one add per tracked edge and
// iteration.
LrmStepResult lrm_step(LrmState& state, std::span<const double> v2c, int iter,
                       const LrmParams& params, std::uint64_t pivot_seed,
                       OpCounters* ops = nullptr);

class LrmStrategy final : public EtmStrategy {
public:
    LrmStrategy(LrmParams params, std::uint64_t pivot_seed = 0);

    std::string_view name() const override { return "lrm"; }
    void begin(const TannerGraph& g, const MessageStore& store) override;
    bool step(int iter, const MessageStore& store, const TannerGraph& g) override;

    const LrmState& state() const { return state_; }

private:
    LrmParams params_;
    LrmState state_;
    std::uint64_t pivot_seed_;
};

// ---- selection-iteration schedule ----

struct DcLrmEntry {
    double ebno_db;
    int value;
};

// Stock schedule of selection iterations per operating point.
const std::vector<DcLrmEntry>& default_dc_lrm_table();

// Nearest configured Eb/N0 point wins; ties go to the lower dB (the more
// conservative, larger value).
int dc_lrm_lookup(double ebno_db, const std::vector<DcLrmEntry>& table);

}  // namespace ltsim
