#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltsim/rng.hpp"

namespace ltsim {

/**
 * BPSK over the binary-input AWGN channel with unit-energy symbols and
 * Eb = Es/rate, so sigma2 = 1/(2 * rate * 10^(ebno_db/10)).
 */
struct ChannelParams {
    double ebno_db = 0.0;
    double rate = 0.5;
    double sigma2 = 1.0;

    static ChannelParams make(double ebno_db, double rate);
};

// Bit b -> symbol 2b-1 (0 -> -1, 1 -> +1) plus N(0, sigma2) noise.
std::vector<double> transmit(std::span<const std::uint8_t> code, const ChannelParams& params,
                             Rng& rng);

// m_c[i] = 2*y[i]/sigma2.  With the mapping above, a positive LLR is
// evidence for bit 1, matching the decoder's "m_v >= 0 -> 1" decision rule.
std::vector<double> channel_llr(std::span<const double> y, const ChannelParams& params);

}  // namespace ltsim
