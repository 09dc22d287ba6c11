#include "ltsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ltsim {

ChannelParams ChannelParams::make(double ebno_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("channel: rate must be in (0,1]");
    ChannelParams p;
    p.ebno_db = ebno_db;
    p.rate = rate;
    p.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
    return p;
}

std::vector<double> transmit(std::span<const std::uint8_t> code, const ChannelParams& params,
                             Rng& rng) {
    GaussianSampler noise(std::sqrt(params.sigma2));
    std::vector<double> y(code.size());
    for (std::size_t i = 0; i < code.size(); ++i)
        y[i] = (2.0 * code[i] - 1.0) + noise(rng);
    return y;
}

std::vector<double> channel_llr(std::span<const double> y, const ChannelParams& params) {
    if (!(params.sigma2 > 0.0)) throw std::invalid_argument("channel: sigma2 must be > 0");
    std::vector<double> llr(y.size());
    const double scale = 2.0 / params.sigma2;
    for (std::size_t i = 0; i < y.size(); ++i) llr[i] = scale * y[i];
    return llr;
}

}  // namespace ltsim
