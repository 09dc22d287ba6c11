#include "ltsim/bp_decoder.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ltsim/etm.hpp"

namespace ltsim {

MessageStore::MessageStore(const TannerGraph& g, std::vector<double> channel_llrs)
    : m_c(std::move(channel_llrs)),
      c2v(g.edge_count(), 0.0),
      v2c(g.edge_count(), 0.0) {
    if (m_c.size() != static_cast<std::size_t>(g.num_cn()))
        throw std::invalid_argument("decode: channel LLR length != N");
}

void cn_update(MessageStore& store, const TannerGraph& g) {
    // Factor 0 is m_c, factors 1..d are the incoming v->c messages of the
    // CN's edges; each output excludes its own factor.  Magnitudes go through
    // a prefix/suffix product of tanh terms, signs through a parity count.
    std::vector<double> t;    // tanh(min(|x|, sat)/2) per factor
    std::vector<double> suf;  // suffix products of t

    for (int c = 0; c < g.num_cn(); ++c) {
        const std::size_t off = g.cn_offset(c);
        const int d = g.cn_degree(c);
        const auto factor = [&](int i) {
            return i == 0 ? store.m_c[c] : store.v2c[off + static_cast<std::size_t>(i) - 1];
        };

        t.resize(d + 1);
        // With the positive-LLR == bit-1 convention, the sum-product rule for
        // the constraint "coded bit = XOR of neighbors" carries a fixed sign
        // factor (-1)^(inputs+1): tanh(m/2) is -E[(-1)^bit], so each of the d
        // input negations plus the output's own negation must cancel.  Seed
        // the parity accordingly (even d flips, odd d doesn't).
        int neg_parity = (d % 2 == 0) ? 1 : 0;
        for (int i = 0; i <= d; ++i) {
            const double x = factor(i);
            neg_parity ^= (x < 0.0);
            t[i] = std::tanh(std::min(std::fabs(x), kLlrSaturation) / 2.0);
        }

        suf.resize(d + 2);
        suf[d + 1] = 1.0;
        for (int i = d; i >= 0; --i) suf[i] = t[i] * suf[i + 1];

        double pre = 1.0;  // product of t[0..j-1]
        for (int j = 1; j <= d; ++j) {
            pre *= t[j - 1];
            const double p = pre * suf[j + 1];  // all factors except j
            const double mag = std::min(2.0 * std::atanh(p), kLlrSaturation);
            const bool neg = (neg_parity ^ (factor(j) < 0.0)) != 0;
            store.c2v[off + static_cast<std::size_t>(j) - 1] = neg ? -mag : mag;
        }
    }
}

void vn_update(MessageStore& store, const TannerGraph& g) {
    for (int v = 0; v < g.num_vn(); ++v) {
        const auto edges = g.vn_edges(v);
        for (std::size_t j = 0; j < edges.size(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < edges.size(); ++i)
                if (i != j) s += store.c2v[edges[i]];
            if (s > kLlrSaturation)
                s = kLlrSaturation;
            else if (s < -kLlrSaturation)
                s = -kLlrSaturation;
            store.v2c[edges[j]] = s;
        }
    }
}

std::vector<double> decision_llrs(const MessageStore& store, const TannerGraph& g) {
    std::vector<double> m(g.num_vn(), 0.0);
    for (int v = 0; v < g.num_vn(); ++v) {
        double s = 0.0;
        for (const auto e : g.vn_edges(v)) s += store.c2v[e];
        m[v] = s;
    }
    return m;
}

std::vector<std::uint8_t> hard_decision(const MessageStore& store, const TannerGraph& g) {
    const auto m = decision_llrs(store, g);
    std::vector<std::uint8_t> bits(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) bits[v] = m[v] >= 0.0 ? 1 : 0;
    return bits;
}

DecodeResult decode(const TannerGraph& g, std::vector<double> m_c, int max_iter,
                    EtmStrategy& etm, const DecodeOptions& opts) {
    if (max_iter < 1) throw std::invalid_argument("decode: max_iter must be >= 1");

    using clock = std::chrono::steady_clock;
    MessageStore store(g, std::move(m_c));
    std::int64_t etm_ns = 0;
    const auto timed = [&](auto&& fn) {
        if (opts.time_etm) {
            const auto t0 = clock::now();
            fn();
            etm_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
        } else {
            fn();
        }
    };

    timed([&] { etm.begin(g, store); });

    bool early = false;
    int l = 0;
    while (l < max_iter) {
        cn_update(store, g);
        vn_update(store, g);
        ++l;
        store.iteration = l;
        if (opts.observer) opts.observer(l, hard_decision(store, g));
        bool stop = false;
        timed([&] { stop = etm.step(l, store, g); });
        if (stop) {
            early = true;
            break;
        }
    }

    DecodeResult res;
    res.bits = hard_decision(store, g);
    res.iterations_used = l;
    res.terminated_early = early;
    res.etm_ops = etm.ops();
    res.etm_time_ns = etm_ns;
    return res;
}

}  // namespace ltsim
