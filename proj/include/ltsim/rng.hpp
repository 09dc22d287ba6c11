#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ltsim {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to decorrelate seeds of per-block streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for (master seed, stream index).  Streams derived
// this way are what makes results independent of worker count or block order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x6a09e667f3bcc909ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix_seed(master, stream));
}

// Uniform double in [0,1) from the top 53 bits of one engine draw.  Done by
// hand instead of std::uniform_real_distribution so sequences are identical
// across standard libraries.
inline double uniform_unit(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n), n >= 1 (rejection on the short cycle).
inline std::uint64_t uniform_index(Rng& g, std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
        std::uint64_t r = g();
        if (r >= threshold) return r % n;
    }
}

// Box-Muller Gaussian pairs over uniform_unit; again hand-rolled so that the
// noise sequence for a given seed is platform-independent.
class GaussianSampler {
public:
    explicit GaussianSampler(double stddev) : stddev_(stddev) {}

    double operator()(Rng& g) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * stddev_;
        }
        const double u1 = 1.0 - uniform_unit(g);  // (0,1], keeps log finite
        const double u2 = uniform_unit(g);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t) * stddev_;
    }

private:
    double stddev_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ltsim
