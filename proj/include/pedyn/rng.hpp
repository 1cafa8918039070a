#ifndef PEDYN_RNG_HPP
#define PEDYN_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace pedyn {

/// Random stream with fixed output distributions.
///
/// The standard <random> distribution classes are implementation defined, so
/// two builds of the same program can replay a seed differently. Everything
/// here is specified down to the bit: uniforms take the top 53 bits of the
/// mt19937_64 output, normals come from Box-Muller without caching the second
/// variate, and bounded ints use rejection sampling. Given a seed, every
/// platform draws the same sequence.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0,1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo,hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box-Muller. Uses two uniforms per call and
    /// discards the paired variate so the draw count per call is constant.
    double normal();

    /// Normal with the given mean and standard deviation.
    double normal(double mean, double stddev) {
        return mean + stddev * normal();
    }

    /// Uniform integer in [0,n). Rejection sampling, so no modulo bias.
    std::size_t index(std::size_t n);

    /// True with probability p.
    bool bernoulli(double p) {
        return uniform() < p;
    }

    std::uint64_t next_raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// Derives a child seed from a master seed and a stream tag so that
/// subsystems draw from independent streams. splitmix64 finalizer over the
/// master seed combined with a hash of the tag.
std::uint64_t derive_seed(std::uint64_t master, const std::string& tag);

} // namespace pedyn

#endif // PEDYN_RNG_HPP
