#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pconvex {

/// Counter-based splittable generator. Every output word is a pure
/// function of (seed, stream, counter):
///
///   word = M(M(M(seed ^ 0x9E3779B97F4A7C15) ^ stream) ^ counter)
///
/// where M is the SplitMix64 finalizer
///
///   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27;  z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
///
/// M is a bijection, so within one (seed, stream) pair distinct counters
/// never collide. Substreams are derived as
///
///   child_stream = M(stream + 0x9E3779B97F4A7C15 * (i + 1))
///
/// This scheme is part of the output format contract: identical
/// (seed, stream, counter) triples produce identical draws in every
/// version, independent of threading or call interleaving.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), counter_(0) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    static std::uint64_t word(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
        std::uint64_t z = mix64(seed ^ 0x9E3779B97F4A7C15ULL);
        z = mix64(z ^ stream);
        return mix64(z ^ counter);
    }

    std::uint64_t next_u64() { return word(seed_, stream_, counter_++); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_open01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (cosine branch); consumes 2 words.
    double normal() {
        const double u1 = uniform_open01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Child generator with an independent stream; the parent is unchanged.
    CounterRng substream(std::uint64_t i) const {
        return CounterRng(seed_, mix64(stream_ + 0x9E3779B97F4A7C15ULL * (i + 1)));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_;
};

}  // namespace pconvex
