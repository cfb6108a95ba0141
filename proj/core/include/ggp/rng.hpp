#pragma once

#include <cmath>
#include <cstdint>

namespace ggp {

/// Counter-based pseudo-random stream.
///
/// Output i of a stream is finalize(key + i*GOLDEN), where the key is a
/// 64-bit hash of (seed, stream_id). Streams with distinct stream_ids are
/// decorrelated without any coordination, so parallel chains and particle
/// blocks can each own a stream derived from the same user seed.
///
/// Sequences are reproducible bit-for-bit for a fixed (seed, stream_id).
/// The only platform caveat is libm: normal() uses log/cos whose last-ulp
/// rounding may differ between C libraries; integer output is identical
/// everywhere.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + stream_id)), counter_(0) {}

    /// Child stream keyed by (this stream's key, id). Distinct ids give
    /// decorrelated children regardless of how much the parent has drawn.
    [[nodiscard]] RngStream substream(std::uint64_t id) const {
        RngStream child;
        child.key_ = mix(key_ ^ mix(id + 0x9e3779b97f4a7c15ULL));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1, so it is
    /// safe under log() and as a rejection-test threshold.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached
    /// spare, so the consumption pattern is position-independent).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::uint64_t counter() const { return counter_; }

private:
    RngStream() : key_(0), counter_(0) {}

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace ggp
