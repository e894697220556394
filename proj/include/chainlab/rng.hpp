#pragma once

#include <cstdint>
#include <random>

namespace chainlab {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One independent random stream. Streams are derived from (master seed,
/// stream id) so ensembles can hand stream i to trajectory i regardless of
/// worker count; a stream must be owned by exactly one worker at a time.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : id_(stream_id) {
        std::uint64_t s = master_seed ^ (0xb5ad4eceda1ce2a9ULL * (stream_id + 1));
        // warm the mixer so nearby (seed, id) pairs decorrelate
        std::uint64_t a = splitmix64(s), b = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t stream_id() const { return id_; }

    double uniform() { return unif_(engine_); }            // in [0,1)
    double normal() { return norm_(engine_); }             // standard normal
    double exponential() { return -std::log1p(-unif_(engine_)); }

    /// Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t id_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace chainlab
