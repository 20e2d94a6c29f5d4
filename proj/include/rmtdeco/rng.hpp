#pragma once

#include <cstdint>
#include <random>

namespace rmtdeco {

/// SplitMix64 finalizer. Used only to derive engine seeds from stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream keyed by (master seed, stream index).
///
/// Each key maps to an independently seeded 64-bit Mersenne Twister, so a
/// Monte-Carlo realization sees the same draws no matter which worker runs it
/// or in which order. Copying a stream copies its state.
class RngStream {
public:
    using engine_type = std::mt19937_64;

    RngStream(std::uint64_t master_seed, std::uint64_t index)
        : seed_(master_seed), index_(index), engine_(make_engine(master_seed, index)) {}

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t index() const noexcept { return index_; }

    /// Independent child stream; `k` distinguishes siblings of the same parent.
    RngStream substream(std::uint64_t k) const {
        return RngStream(splitmix64(seed_ ^ 0x5bd1e9955bd1e995ULL), splitmix64(index_) ^ splitmix64(k + 1));
    }

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
    double uniform01() { return unit_(engine_); }

    engine_type& engine() noexcept { return engine_; }

private:
    static engine_type make_engine(std::uint64_t seed, std::uint64_t index) {
        const std::uint64_t a = splitmix64(seed);
        const std::uint64_t b = splitmix64(a ^ index);
        const std::uint64_t c = splitmix64(b);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        return engine_type(seq);
    }

    std::uint64_t seed_;
    std::uint64_t index_;
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace rmtdeco
