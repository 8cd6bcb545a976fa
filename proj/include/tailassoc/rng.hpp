#pragma once

#include <cstdint>
#include <random>

namespace tailassoc {

/// SplitMix64 finalizer. Used to turn (seed, stream) pairs into well-spread
/// engine seeds so that replicate b of a bootstrap always sees the same
/// stream no matter which thread runs it or in what order.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Reproducible variate source. The engine is std::mt19937_64 (bit-exact across
/// standard libraries); all transforms to doubles are done here rather than
/// through <random> distributions, whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(derive_seed(seed, stream)) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    double exponential();
    double normal();
    /// Gamma(shape, 1), Marsaglia-Tsang squeeze.
    double gamma(double shape);

private:
    std::mt19937_64 engine_;
};

} // namespace tailassoc
