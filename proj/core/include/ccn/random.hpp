#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ccn {

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream key from a root seed and a path of counters,
/// e.g. stream_key(root, {tag, cell, run}). Order matters.
std::uint64_t stream_key(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept;

/// Uniform in [0, 1) from the top 53 bits of a 64-bit word.
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based uniform draw: the i-th value of the stream keyed by `key`.
/// Independent of evaluation order.
inline double counter_uniform(std::uint64_t key, std::uint64_t index) noexcept {
    return to_unit(mix64(mix64(key) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

/// Sequential generator used where draws are consumed in a fixed order.
/// Distributions are implemented here rather than through <random> so
/// that streams are identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t key) : engine_(mix64(key)) {}

    double uniform() { return to_unit(engine_()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ccn
