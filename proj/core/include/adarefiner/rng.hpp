#pragma once

#include <cstdint>
#include <vector>

namespace adarefiner {

// Deterministic PRNG with a fully specified algorithm (xoshiro256++ seeded
// via splitmix64), so replays produce identical streams on every platform.
// std::uniform_*_distribution is implementation-defined and must not be used
// anywhere determinism matters.

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng() : Rng(0) {}
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound);

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform();

    // Standard normal via Box-Muller (both draws consumed every call).
    double normal();

    bool chance(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives an independent sub-stream (e.g. per-episode seeds).
    std::uint64_t fork_seed();

    bool operator==(const Rng& other) const = default;

    const std::uint64_t* state() const { return s_; }

private:
    std::uint64_t s_[4];
};

// Stable 64-bit FNV-1a over bytes; used for tokens and state hashing.
constexpr std::uint64_t fnv1a64(const char* data, std::size_t len,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace adarefiner
