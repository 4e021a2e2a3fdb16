#pragma once

#include <cstdint>
#include <random>

namespace qpa {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Named randomness streams derived from one root seed, so each protocol
// stage is independently reproducible.
enum class Stream : std::uint64_t {
    Prepare = 1,
    Channel = 2,
    Check = 3,
    Condense = 4,
    Decode = 5,
    EveGuess = 6,
    Message = 7,
    Generic = 8,
};

// Deterministic uniform source. The [0,1) doubles are produced from the raw
// 64-bit output directly (53-bit mantissa), not via std::uniform_real_distribution,
// so the byte stream is identical across standard library implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, Stream stream = Stream::Generic)
        : engine_(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream))) {}

    SeededRng(std::uint64_t seed, std::uint64_t stream)
        : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1), 53 significant bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qpa
