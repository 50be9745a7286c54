#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace leobeam {

/// Derives an independent sub-stream seed from a master seed and a stream
/// name. Used to give scenario generation, measurement noise, channel phases
/// and the agent their own reproducible streams from one top-level seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) {
    // FNV-1a over the name, then splitmix64 finalization.
    std::uint64_t h = 14695981039346656037ull;
    for (char c : stream) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    std::uint64_t z = master ^ h;
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seedable RNG with explicit draw primitives. std::mt19937_64 is fully
/// specified by the standard; the uniform and gaussian transforms below are
/// written out so draw sequences are identical across platforms and builds
/// (std::normal_distribution is implementation-defined and caches state).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t integer(std::uint64_t n) {
        return gen_() % n;
    }

    /// Standard normal via Box-Muller. Two uniforms per draw, no cached
    /// second value, so the stream position is predictable.
    double gaussian() {
        double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;         // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace leobeam
