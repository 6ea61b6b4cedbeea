#ifndef MICROMARKET_RNG_HPP
#define MICROMARKET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace micromarket {

// Algorithm identifier written into run metadata. Reimplementations in other
// languages can reproduce the exact stream from this description: a 64-bit
// seed is expanded into the xoshiro256++ state with splitmix64, uniforms map
// the top 53 bits into (0, 1], and every normal draw consumes exactly two
// generator outputs through the trigonometric Box-Muller transform.
inline constexpr const char* kRngId = "xoshiro256++/splitmix64-seed/box-muller";

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& word : state_) {
            z += 0x9E3779B97F4A7C15ULL;
            std::uint64_t s = z;
            s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL;
            s = (s ^ (s >> 27)) * 0x94D049BB133111EBULL;
            word = s ^ (s >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; never zero, so logarithms stay finite.
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal draw; consumes exactly two generator outputs.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace micromarket

#endif  // MICROMARKET_RNG_HPP
