#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace iadsim::stats {

// Deterministic variate source. Engine is the standard-specified MT19937;
// uniform doubles use the classic two-word 53-bit construction and normals
// come from Box-Muller, so the whole stream is pinned by the algorithm rather
// than by implementation-defined library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(static_cast<std::uint32_t>(seed ^ (seed >> 32))) {}

    std::uint32_t next_u32() { return gen_(); }

    // uniform in [0, 1) with 53-bit resolution
    double next_double() {
        const std::uint32_t a = gen_() >> 5;   // 27 bits
        const std::uint32_t b = gen_() >> 6;   // 26 bits
        return (a * 67108864.0 + b) / 9007199254740992.0;
    }

    // uniform in (0, 1), for log/inverse transforms
    double next_open() {
        double u;
        do {
            u = next_double();
        } while (u <= 0.0);
        return u;
    }

    // standard normal via Box-Muller, pairs cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// splitmix64 step; decorrelates per-stream seeds derived from one base seed
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace iadsim::stats
