#pragma once

#include <cmath>
#include <cstdint>

namespace pdd::rv {

// Counter-free splitmix64 stream. Substreams are derived by hashing
// (seed, substream index), so sample i's draws do not depend on how many
// draws earlier samples consumed; that makes parallel Monte Carlo
// bit-reproducible for any partition of the index range.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed)) {}

    RandomStream(std::uint64_t seed, std::uint64_t substream)
        : state_(mix(mix(seed) ^ mix(substream + 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via the Marsaglia polar method; the spare deviate is
    // cached in the stream so the draw sequence is stream-local.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        while (true) {
            double u = 2.0 * next_unit() - 1.0;
            double v = 2.0 * next_unit() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                double f = std::sqrt(-2.0 * std::log(s) / s);
                spare_ = v * f;
                has_spare_ = true;
                return u * f;
            }
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pdd::rv
