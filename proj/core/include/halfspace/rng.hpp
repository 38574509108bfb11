// Counter-based splittable generator.  A stream is fully determined by
// (seed, stream index), so parallel trials are reproducible regardless of
// scheduling.
#pragma once

#include <cstdint>
#include <cmath>

namespace halfspace {

class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed) ^ (mix(stream + 0x5851f42d4c957f2dULL)))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller on our own uniforms (bit-stable across
    // standard libraries, unlike std::normal_distribution)
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace halfspace
