#ifndef NAVSTACK_RNG_HPP_
#define NAVSTACK_RNG_HPP_

#include <cmath>
#include <cstdint>

#include "navstack/geometry.hpp"

namespace navstack {

/// Portable seedable generator: splitmix64 stream with Box-Muller Gaussians.
/// Fixed algorithm so logged runs replay bit-identically on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller, pairwise).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) {
            u1 = next_double();
        }
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    double gaussian(double sigma) { return sigma > 0.0 ? sigma * gaussian() : 0.0; }

    /// Deterministic per-run substream seed.
    static uint64_t derive_seed(uint64_t base, uint64_t index) {
        Rng r(base ^ (0xA5A5A5A5A5A5A5A5ULL + index * 0x9E3779B97F4A7C15ULL));
        return r.next_u64();
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace navstack

#endif  // NAVSTACK_RNG_HPP_
