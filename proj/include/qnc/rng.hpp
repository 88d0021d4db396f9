#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qnc {

// Sampling is specified down to the generator so that fixed seeds give
// byte-identical results on every platform: mt19937_64 plus the two helpers
// below. std::uniform_real_distribution and friends are implementation
// defined and must not be used on any seeded path.

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller. Draws exactly two engine values per call.
inline double gaussian(std::mt19937_64& gen) {
    double u1 = uniform01(gen);
    while (u1 <= 0.0) u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace qnc
