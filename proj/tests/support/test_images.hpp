#pragma once

// Shared test inputs: deterministic images and keys.
//
// natural_photo() synthesizes a stand-in for a photograph: multi-octave
// value noise with smoothstep interpolation. The result has the two
// statistical properties the evaluation suite cares about in a plain image —
// strongly correlated neighbors (r ~ 0.99) and a lumpy, far-from-uniform
// histogram (chi-square in the tens of thousands) — without shipping a
// binary asset.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "chaocipher/cipher.hpp"
#include "chaocipher/errors.hpp"
#include "chaocipher/hyperchaos.hpp"
#include "chaocipher/image.hpp"

namespace testsupport {

inline double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1), 53 bits
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_real(rng);
}

inline chaocipher::ColorImage random_image(std::size_t rows, std::size_t cols,
                                           std::uint64_t seed) {
    chaocipher::ColorImage img(rows, cols);
    std::mt19937_64 rng(seed);
    for (auto& b : img.bytes()) b = static_cast<std::uint8_t>(rng() & 0xFF);
    return img;
}

inline chaocipher::ColorImage natural_photo(std::size_t size, std::uint64_t seed) {
    constexpr std::size_t kGrids[] = {4, 8, 16, 32};
    constexpr double kAmps[] = {1.0, 0.5, 0.25, 0.125};
    constexpr double kLo[3] = {25.0, 35.0, 15.0};
    constexpr double kHi[3] = {215.0, 235.0, 190.0};
    const auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
    const auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };

    std::mt19937_64 rng(seed);
    chaocipher::ColorImage img(size, size);
    std::vector<double> field(size * size);
    std::vector<double> lattice;
    for (std::size_t z = 0; z < 3; ++z) {
        std::fill(field.begin(), field.end(), 0.0);
        double amp_total = 0.0;
        for (std::size_t o = 0; o < 4; ++o) {
            const std::size_t g = kGrids[o];
            lattice.resize((g + 1) * (g + 1));
            for (auto& v : lattice) v = unit_real(rng);
            for (std::size_t x = 0; x < size; ++x) {
                const double fx = static_cast<double>(x) / static_cast<double>(size) *
                                  static_cast<double>(g);
                const auto x0 = static_cast<std::size_t>(fx);
                const double tx = smooth(fx - static_cast<double>(x0));
                for (std::size_t y = 0; y < size; ++y) {
                    const double fy = static_cast<double>(y) / static_cast<double>(size) *
                                      static_cast<double>(g);
                    const auto y0 = static_cast<std::size_t>(fy);
                    const double ty = smooth(fy - static_cast<double>(y0));
                    const double* row0 = &lattice[x0 * (g + 1)];
                    const double* row1 = row0 + (g + 1);
                    const double v = lerp(lerp(row0[y0], row0[y0 + 1], ty),
                                          lerp(row1[y0], row1[y0 + 1], ty), tx);
                    field[x * size + y] += kAmps[o] * v;
                }
            }
            amp_total += kAmps[o];
        }
        for (std::size_t x = 0; x < size; ++x)
            for (std::size_t y = 0; y < size; ++y) {
                const double v = field[x * size + y] / amp_total;
                img.at(x, y, z) =
                    static_cast<std::uint8_t>(kLo[z] + v * (kHi[z] - kLo[z]) + 0.5);
            }
    }
    return img;
}

/// A key whose trajectory verifiably stays bounded for >= 10^6 iterates and
/// whose keystreams pass the uniformity checks.
inline chaocipher::CipherKey bounded_key() {
    chaocipher::CipherKey key;
    key.chaos = chaocipher::ChaosParams{0.358, 0.291, 1.55, 1.3, 1.1, 0.1};
    key.c0 = 113;
    return key;
}

/// Rejection-sample a random key from the attractor basin: initial conditions
/// near the bounded region, system parameters within 2% of the documented
/// configuration, then require 4096 finite iterates and a non-weak keystream.
inline chaocipher::CipherKey random_bounded_key(std::mt19937_64& rng) {
    for (;;) {
        chaocipher::CipherKey key;
        key.chaos.x0 = uniform(rng, 0.05, 0.45);
        key.chaos.y0 = uniform(rng, -0.2, 0.5);
        key.chaos.a1 = 1.55 * uniform(rng, 0.98, 1.02);
        key.chaos.a2 = 1.30 * uniform(rng, 0.98, 1.02);
        key.chaos.a3 = 1.10 * uniform(rng, 0.98, 1.02);
        key.chaos.a4 = 0.10 * uniform(rng, 0.98, 1.02);
        key.c0 = static_cast<std::uint8_t>(rng() & 0xFF);
        try {
            (void)chaocipher::iterate(key.chaos, 4096);
        } catch (const chaocipher::DivergenceError&) {
            continue;
        }
        if (chaocipher::is_weak_key(key)) continue;
        return key;
    }
}

}  // namespace testsupport
