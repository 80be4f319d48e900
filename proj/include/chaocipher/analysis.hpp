#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "chaocipher/cipher.hpp"
#include "chaocipher/image.hpp"

namespace chaocipher {

enum class Direction { horizontal, vertical, diagonal };

/// Chi-square uniformity statistic over the 256 gray levels:
/// sum (O_i - E_i)^2 / E_i with E_i = M*N/256 (real-valued, not rounded).
/// Throws std::invalid_argument on an empty channel.
double chi_square(const Channel& ch);

/// Shannon entropy in bits/symbol: -sum p_i*log2(p_i) over nonzero p_i.
/// 0 for a constant channel, 8 for a perfectly uniform one.
double shannon_entropy(const Channel& ch);

/// Pearson correlation coefficient over `sample_count` pairs (p, q) where q
/// is p's neighbor in the given direction. Pairs are drawn with replacement
/// from all three channels pooled, by a seeded generator with a fixed
/// sampling procedure, so results are reproducible bit-for-bit. Returns
/// nullopt ("undefined", distinct from 0) when either marginal has zero
/// variance. Throws std::invalid_argument when the image holds no pair in
/// that direction.
std::optional<double> adjacent_correlation(const ColorImage& img, Direction dir,
                                           std::size_t sample_count, std::uint64_t seed);

/// Net pixel change rate of channel z between two equally-sized images:
/// percent of the M*N positions whose values differ. Throws
/// DimensionMismatchError when sizes differ.
double npcr(const ColorImage& a, const ColorImage& b, std::size_t z);

/// Encrypt `plain` under `key` and under key-with-`component`-shifted-by-
/// `delta` (components: x0, y0, a1, a2, a3, a4, c0; for c0 the delta is
/// rounded and added modulo 256); return the pooled percentage of differing
/// ciphertext bytes over all M*N*3 positions. Returns nullopt when the
/// perturbed trajectory diverges (reported, not crashed).
std::optional<double> key_sensitivity(const ColorImage& plain, const CipherKey& key,
                                      std::string_view component, double delta);

struct KeySensitivityReport {
    std::optional<double> x0, y0, a1, a2, a3, a4, c0;
};

/// The evaluation suite's results. chi_square/entropy describe the cipher
/// image per channel (R, G, B); correlation is pooled over channels per
/// direction; npcr compares plain vs cipher per channel.
struct MetricsReport {
    std::array<double, 3> chi_square{};
    std::array<std::optional<double>, 3> correlation{};  // horizontal, vertical, diagonal
    std::array<double, 3> entropy{};
    std::array<double, 3> npcr{};
    std::optional<KeySensitivityReport> key_sensitivity;
};

inline constexpr std::size_t kDefaultCorrelationSamples = 4096;

/// Run the full suite. key_sensitivity is filled only when a key is given,
/// using delta 1e-14 for the six reals and +1 for c0.
MetricsReport analyze(const ColorImage& plain, const ColorImage& cipher, std::uint64_t seed,
                      const std::optional<CipherKey>& key = std::nullopt,
                      std::size_t sample_count = kDefaultCorrelationSamples);

/// Fixed-schema JSON: chi_square.{r,g,b}, correlation.{horizontal,vertical,
/// diagonal}, entropy.{r,g,b}, npcr.{r,g,b}, key_sensitivity.{x0,y0,a1,a2,
/// a3,a4,c0} (last object omitted without a key). Undefined values are null.
/// Deterministic byte-for-byte for equal reports.
std::string to_json(const MetricsReport& report);

/// Human-readable fixed-width table of the same numbers.
std::string render_table(const MetricsReport& report);

}  // namespace chaocipher
