#pragma once

#include <cstdint>
#include <vector>

#include "chaocipher/hyperchaos.hpp"
#include "chaocipher/image.hpp"

namespace chaocipher {

/// Secret key: the hyper-chaotic parameters plus the CBC seed C(0).
/// c0 is key material, not a transmitted IV: it is never emitted with the
/// ciphertext, and reusing one key across messages is the caller's risk.
struct CipherKey {
    ChaosParams chaos;
    std::uint8_t c0 = 0;

    bool operator==(const CipherKey&) const = default;
};

/// The encrypted pixels C(i), reshaped to the plain image's dimensions.
struct CipherText {
    ColorImage image;

    bool operator==(const CipherText&) const = default;
};

/// Full pipeline: gvSum -> derive_params -> scramble -> linearize ->
/// keystreams -> CBC chain -> delinearize. Throws NonSquareError for
/// non-square input and DivergenceError if the key's trajectory escapes.
CipherText encrypt(const ColorImage& plain, const CipherKey& key);

/// Exact reverse. gvSum is NOT transmitted: it is recomputed from the
/// recovered scrambled image, which is sound because scrambling permutes
/// pixel values without changing them, so the scrambled image has the same
/// gray-value sum as the plain image.
ColorImage decrypt(const CipherText& cipher, const CipherKey& key);

/// C(i) = s(i) ^ k1(i) ^ k2(i) ^ C(i-1) with C(0) = c0 (the chained value is
/// the previously produced CIPHER byte). Throws std::invalid_argument on
/// length mismatch.
std::vector<std::uint8_t> cbc_chain(const std::vector<std::uint8_t>& s,
                                    const std::vector<std::uint8_t>& k1,
                                    const std::vector<std::uint8_t>& k2,
                                    std::uint8_t c0);

/// s(i) = c(i) ^ k1(i) ^ k2(i) ^ c(i-1) with c(0) = c0; exact inverse of
/// cbc_chain.
std::vector<std::uint8_t> cbc_unchain(const std::vector<std::uint8_t>& c,
                                      const std::vector<std::uint8_t>& k1,
                                      const std::vector<std::uint8_t>& k2,
                                      std::uint8_t c0);

/// Key-quality policy probe: generates 1024 bytes of each keystream and
/// reports true when either stream visits fewer than 128 distinct byte
/// values (e.g. the all-zero key, or parameters stuck on a short cycle).
/// Policy only — the library still executes weak keys; the CLI refuses them
/// without --allow-weak-key. Propagates DivergenceError.
bool is_weak_key(const CipherKey& key);

}  // namespace chaocipher
