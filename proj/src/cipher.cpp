#include "chaocipher/cipher.hpp"

#include <bitset>
#include <stdexcept>
#include <string>

#include "chaocipher/arnold.hpp"
#include "chaocipher/errors.hpp"
#include "chaocipher/kernels.hpp"

namespace chaocipher {

namespace {

void require_equal_lengths(std::size_t a, std::size_t b, std::size_t c, const char* where) {
    if (a != b || a != c)
        throw std::invalid_argument(std::string(where) + ": sequence lengths differ (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ", " +
                                    std::to_string(c) + ")");
}

void require_square(const ColorImage& img, const char* op) {
    if (!img.square())
        throw NonSquareError(std::string(op) + " requires a square image, got " +
                             std::to_string(img.rows()) + "x" + std::to_string(img.cols()));
}

}  // namespace

CipherText encrypt(const ColorImage& plain, const CipherKey& key) {
    require_square(plain, "encrypt");
    const ArnoldParams params = derive_params(gray_value_sum(plain));
    const ColorImage scrambled = scramble(plain, params);
    const KeystreamPair ks = generate_keystreams(key.chaos, scrambled.byte_count());
    std::vector<std::uint8_t> c = cbc_chain(scrambled.bytes(), ks.k1, ks.k2, key.c0);
    return CipherText{delinearize(std::move(c), plain.rows(), plain.cols())};
}

ColorImage decrypt(const CipherText& cipher, const CipherKey& key) {
    require_square(cipher.image, "decrypt");
    const KeystreamPair ks = generate_keystreams(key.chaos, cipher.image.byte_count());
    std::vector<std::uint8_t> s = cbc_unchain(cipher.image.bytes(), ks.k1, ks.k2, key.c0);
    const ColorImage scrambled =
        delinearize(std::move(s), cipher.image.rows(), cipher.image.cols());
    // Scrambling only permutes values, so the scrambled image has the plain
    // image's gray-value sum and the Arnold parameters can be re-derived
    // without a header.
    const ArnoldParams params = derive_params(gray_value_sum(scrambled));
    return unscramble(scrambled, params);
}

std::vector<std::uint8_t> cbc_chain(const std::vector<std::uint8_t>& s,
                                    const std::vector<std::uint8_t>& k1,
                                    const std::vector<std::uint8_t>& k2,
                                    std::uint8_t c0) {
    require_equal_lengths(s.size(), k1.size(), k2.size(), "cbc_chain");
    std::vector<std::uint8_t> out(s.size());
    const kernels::Ops& ops = kernels::active();
    // C(i) = s(i)^k1(i)^k2(i)^C(i-1) telescopes to a running XOR of the
    // mixed bytes seeded with c0.
    ops.xor3(s.data(), k1.data(), k2.data(), out.data(), out.size());
    ops.prefix_xor(out.data(), out.size(), c0);
    return out;
}

std::vector<std::uint8_t> cbc_unchain(const std::vector<std::uint8_t>& c,
                                      const std::vector<std::uint8_t>& k1,
                                      const std::vector<std::uint8_t>& k2,
                                      std::uint8_t c0) {
    require_equal_lengths(c.size(), k1.size(), k2.size(), "cbc_unchain");
    std::vector<std::uint8_t> out(c.size());
    kernels::active().unchain_xor(c.data(), k1.data(), k2.data(), c0, out.data(), out.size());
    return out;
}

bool is_weak_key(const CipherKey& key) {
    constexpr std::size_t kProbeLength = 1024;
    constexpr std::size_t kMinDistinct = 128;
    const KeystreamPair ks = generate_keystreams(key.chaos, kProbeLength);
    for (const auto* stream : {&ks.k1, &ks.k2}) {
        std::bitset<256> seen;
        for (std::uint8_t b : *stream) seen.set(b);
        if (seen.count() < kMinDistinct) return true;
    }
    return false;
}

}  // namespace chaocipher
