// AVX2 variants of the byte/double kernels. Compiled with -mavx2 only; the
// dispatcher in kernels.cpp gates entry behind a cpuid check. Every function
// must produce bit-identical output to its scalar reference.

#include "chaocipher/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace chaocipher::kernels::detail {

namespace {

std::uint64_t byte_sum_avx2(const std::uint8_t* p, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) sum += p[i];
    return sum;
}

// Histogramming is a scatter; SIMD buys nothing without conflict detection.
// Four interleaved tables break the store-to-load dependency chain instead.
void histogram256_avx2(const std::uint8_t* p, std::size_t n, std::uint64_t* counts) {
    std::uint64_t t0[256] = {0}, t1[256] = {0}, t2[256] = {0}, t3[256] = {0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        t0[p[i]]++;
        t1[p[i + 1]]++;
        t2[p[i + 2]]++;
        t3[p[i + 3]]++;
    }
    for (; i < n; ++i) t0[p[i]]++;
    for (int v = 0; v < 256; ++v) counts[v] += t0[v] + t1[v] + t2[v] + t3[v];
}

void xor3_avx2(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* c,
               std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
        const __m256i r = _mm256_xor_si256(_mm256_xor_si256(va, vb), vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
    }
    for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i] ^ c[i]);
}

// Running XOR is a prefix scan: within a 16-byte block, log-step shifted XORs
// produce all prefixes at once; the block's last byte carries into the next.
void prefix_xor_avx2(std::uint8_t* data, std::size_t n, std::uint8_t seed) {
    std::uint8_t carry = seed;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + i));
        v = _mm_xor_si128(v, _mm_slli_si128(v, 1));
        v = _mm_xor_si128(v, _mm_slli_si128(v, 2));
        v = _mm_xor_si128(v, _mm_slli_si128(v, 4));
        v = _mm_xor_si128(v, _mm_slli_si128(v, 8));
        v = _mm_xor_si128(v, _mm_set1_epi8(static_cast<char>(carry)));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(data + i), v);
        carry = data[i + 15];
    }
    for (; i < n; ++i) {
        carry = static_cast<std::uint8_t>(data[i] ^ carry);
        data[i] = carry;
    }
}

void unchain_xor_avx2(const std::uint8_t* c, const std::uint8_t* k1,
                      const std::uint8_t* k2, std::uint8_t c0,
                      std::uint8_t* out, std::size_t n) {
    if (n == 0) return;
    out[0] = static_cast<std::uint8_t>(c[0] ^ k1[0] ^ k2[0] ^ c0);
    std::size_t i = 1;
    for (; i + 32 <= n; i += 32) {
        const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
        const __m256i v1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(k1 + i));
        const __m256i v2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(k2 + i));
        const __m256i vp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i - 1));
        const __m256i r =
            _mm256_xor_si256(_mm256_xor_si256(vc, v1), _mm256_xor_si256(v2, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
    }
    for (; i < n; ++i)
        out[i] = static_cast<std::uint8_t>(c[i] ^ k1[i] ^ k2[i] ^ c[i - 1]);
}

std::uint64_t count_diff_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::uint64_t diff = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const unsigned eq =
            static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        diff += 32u - static_cast<unsigned>(__builtin_popcount(eq));
    }
    for (; i < n; ++i) diff += (a[i] != b[i]) ? 1 : 0;
    return diff;
}

// Same element pipeline as the scalar reference. Every step is an exactly
// rounded IEEE-754 operation on each lane, so results match bit for bit:
// frac via floor, range guard, *1e14, floor, mod 256 in exact double ops.
void quantize_bytes_avx2(const double* raw, std::uint8_t* out, std::size_t n) {
    const __m256d scale6 = _mm256_set1_pd(1e6);
    const __m256d scale14 = _mm256_set1_pd(1e14);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d inv256 = _mm256_set1_pd(1.0 / 256.0);
    const __m256d v256 = _mm256_set1_pd(256.0);
    const __m128i pick_low_bytes = _mm_set_epi8(-1, -1, -1, -1, -1, -1, -1, -1,
                                                -1, -1, -1, -1, 12, 8, 4, 0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(raw + i);
        const __m256d w = _mm256_mul_pd(v, scale6);
        __m256d f = _mm256_sub_pd(w, _mm256_floor_pd(w));
        const __m256d valid = _mm256_and_pd(_mm256_cmp_pd(f, zero, _CMP_GE_OQ),
                                            _mm256_cmp_pd(f, one, _CMP_LT_OQ));
        f = _mm256_and_pd(f, valid);
        const __m256d t = _mm256_floor_pd(_mm256_mul_pd(f, scale14));
        // t < 1e14 < 2^53: t/256 is an exact power-of-two scale, so the
        // remainder below is computed without rounding error.
        const __m256d q =
            _mm256_sub_pd(t, _mm256_mul_pd(v256, _mm256_floor_pd(_mm256_mul_pd(t, inv256))));
        const __m128i b32 = _mm256_cvttpd_epi32(q);
        const __m128i b8 = _mm_shuffle_epi8(b32, pick_low_bytes);
        const int packed = _mm_cvtsi128_si32(b8);
        std::memcpy(out + i, &packed, 4);
    }
    for (; i < n; ++i) {
        const double w = 1e6 * raw[i];
        double f = w - std::floor(w);
        if (!(f >= 0.0 && f < 1.0)) f = 0.0;
        const double t = std::floor(f * 1e14);
        out[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(t) & 0xFF);
    }
}

constexpr Ops kAvx2Ops = {
    "avx2",
    byte_sum_avx2,
    histogram256_avx2,
    xor3_avx2,
    prefix_xor_avx2,
    unchain_xor_avx2,
    count_diff_avx2,
    quantize_bytes_avx2,
};

}  // namespace

const Ops* avx2_ops_table() { return &kAvx2Ops; }

}  // namespace chaocipher::kernels::detail
