#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Data-parallel byte and double kernels used by the hot paths: a scalar
// reference implementation defines the semantics, SIMD backends must match it
// bit for bit on every input (see tests/test_kernels.cpp).

namespace chaocipher::kernels {

enum class Backend {
    scalar,
    avx2,
};

struct Ops {
    const char* name;

    /// Exact 64-bit sum of n bytes.
    std::uint64_t (*byte_sum)(const std::uint8_t* p, std::size_t n);

    /// counts[v] += occurrences of v in p[0..n). counts has 256 slots.
    void (*histogram256)(const std::uint8_t* p, std::size_t n, std::uint64_t* counts);

    /// out[i] = a[i] ^ b[i] ^ c[i]. out may alias a.
    void (*xor3)(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* c,
                 std::uint8_t* out, std::size_t n);

    /// In-place running XOR: data[0] ^= seed, data[i] ^= data[i-1].
    void (*prefix_xor)(std::uint8_t* data, std::size_t n, std::uint8_t seed);

    /// out[i] = c[i] ^ k1[i] ^ k2[i] ^ (i ? c[i-1] : c0). out must not alias c.
    void (*unchain_xor)(const std::uint8_t* c, const std::uint8_t* k1,
                        const std::uint8_t* k2, std::uint8_t c0,
                        std::uint8_t* out, std::size_t n);

    /// Number of positions where a[i] != b[i].
    std::uint64_t (*count_diff)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

    /// Keystream postprocessing, elementwise over trajectory values:
    /// f = frac(1e6 * v) in [0,1), out[i] = floor(f * 1e14) mod 256.
    /// Matches hyperchaos::quantize(hyperchaos::preprocess(v)) exactly.
    void (*quantize_bytes)(const double* raw, std::uint8_t* out, std::size_t n);
};

/// Scalar reference backend; always available.
const Ops& scalar_ops();

/// AVX2 backend, or nullptr when unsupported by the running CPU/build.
const Ops* avx2_ops();

/// Currently selected backend. Defaults to the best supported one; the
/// CHAOCIPHER_KERNELS environment variable (scalar|avx2|auto) overrides,
/// as does force_backend().
const Ops& active();

/// Pin the dispatch to one backend. Returns false if it is unavailable.
bool force_backend(Backend b);

/// Restore the default (auto) selection.
void reset_backend();

/// Backends usable on this machine.
std::vector<Backend> available_backends();

}  // namespace chaocipher::kernels
