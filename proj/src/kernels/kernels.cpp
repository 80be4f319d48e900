#include "chaocipher/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

namespace chaocipher::kernels {

#ifdef CHAOCIPHER_HAVE_AVX2
namespace detail {
const Ops* avx2_ops_table();
}
#endif

const Ops* avx2_ops() {
#ifdef CHAOCIPHER_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? detail::avx2_ops_table() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

std::uint64_t byte_sum_scalar(const std::uint8_t* p, std::size_t n) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += p[i];
    return sum;
}

void histogram256_scalar(const std::uint8_t* p, std::size_t n, std::uint64_t* counts) {
    for (std::size_t i = 0; i < n; ++i) counts[p[i]]++;
}

void xor3_scalar(const std::uint8_t* a, const std::uint8_t* b, const std::uint8_t* c,
                 std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i] ^ c[i]);
}

void prefix_xor_scalar(std::uint8_t* data, std::size_t n, std::uint8_t seed) {
    std::uint8_t prev = seed;
    for (std::size_t i = 0; i < n; ++i) {
        prev = static_cast<std::uint8_t>(data[i] ^ prev);
        data[i] = prev;
    }
}

void unchain_xor_scalar(const std::uint8_t* c, const std::uint8_t* k1,
                        const std::uint8_t* k2, std::uint8_t c0,
                        std::uint8_t* out, std::size_t n) {
    std::uint8_t prev = c0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<std::uint8_t>(c[i] ^ k1[i] ^ k2[i] ^ prev);
        prev = c[i];
    }
}

std::uint64_t count_diff_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < n; ++i) diff += (a[i] != b[i]) ? 1 : 0;
    return diff;
}

void quantize_bytes_scalar(const double* raw, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 1e6 * raw[i];
        double f = w - std::floor(w);
        // Rounding can land exactly on 1.0 for w a hair below an integer
        // (and non-finite w yields NaN); both wrap to 0 to keep f in [0,1).
        if (!(f >= 0.0 && f < 1.0)) f = 0.0;
        const double t = std::floor(f * 1e14);
        out[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(t) & 0xFF);
    }
}

constexpr Ops kScalarOps = {
    "scalar",
    byte_sum_scalar,
    histogram256_scalar,
    xor3_scalar,
    prefix_xor_scalar,
    unchain_xor_scalar,
    count_diff_scalar,
    quantize_bytes_scalar,
};

const Ops* pick_default() {
    if (const char* env = std::getenv("CHAOCIPHER_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &kScalarOps;
        if (want == "avx2" && avx2_ops() != nullptr) return avx2_ops();
        // "auto" or anything unusable falls through to detection.
    }
    if (const Ops* avx2 = avx2_ops()) return avx2;
    return &kScalarOps;
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (ops == nullptr) {
        ops = pick_default();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

bool force_backend(Backend b) {
    const Ops* ops = nullptr;
    switch (b) {
        case Backend::scalar: ops = &kScalarOps; break;
        case Backend::avx2: ops = avx2_ops(); break;
    }
    if (ops == nullptr) return false;
    g_active.store(ops, std::memory_order_release);
    return true;
}

void reset_backend() { g_active.store(pick_default(), std::memory_order_release); }

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::scalar};
    if (avx2_ops() != nullptr) out.push_back(Backend::avx2);
    return out;
}

}  // namespace chaocipher::kernels
