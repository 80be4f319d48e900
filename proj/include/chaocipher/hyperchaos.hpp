#pragma once

#include <cstdint>
#include <vector>

namespace chaocipher {

/// System parameters and initial conditions of the 2D hyper-chaotic map
///   x_{n+1} = a1*x_n - a2*y_n^2
///   y_{n+1} = a3*x_n - a4*y_n
/// Arithmetic is IEEE-754 binary64 with the evaluation order fixed exactly as
/// written (a1*x, then a2*(y*y), then subtract; a3*x, then a4*y, then
/// subtract) — no FMA, no re-association — so encrypt and decrypt produce
/// identical keystreams across builds and platforms.
struct ChaosParams {
    double x0 = 0.0;
    double y0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;

    bool operator==(const ChaosParams&) const = default;

    /// The documented reference configuration. Note: under the map as defined
    /// above this trajectory escapes to infinity within a few dozen iterates;
    /// it is kept for documentation and divergence-handling tests. See
    /// README "Reference configuration" for working alternatives.
    static ChaosParams reference_config() {
        return ChaosParams{0.2159, 0.5738, 1.55, 1.3, 1.1, 0.1};
    }
};

/// The raw iterates x_n, y_n (before preprocessing).
struct RawTrajectory {
    std::vector<double> xs;
    std::vector<double> ys;
};

/// The two byte keystreams K1 (from x) and K2 (from y), equal lengths.
struct KeystreamPair {
    std::vector<std::uint8_t> k1;
    std::vector<std::uint8_t> k2;
};

/// Produce `count` iterates starting FROM (x0, y0): xs[0], ys[0] are the
/// first iterates, not the initial conditions. No burn-in. Throws
/// DivergenceError (with the failing 0-based step) if an iterate is
/// non-finite.
RawTrajectory iterate(const ChaosParams& params, std::size_t count);

/// Fractional part of 10^6 * v: w - floor(w), always in [0,1) including for
/// negative v. (For |w| large enough that w - floor(w) rounds to 1.0, or
/// non-finite w, the result wraps to 0.0 to preserve the [0,1) contract.)
double preprocess(double v);

/// floor(u * 10^14) mod 256 for u in [0,1). u*10^14 < 2^53, so the integer
/// part is exact in binary64.
std::uint8_t quantize(double u);

/// k1[i] = quantize(preprocess(xs[i])), k2[i] = quantize(preprocess(ys[i])).
/// Iteration continues on RAW values; preprocessing never feeds back into
/// the dynamics.
KeystreamPair generate_keystreams(const ChaosParams& params, std::size_t length);

}  // namespace chaocipher
