#include "chaocipher/hyperchaos.hpp"

#include <cmath>
#include <string>

#include "chaocipher/errors.hpp"
#include "chaocipher/kernels.hpp"

namespace chaocipher {

RawTrajectory iterate(const ChaosParams& params, std::size_t count) {
    RawTrajectory traj;
    traj.xs.resize(count);
    traj.ys.resize(count);

    double x = params.x0;
    double y = params.y0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t1 = params.a1 * x;
        const double t2 = params.a2 * (y * y);
        const double xn = t1 - t2;
        const double yn = params.a3 * x - params.a4 * y;
        if (!std::isfinite(xn) || !std::isfinite(yn))
            throw DivergenceError("hyper-chaotic trajectory escaped to a non-finite value at "
                                  "iterate " + std::to_string(i) + "; key parameters unusable",
                                  i);
        traj.xs[i] = x = xn;
        traj.ys[i] = y = yn;
    }
    return traj;
}

double preprocess(double v) {
    const double w = 1e6 * v;
    double f = w - std::floor(w);
    // w - floor(w) can round to exactly 1.0 (tiny negative w), and non-finite
    // w yields NaN; both wrap to 0.0 to keep the [0,1) contract.
    if (!(f >= 0.0 && f < 1.0)) f = 0.0;
    return f;
}

std::uint8_t quantize(double u) {
    const double t = std::floor(u * 1e14);
    return static_cast<std::uint8_t>(static_cast<std::uint64_t>(t) & 0xFF);
}

KeystreamPair generate_keystreams(const ChaosParams& params, std::size_t length) {
    const RawTrajectory traj = iterate(params, length);
    KeystreamPair ks;
    ks.k1.resize(length);
    ks.k2.resize(length);
    const kernels::Ops& ops = kernels::active();
    ops.quantize_bytes(traj.xs.data(), ks.k1.data(), length);
    ops.quantize_bytes(traj.ys.data(), ks.k2.data(), length);
    return ks;
}

}  // namespace chaocipher
