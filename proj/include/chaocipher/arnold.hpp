#pragma once

#include <cstdint>
#include <optional>

#include "chaocipher/image.hpp"

namespace chaocipher {

/// Control parameters of the 3D Arnold transform. When produced by
/// derive_params the fields lie in a=[13,109], b=[23,81], c=[17,95],
/// d=[37,79], n=[7,37]; the library accepts any values (n=0 is the identity,
/// useful in tests).
struct ArnoldParams {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;
    std::uint64_t n = 0;

    bool operator==(const ArnoldParams&) const = default;
};

/// A pixel position: row x in [0,M), column y in [0,N), channel z in {0,1,2}.
struct Position {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;

    bool operator==(const Position&) const = default;
};

/// a = 13 + gvSum mod 97, b = 23 + gvSum mod 59, c = 17 + gvSum mod 79,
/// d = 37 + gvSum mod 43, n = 7 + gvSum mod 31 (each mod applied to gvSum
/// independently).
ArnoldParams derive_params(std::uint64_t gv_sum);

/// One application of the transform on an M x N grid:
///   x' = (x + a*y) mod M
///   y' = (b*x + (a*b + 1)*y) mod N
///   z' = (c*x + d*y + z) mod 3
/// Throws NonSquareError unless M == N (the map is only a bijection on a
/// square grid).
Position map_point(const Position& p, const ArnoldParams& params,
                   std::size_t rows, std::size_t cols);

/// Exact inverse of one map_point application: recover (x, y) from the 2D
/// block (determinant 1), then z = (z' - c*x - d*y) mod 3. All reductions
/// land in [0, modulus).
Position map_point_inverse(const Position& p, const ArnoldParams& params,
                           std::size_t rows, std::size_t cols);

/// Apply map_point to every position, params.n times total (simultaneous
/// update: each pass permutes the whole pixel array at once).
ColorImage scramble(const ColorImage& img, const ArnoldParams& params);

/// Exact inverse: unscramble(scramble(img, p), p) == img.
ColorImage unscramble(const ColorImage& img, const ArnoldParams& params);

/// Smallest t >= 1 such that t applications of map_point are the identity on
/// all M*M*3 positions, or nullopt if the search exceeds `cap` applications.
/// Diagnostic tool; not on the cipher path.
std::optional<std::uint64_t> period_of(const ArnoldParams& params, std::size_t m,
                                       std::uint64_t cap = 1'000'000);

}  // namespace chaocipher
