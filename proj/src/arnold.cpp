#include "chaocipher/arnold.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "chaocipher/errors.hpp"

namespace chaocipher {

namespace {

void require_square(std::size_t rows, std::size_t cols) {
    if (rows != cols)
        throw NonSquareError("Arnold transform requires a square image, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
}

// Reduction into [0, m) for possibly negative intermediates.
std::size_t mod_floor(std::int64_t v, std::int64_t m) {
    const std::int64_t r = v % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}

// One-step position permutation as a table over flat canonical indices:
// table[i] = flat index of map_point(position(i)).
std::vector<std::uint32_t> build_step_table(const ArnoldParams& params, std::size_t m) {
    std::vector<std::uint32_t> table(m * m * 3);
    std::size_t i = 0;
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
            for (std::size_t z = 0; z < 3; ++z, ++i) {
                const Position q = map_point({x, y, z}, params, m, m);
                table[i] = static_cast<std::uint32_t>((q.x * m + q.y) * 3 + q.z);
            }
        }
    }
    return table;
}

}  // namespace

ArnoldParams derive_params(std::uint64_t gv_sum) {
    return ArnoldParams{
        13 + gv_sum % 97,
        23 + gv_sum % 59,
        17 + gv_sum % 79,
        37 + gv_sum % 43,
        7 + gv_sum % 31,
    };
}

Position map_point(const Position& p, const ArnoldParams& params,
                   std::size_t rows, std::size_t cols) {
    require_square(rows, cols);
    const std::uint64_t x = p.x, y = p.y, z = p.z;
    return Position{
        static_cast<std::size_t>((x + params.a * y) % rows),
        static_cast<std::size_t>((params.b * x + (params.a * params.b + 1) * y) % cols),
        static_cast<std::size_t>((params.c * x + params.d * y + z) % 3),
    };
}

Position map_point_inverse(const Position& p, const ArnoldParams& params,
                           std::size_t rows, std::size_t cols) {
    require_square(rows, cols);
    const auto a = static_cast<std::int64_t>(params.a);
    const auto b = static_cast<std::int64_t>(params.b);
    const auto c = static_cast<std::int64_t>(params.c);
    const auto d = static_cast<std::int64_t>(params.d);
    const auto xp = static_cast<std::int64_t>(p.x);
    const auto yp = static_cast<std::int64_t>(p.y);
    const auto m = static_cast<std::int64_t>(rows);

    const std::size_t x = mod_floor((a * b + 1) * xp - a * yp, m);
    const std::size_t y = mod_floor(-b * xp + yp, m);
    const std::size_t z = mod_floor(static_cast<std::int64_t>(p.z) -
                                        c * static_cast<std::int64_t>(x) -
                                        d * static_cast<std::int64_t>(y),
                                    3);
    return Position{x, y, z};
}

ColorImage scramble(const ColorImage& img, const ArnoldParams& params) {
    require_square(img.rows(), img.cols());
    if (params.n == 0 || img.pixel_count() <= 1) return img;

    const auto table = build_step_table(params, img.rows());
    std::vector<std::uint8_t> src = img.bytes();
    std::vector<std::uint8_t> dst(src.size());
    for (std::uint64_t pass = 0; pass < params.n; ++pass) {
        for (std::size_t i = 0; i < src.size(); ++i) dst[table[i]] = src[i];
        src.swap(dst);
    }
    return ColorImage(img.rows(), img.cols(), std::move(src));
}

ColorImage unscramble(const ColorImage& img, const ArnoldParams& params) {
    require_square(img.rows(), img.cols());
    if (params.n == 0 || img.pixel_count() <= 1) return img;

    const auto table = build_step_table(params, img.rows());
    std::vector<std::uint8_t> src = img.bytes();
    std::vector<std::uint8_t> dst(src.size());
    for (std::uint64_t pass = 0; pass < params.n; ++pass) {
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[table[i]];
        src.swap(dst);
    }
    return ColorImage(img.rows(), img.cols(), std::move(src));
}

std::optional<std::uint64_t> period_of(const ArnoldParams& params, std::size_t m,
                                       std::uint64_t cap) {
    const auto table = build_step_table(params, m);
    std::vector<std::uint32_t> cur(table.size());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = static_cast<std::uint32_t>(i);

    for (std::uint64_t t = 1; t <= cap; ++t) {
        bool identity = true;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i] = table[cur[i]];
            if (cur[i] != i) identity = false;
        }
        if (identity) return t;
    }
    return std::nullopt;
}

}  // namespace chaocipher
