#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>
#include <set>

#include "chaocipher/arnold.hpp"
#include "chaocipher/errors.hpp"
#include "chaocipher/image.hpp"
#include "support/test_images.hpp"

using namespace chaocipher;

TEST_CASE("derive_params implements the five modular formulas") {
    CHECK(derive_params(0) == ArnoldParams{13, 23, 17, 37, 7});
    CHECK(derive_params(1) == ArnoldParams{14, 24, 18, 38, 8});
    CHECK(derive_params(97) == ArnoldParams{13, 61, 35, 48, 11});
}

TEST_CASE("derive_params stays inside the documented ranges") {
    bool in_range = true;
    for (std::uint64_t gv = 0; gv <= 1'000'000; ++gv) {
        const ArnoldParams p = derive_params(gv);
        in_range = in_range && p.a >= 13 && p.a <= 109 && p.b >= 23 && p.b <= 81 &&
                   p.c >= 17 && p.c <= 95 && p.d >= 37 && p.d <= 79 && p.n >= 7 && p.n <= 37;
    }
    CHECK(in_range);
}

TEST_CASE("map_point matches hand-computed examples") {
    const ArnoldParams unit{1, 1, 1, 1, 1};
    CHECK(map_point({0, 0, 0}, unit, 8, 8) == Position{0, 0, 0});
    CHECK(map_point({1, 2, 0}, unit, 8, 8) == Position{3, 5, 0});

    const ArnoldParams base{13, 23, 17, 37, 7};
    CHECK(map_point({1, 0, 2}, base, 4, 4) == Position{1, 3, 1});

    CHECK_THROWS_AS(map_point({0, 0, 0}, unit, 4, 8), NonSquareError);
}

TEST_CASE("map_point_inverse undoes map_point everywhere") {
    const ArnoldParams unit{1, 1, 1, 1, 1};
    CHECK(map_point_inverse({3, 5, 0}, unit, 8, 8) == Position{1, 2, 0});

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ArnoldParams p = derive_params(rng() % 1'000'000);
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = 0; y < 8; ++y)
                for (std::size_t z = 0; z < 3; ++z) {
                    const Position q = map_point({x, y, z}, p, 8, 8);
                    CHECK(map_point_inverse(q, p, 8, 8) == Position{x, y, z});
                }
    }
}

TEST_CASE("one application is a bijection over all positions") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const ArnoldParams p = derive_params(rng() % 10'000'000);
        std::set<std::array<std::size_t, 3>> images;
        for (std::size_t x = 0; x < 8; ++x)
            for (std::size_t y = 0; y < 8; ++y)
                for (std::size_t z = 0; z < 3; ++z) {
                    const Position q = map_point({x, y, z}, p, 8, 8);
                    CHECK(q.x < 8);
                    CHECK(q.y < 8);
                    CHECK(q.z < 3);
                    images.insert({q.x, q.y, q.z});
                }
        CHECK(images.size() == 8 * 8 * 3);
    }
}

TEST_CASE("scramble matches a brute-force per-position oracle") {
    const ArnoldParams p{13, 23, 17, 37, 7};
    const ColorImage img = testsupport::random_image(4, 4, 33);
    const ColorImage fast = scramble(img, p);

    ColorImage oracle(4, 4);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t z = 0; z < 3; ++z) {
                Position q{x, y, z};
                for (std::uint64_t i = 0; i < p.n; ++i) q = map_point(q, p, 4, 4);
                oracle.at(q.x, q.y, q.z) = img.at(x, y, z);
            }
    CHECK(fast == oracle);
}

TEST_CASE("scramble edge cases: identity params and single pixel") {
    const ColorImage img = testsupport::random_image(8, 8, 44);
    CHECK(scramble(img, ArnoldParams{5, 6, 7, 8, 0}) == img);

    const ColorImage dot = testsupport::random_image(1, 1, 45);
    CHECK(scramble(dot, derive_params(12345)) == dot);

    CHECK_THROWS_AS(scramble(ColorImage(2, 3), derive_params(1)), NonSquareError);
    CHECK_THROWS_AS(unscramble(ColorImage(2, 3), derive_params(1)), NonSquareError);
}

TEST_CASE("unscramble inverts scramble; values are conserved") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const ColorImage img = testsupport::random_image(8, 8, rng());
        const ArnoldParams p = derive_params(gray_value_sum(img));
        const ColorImage s = scramble(img, p);

        CHECK(unscramble(s, p) == img);
        CHECK(gray_value_sum(s) == gray_value_sum(img));

        // pooled histogram invariance: treat all bytes as one channel
        Channel all_before{img.bytes(), '*'};
        Channel all_after{s.bytes(), '*'};
        CHECK(histogram(all_before) == histogram(all_after));
    }
}

TEST_CASE("scrambling mixes pixels across channels") {
    ColorImage img(8, 8);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) {
            img.at(x, y, 0) = 1;
            img.at(x, y, 1) = 2;
            img.at(x, y, 2) = 3;
        }
    const ColorImage s = scramble(img, derive_params(gray_value_sum(img)));
    bool mixed = false;
    for (std::size_t z = 0; z < 3 && !mixed; ++z) {
        const Channel ch = extract_channel(s, z);
        for (const auto v : ch.values)
            if (v != ch.values.front()) {
                mixed = true;
                break;
            }
    }
    CHECK(mixed);
}

TEST_CASE("period_of finds the exact permutation order") {
    CHECK(period_of(ArnoldParams{5, 6, 7, 8, 1}, 1) == 1);

    const ArnoldParams unit{1, 1, 1, 1, 1};
    const auto t = period_of(unit, 2);
    REQUIRE(t.has_value());
    CHECK(*t >= 1);

    // t applications must be the identity...
    const ColorImage img = testsupport::random_image(2, 2, 66);
    CHECK(scramble(img, ArnoldParams{1, 1, 1, 1, *t}) == img);
    // ...and no smaller count may be (checks minimality against brute force)
    for (std::uint64_t shorter = 1; shorter < *t; ++shorter)
        CHECK(scramble(img, ArnoldParams{1, 1, 1, 1, shorter}) != img);

    CHECK(period_of(unit, 8, /*cap=*/1) == std::nullopt);
}
