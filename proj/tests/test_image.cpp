#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "chaocipher/errors.hpp"
#include "chaocipher/image.hpp"
#include "support/test_images.hpp"

using namespace chaocipher;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::path("image_test_" + name);
}

void write_bytes(const std::filesystem::path& p, const std::string& data) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name) : path(temp_path(name)) {}
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("canonical scan order is row-major, channel-fastest") {
    ColorImage img(1, 2);
    img.at(0, 0, 0) = 1;
    img.at(0, 0, 1) = 2;
    img.at(0, 0, 2) = 3;
    img.at(0, 1, 0) = 4;
    img.at(0, 1, 1) = 5;
    img.at(0, 1, 2) = 6;
    CHECK(linearize(img) == std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});

    ColorImage one(1, 1, {7, 8, 9});
    CHECK(linearize(one) == std::vector<std::uint8_t>{7, 8, 9});
    CHECK(one.at(0, 0, 0) == 7);
    CHECK(one.at(0, 0, 2) == 9);
}

TEST_CASE("delinearize inverts linearize") {
    const ColorImage img = testsupport::random_image(8, 8, 42);
    CHECK(delinearize(linearize(img), 8, 8) == img);

    CHECK(delinearize({7, 8, 9}, 1, 1) == ColorImage(1, 1, {7, 8, 9}));
    CHECK(delinearize({0, 0, 0, 0, 0, 0}, 1, 2) == ColorImage(1, 2));
    CHECK_THROWS_AS(delinearize({1, 2, 3, 4}, 1, 1), ImageError);
    CHECK_THROWS_AS(ColorImage(2, 2, {1, 2, 3}), ImageError);
}

TEST_CASE("gray_value_sum matches a naive double loop") {
    CHECK(gray_value_sum(ColorImage(4, 4)) == 0);
    CHECK(gray_value_sum(ColorImage(1, 1, {255, 255, 255})) == 765);

    const ColorImage img = testsupport::random_image(16, 16, 7);
    std::uint64_t naive = 0;
    for (std::size_t x = 0; x < 16; ++x)
        for (std::size_t y = 0; y < 16; ++y)
            for (std::size_t z = 0; z < 3; ++z) naive += img.at(x, y, z);
    CHECK(gray_value_sum(img) == naive);
}

TEST_CASE("histogram counts every value exactly once") {
    Channel constant{std::vector<std::uint8_t>(4, 5), 'R'};
    auto counts = histogram(constant);
    CHECK(counts[5] == 4);
    CHECK(counts[4] == 0);

    Channel ramp;
    ramp.label = 'G';
    for (int v = 0; v < 256; ++v) ramp.values.push_back(static_cast<std::uint8_t>(v));
    for (const auto c : histogram(ramp)) CHECK(c == 1);

    const ColorImage img = testsupport::random_image(16, 16, 99);
    const Channel ch = extract_channel(img, 2);
    CHECK(ch.label == 'B');
    std::uint64_t naive[256] = {};
    for (const auto v : ch.values) ++naive[v];
    const auto fast = histogram(ch);
    std::uint64_t total = 0;
    for (int v = 0; v < 256; ++v) {
        CHECK(fast[v] == naive[v]);
        total += fast[v];
    }
    CHECK(total == img.pixel_count());
}

TEST_CASE("PPM round-trips bit-exactly") {
    const ColorImage img = testsupport::random_image(16, 16, 1234);
    TempFile f("roundtrip.ppm");
    save_image(img, f.path);
    const ColorImage back = load_image(f.path);
    CHECK(back == img);
    CHECK(gray_value_sum(back) == gray_value_sum(img));
}

TEST_CASE("PNG round-trips bit-exactly") {
    const ColorImage img = testsupport::random_image(8, 8, 4321);
    TempFile f("roundtrip.png");
    save_image(img, f.path);
    const ColorImage back = load_image(f.path);
    CHECK(back == img);
}

TEST_CASE("hand-written PPM files parse, including header comments") {
    TempFile black("black.ppm");
    write_bytes(black.path, std::string("P6\n# a comment\n2 2\n255\n") + std::string(12, '\0'));
    const ColorImage img = load_image(black.path);
    CHECK(img.rows() == 2);
    CHECK(img.cols() == 2);
    CHECK(img == ColorImage(2, 2));

    TempFile red("red.ppm");
    write_bytes(red.path, std::string("P6 1 1 255\n") + '\xFF' + std::string(2, '\0'));
    const ColorImage dot = load_image(red.path);
    CHECK(dot.at(0, 0, 0) == 255);
    CHECK(dot.at(0, 0, 1) == 0);
    CHECK(dot.at(0, 0, 2) == 0);
}

TEST_CASE("malformed containers are rejected") {
    TempFile wide("wide.ppm");
    write_bytes(wide.path, std::string("P6\n1 1\n65535\n") + std::string(6, '\0'));
    CHECK_THROWS_AS(load_image(wide.path), ImageError);

    TempFile trunc("trunc.ppm");
    write_bytes(trunc.path, "P6\n4 4\n255\nshort");
    CHECK_THROWS_AS(load_image(trunc.path), ImageError);

    TempFile jpeg("photo.jpg");
    write_bytes(jpeg.path, "\xFF\xD8\xFF\xE0 not really a jpeg");
    CHECK_THROWS_AS(load_image(jpeg.path), ImageError);

    TempFile junk("junk.dat");
    write_bytes(junk.path, "GIF89a nope");
    CHECK_THROWS_AS(load_image(junk.path), ImageError);

    CHECK_THROWS_AS(load_image("does_not_exist.ppm"), ImageError);
}

namespace {

void write_rgba_png(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    REQUIRE(f != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, f);
    png_set_IHDR(png, info, 2, 2, 8, PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    // rows: pixel value v = position index, alpha = 200+index
    png_byte row0[8] = {10, 11, 12, 200, 20, 21, 22, 201};
    png_byte row1[8] = {30, 31, 32, 202, 40, 41, 42, 203};
    png_bytep rows[2] = {row0, row1};
    png_write_image(png, rows);
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(f);
}

}  // namespace

TEST_CASE("alpha channel: rejected by default, stripped on request") {
    TempFile f("rgba.png");
    write_rgba_png(f.path);
    CHECK_THROWS_AS(load_image(f.path), ImageError);
    const ColorImage img = load_image(f.path, AlphaPolicy::strip);
    CHECK(img.rows() == 2);
    CHECK(img.cols() == 2);
    CHECK(img.at(0, 0, 0) == 10);
    CHECK(img.at(0, 1, 2) == 22);
    CHECK(img.at(1, 1, 0) == 40);
}

TEST_CASE("format_for_path infers container, defaulting to PPM") {
    CHECK(format_for_path("out.png") == ImageFormat::png);
    CHECK(format_for_path("out.PNG") == ImageFormat::png);
    CHECK(format_for_path("out.ppm") == ImageFormat::ppm);
    CHECK(format_for_path("out.bin") == ImageFormat::ppm);
    CHECK(format_for_path("out") == ImageFormat::ppm);
}

TEST_CASE("saving to a lossy container is refused") {
    const ColorImage img = testsupport::random_image(2, 2, 5);
    CHECK_THROWS_AS(save_image(img, "cipher.jpg"), ImageError);
    CHECK_THROWS_AS(save_image(img, "cipher.jpeg", ImageFormat::png), ImageError);
}
