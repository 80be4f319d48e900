#include "chaocipher/image.hpp"

#include <utility>

#include "chaocipher/errors.hpp"
#include "chaocipher/kernels.hpp"

namespace chaocipher {

ColorImage::ColorImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
    if (pixels_.size() != rows_ * cols_ * 3)
        throw ImageError("pixel buffer size does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + "x3");
}

Channel extract_channel(const ColorImage& img, std::size_t z) {
    Channel ch;
    ch.label = "RGB?"[z < 3 ? z : 3];
    ch.values.resize(img.pixel_count());
    const std::uint8_t* src = img.bytes().data();
    for (std::size_t i = 0; i < ch.values.size(); ++i) ch.values[i] = src[i * 3 + z];
    return ch;
}

std::vector<std::uint8_t> linearize(const ColorImage& img) { return img.bytes(); }

ColorImage delinearize(std::vector<std::uint8_t> seq, std::size_t rows, std::size_t cols) {
    if (seq.size() != rows * cols * 3)
        throw ImageError("sequence length " + std::to_string(seq.size()) +
                         " does not match dimensions " + std::to_string(rows) + "x" +
                         std::to_string(cols) + "x3");
    return ColorImage(rows, cols, std::move(seq));
}

std::uint64_t gray_value_sum(const ColorImage& img) {
    const auto& b = img.bytes();
    return kernels::active().byte_sum(b.data(), b.size());
}

std::array<std::uint64_t, 256> histogram(const Channel& ch) {
    std::array<std::uint64_t, 256> counts{};
    kernels::active().histogram256(ch.values.data(), ch.values.size(), counts.data());
    return counts;
}

}  // namespace chaocipher
