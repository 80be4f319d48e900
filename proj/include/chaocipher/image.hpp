#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace chaocipher {

/// M x N x 3 grid of 8-bit gray values, stored flat in canonical scan order:
/// index i = (x*N + y)*3 + z with row x, column y, channel z (0=R, 1=G, 2=B).
/// linearize() is therefore a copy of the underlying storage.
class ColorImage {
public:
    ColorImage() = default;
    ColorImage(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), pixels_(rows * cols * 3, 0) {}
    ColorImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t pixel_count() const noexcept { return rows_ * cols_; }
    std::size_t byte_count() const noexcept { return pixels_.size(); }
    bool square() const noexcept { return rows_ == cols_; }

    std::uint8_t at(std::size_t x, std::size_t y, std::size_t z) const {
        return pixels_[(x * cols_ + y) * 3 + z];
    }
    std::uint8_t& at(std::size_t x, std::size_t y, std::size_t z) {
        return pixels_[(x * cols_ + y) * 3 + z];
    }

    const std::vector<std::uint8_t>& bytes() const noexcept { return pixels_; }
    std::vector<std::uint8_t>& bytes() noexcept { return pixels_; }

    bool operator==(const ColorImage& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// One color plane of an image.
struct Channel {
    std::vector<std::uint8_t> values;
    char label = '?';  // 'R', 'G' or 'B'
};

enum class AlphaPolicy {
    reject,  // an alpha channel is an error
    strip,   // drop the alpha plane on load
};

/// Extract channel z (0=R, 1=G, 2=B) as a flat plane of M*N values.
Channel extract_channel(const ColorImage& img, std::size_t z);

/// Flatten to the canonical byte sequence of length M*N*3.
std::vector<std::uint8_t> linearize(const ColorImage& img);

/// Inverse of linearize. Throws ImageError if seq.size() != rows*cols*3.
ColorImage delinearize(std::vector<std::uint8_t> seq, std::size_t rows, std::size_t cols);

/// Exact integer sum of all gray values (fits 64 bits for any sane image).
std::uint64_t gray_value_sum(const ColorImage& img);

/// counts[v] = number of plane values equal to v; sums to M*N.
std::array<std::uint64_t, 256> histogram(const Channel& ch);

/// Load a lossless 8-bit RGB raster (PPM P6 or PNG). Container is detected
/// from the file's magic bytes, not its extension. Throws ImageError for
/// unreadable files, lossy containers (JPEG), non-8-bit data, or an alpha
/// channel under AlphaPolicy::reject.
ColorImage load_image(const std::filesystem::path& path,
                      AlphaPolicy alpha = AlphaPolicy::reject);

enum class ImageFormat { ppm, png };

/// Choose the container from the path's extension; PPM when ambiguous.
ImageFormat format_for_path(const std::filesystem::path& path);

/// Write losslessly; load_image(save_image(img)) round-trips bit-exactly.
void save_image(const ColorImage& img, const std::filesystem::path& path);
void save_image(const ColorImage& img, const std::filesystem::path& path, ImageFormat fmt);

}  // namespace chaocipher
