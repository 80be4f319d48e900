#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "chaocipher/errors.hpp"
#include "chaocipher/image.hpp"

namespace chaocipher {

namespace {

// --- PPM (P6, maxval 255) ---------------------------------------------------

int ppm_next_token_char(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    return c;
}

std::size_t ppm_read_number(std::istream& in, const char* what) {
    int c = ppm_next_token_char(in);
    if (c == EOF || !std::isdigit(c)) throw ImageError(std::string("PPM header: bad ") + what);
    std::size_t value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > (std::size_t{1} << 32)) throw ImageError(std::string("PPM header: ") + what + " out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

ColorImage load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageError("cannot open " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '6') throw ImageError("not a P6 PPM: " + path.string());
    const std::size_t cols = ppm_read_number(in, "width");
    const std::size_t rows = ppm_read_number(in, "height");
    const std::size_t maxval = ppm_read_number(in, "maxval");
    if (cols == 0 || rows == 0) throw ImageError("PPM with zero dimension: " + path.string());
    if (maxval != 255)
        throw ImageError("PPM maxval " + std::to_string(maxval) + " is not 8-bit; re-encode with maxval 255");
    in.get();  // the single whitespace byte before the raster
    std::vector<std::uint8_t> pixels(rows * cols * 3);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != pixels.size())
        throw ImageError("truncated PPM raster: " + path.string());
    return ColorImage(rows, cols, std::move(pixels));
}

void save_ppm(const ColorImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageError("cannot write " + path.string());
    out << "P6\n" << img.cols() << " " << img.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.bytes().data()),
              static_cast<std::streamsize>(img.byte_count()));
    if (!out) throw ImageError("write failed: " + path.string());
}

// --- PNG (8-bit RGB, no interlace) ------------------------------------------

struct FileCloser {
    std::FILE* f = nullptr;
    ~FileCloser() {
        if (f) std::fclose(f);
    }
};

// libpng reports errors by longjmp; these helpers keep every setjmp frame
// free of C++ objects. Each returns false when libpng aborted.

bool png_do_read_header(png_structp png, png_infop info, std::FILE* f) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_init_io(png, f);
    png_read_info(png, info);
    return true;
}

bool png_do_update(png_structp png, png_infop info, bool strip) {
    if (setjmp(png_jmpbuf(png))) return false;
    if (strip) png_set_strip_alpha(png);
    png_read_update_info(png, info);
    return true;
}

bool png_do_read_rows(png_structp png, png_bytepp rows) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_read_image(png, rows);
    png_read_end(png, nullptr);
    return true;
}

bool png_do_write(png_structp png, png_infop info, std::FILE* f, png_uint_32 cols,
                  png_uint_32 row_count, png_bytepp rows) {
    if (setjmp(png_jmpbuf(png))) return false;
    png_init_io(png, f);
    png_set_IHDR(png, info, cols, row_count, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_rows(png, rows, row_count);
    png_write_end(png, info);
    return true;
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

ColorImage load_png(const std::filesystem::path& path, AlphaPolicy alpha) {
    FileCloser file{std::fopen(path.string().c_str(), "rb")};
    if (!file.f) throw ImageError("cannot open " + path.string());

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    r.info = r.png ? png_create_info_struct(r.png) : nullptr;
    if (!r.png || !r.info) throw ImageError("libpng init failed");

    if (!png_do_read_header(r.png, r.info, file.f))
        throw ImageError("corrupt PNG: " + path.string());

    const png_uint_32 cols = png_get_image_width(r.png, r.info);
    const png_uint_32 rows = png_get_image_height(r.png, r.info);
    const int depth = png_get_bit_depth(r.png, r.info);
    const int color = png_get_color_type(r.png, r.info);

    if (png_get_interlace_type(r.png, r.info) != PNG_INTERLACE_NONE)
        throw ImageError("interlaced PNG is not a supported container: " + path.string());
    if (depth != 8)
        throw ImageError("PNG bit depth " + std::to_string(depth) +
                         " is not 8-bit; re-encode: " + path.string());
    if (color == PNG_COLOR_TYPE_RGBA && alpha == AlphaPolicy::reject)
        throw ImageError("PNG has an alpha channel; pass the strip-alpha option or "
                         "re-encode as RGB: " + path.string());
    if (color != PNG_COLOR_TYPE_RGB && color != PNG_COLOR_TYPE_RGBA)
        throw ImageError("PNG color type is not 8-bit RGB; re-encode: " + path.string());

    if (!png_do_update(r.png, r.info, color == PNG_COLOR_TYPE_RGBA))
        throw ImageError("corrupt PNG: " + path.string());

    std::vector<std::uint8_t> pixels(std::size_t{rows} * cols * 3);
    std::vector<png_bytep> row_ptrs(rows);
    for (png_uint_32 i = 0; i < rows; ++i)
        row_ptrs[i] = pixels.data() + std::size_t{i} * cols * 3;
    if (!png_do_read_rows(r.png, row_ptrs.data()))
        throw ImageError("corrupt PNG: " + path.string());

    return ColorImage(rows, cols, std::move(pixels));
}

void save_png(const ColorImage& img, const std::filesystem::path& path) {
    FileCloser file{std::fopen(path.string().c_str(), "wb")};
    if (!file.f) throw ImageError("cannot write " + path.string());

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    w.info = w.png ? png_create_info_struct(w.png) : nullptr;
    if (!w.png || !w.info) throw ImageError("libpng init failed");

    std::vector<png_bytep> row_ptrs(img.rows());
    for (std::size_t i = 0; i < img.rows(); ++i)
        row_ptrs[i] = const_cast<png_bytep>(img.bytes().data() + i * img.cols() * 3);

    if (!png_do_write(w.png, w.info, file.f, static_cast<png_uint_32>(img.cols()),
                      static_cast<png_uint_32>(img.rows()), row_ptrs.data()))
        throw ImageError("PNG write failed: " + path.string());
}

}  // namespace

ColorImage load_image(const std::filesystem::path& path, AlphaPolicy alpha) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw ImageError("cannot open " + path.string());
    unsigned char magic[8] = {0};
    probe.read(reinterpret_cast<char*>(magic), sizeof(magic));
    probe.close();

    if (magic[0] == 'P' && magic[1] == '6') return load_ppm(path);
    if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G')
        return load_png(path, alpha);
    if (magic[0] == 0xFF && magic[1] == 0xD8)
        throw ImageError("JPEG is a lossy container and would corrupt ciphertext; "
                         "re-encode losslessly (PPM or PNG): " + path.string());
    throw ImageError("unrecognized image container: " + path.string());
}

ImageFormat format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png") return ImageFormat::png;
    return ImageFormat::ppm;
}

void save_image(const ColorImage& img, const std::filesystem::path& path) {
    save_image(img, path, format_for_path(path));
}

void save_image(const ColorImage& img, const std::filesystem::path& path, ImageFormat fmt) {
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".jpg" || ext == ".jpeg")
        throw ImageError("refusing lossy container for ciphertext: " + path.string());
    switch (fmt) {
        case ImageFormat::ppm: save_ppm(img, path); break;
        case ImageFormat::png: save_png(img, path); break;
    }
}

}  // namespace chaocipher
