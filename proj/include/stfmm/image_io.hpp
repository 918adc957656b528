// PGM (P5/P2) and uncompressed 8-bit palette BMP readers/writers.
#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "stfmm/errors.hpp"
#include "stfmm/gray_image.hpp"

namespace stfmm {

enum class PnmMode { binary, ascii };

namespace detail {

inline constexpr long max_dimension = 1 << 16;

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
inline long pnm_read_int(std::istream& in, const char* what) {
    int c = in.get();
    for (;;) {
        if (c == std::char_traits<char>::eof())
            throw FormatError(std::string("pgm: missing ") + what);
        if (c == '#') {
            do c = in.get();
            while (c != std::char_traits<char>::eof() && c != '\n');
            c = in.get();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            c = in.get();
            continue;
        }
        break;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
        throw FormatError(std::string("pgm: malformed ") + what);
    long value = 0;
    while (c != std::char_traits<char>::eof() && std::isdigit(static_cast<unsigned char>(c))) {
        value = value * 10 + (c - '0');
        if (value > 1'000'000'000) throw FormatError(std::string("pgm: ") + what + " too large");
        c = in.get();
    }
    if (c != std::char_traits<char>::eof()) in.unget();
    return value;
}

inline std::uint16_t rd_u16(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

inline std::uint32_t rd_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

inline std::int32_t rd_i32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::int32_t>(rd_u32(b, off));
}

inline void wr_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void wr_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

inline std::size_t bmp_row_stride(int width) {
    return (static_cast<std::size_t>(width) + 3) & ~static_cast<std::size_t>(3);
}

} // namespace detail

// Reads a binary (P5) or plain (P2) PGM stream with maxval <= 255. Header
// comments are accepted; both encodings of the same raster load identically.
inline GrayImage load_pgm(std::istream& in) {
    char m0 = 0, m1 = 0;
    if (!in.get(m0) || !in.get(m1) || m0 != 'P' || (m1 != '5' && m1 != '2'))
        throw FormatError("pgm: stream does not start with P5 or P2");
    const bool binary = m1 == '5';
    const long width = detail::pnm_read_int(in, "width");
    const long height = detail::pnm_read_int(in, "height");
    const long maxval = detail::pnm_read_int(in, "maxval");
    if (width < 1 || height < 1) throw FormatError("pgm: dimensions must be positive");
    if (width > detail::max_dimension || height > detail::max_dimension)
        throw FormatError("pgm: image too large");
    if (maxval < 1 || maxval > 255)
        throw FormatError("pgm: maxval " + std::to_string(maxval) + " outside [1, 255]");
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width * height));
    if (binary) {
        const int sep = in.get();
        if (sep == std::char_traits<char>::eof() || !std::isspace(static_cast<unsigned char>(sep)))
            throw FormatError("pgm: missing whitespace before raster");
        in.read(reinterpret_cast<char*>(pixels.data()),
                static_cast<std::streamsize>(pixels.size()));
        if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
            throw FormatError("pgm: truncated raster");
        if (maxval < 255)
            for (std::uint8_t p : pixels)
                if (p > maxval) throw FormatError("pgm: sample exceeds maxval");
    } else {
        for (auto& p : pixels) {
            const long v = detail::pnm_read_int(in, "sample");
            if (v > maxval) throw FormatError("pgm: sample exceeds maxval");
            p = static_cast<std::uint8_t>(v);
        }
    }
    return {static_cast<int>(width), static_cast<int>(height), std::move(pixels)};
}

// Writes maxval 255; binary mode emits the raster verbatim, plain mode
// wraps lines below 70 characters. Never writes comments.
inline void save_pgm(const GrayImage& img, std::ostream& out, PnmMode mode = PnmMode::binary) {
    out << (mode == PnmMode::binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << "255\n";
    if (mode == PnmMode::binary) {
        out.write(reinterpret_cast<const char*>(img.pixels().data()),
                  static_cast<std::streamsize>(img.pixel_count()));
    } else {
        std::size_t line_len = 0;
        for (std::uint8_t p : img.pixels()) {
            const std::string token = std::to_string(p);
            if (line_len == 0) {
                out << token;
                line_len = token.size();
            } else if (line_len + 1 + token.size() > 69) {
                out << '\n' << token;
                line_len = token.size();
            } else {
                out << ' ' << token;
                line_len += 1 + token.size();
            }
        }
        out << '\n';
    }
    if (!out) throw IoError("pgm: stream write failed");
}

// Reads an uncompressed 8-bit BMP with a 40-byte info header. Any palette
// is accepted as long as every used entry is gray (r == g == b); pixel
// index i maps to that entry's gray value. Rows are bottom-up unless the
// height is negative.
inline GrayImage load_bmp8(std::istream& in) {
    const std::vector<std::uint8_t> buf{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
    if (buf.size() < 54) throw FormatError("bmp: truncated header");
    if (buf[0] != 'B' || buf[1] != 'M') throw FormatError("bmp: missing BM magic");
    const std::uint32_t data_offset = detail::rd_u32(buf, 10);
    const std::uint32_t info_size = detail::rd_u32(buf, 14);
    if (info_size != 40)
        throw FormatError("bmp: unsupported info header size " + std::to_string(info_size));
    const std::int32_t width = detail::rd_i32(buf, 18);
    const std::int32_t raw_height = detail::rd_i32(buf, 22);
    const std::uint16_t planes = detail::rd_u16(buf, 26);
    const std::uint16_t bit_count = detail::rd_u16(buf, 28);
    const std::uint32_t compression = detail::rd_u32(buf, 30);
    std::uint32_t palette_count = detail::rd_u32(buf, 46);
    if (planes != 1) throw FormatError("bmp: plane count must be 1");
    if (bit_count != 8)
        throw FormatError("bmp: only 8 bits per pixel supported, got " +
                          std::to_string(bit_count));
    if (compression != 0) throw FormatError("bmp: compressed data not supported");
    const bool top_down = raw_height < 0;
    const std::int64_t height = top_down ? -static_cast<std::int64_t>(raw_height) : raw_height;
    if (width < 1 || height < 1) throw FormatError("bmp: dimensions must be positive");
    if (width > detail::max_dimension || height > detail::max_dimension)
        throw FormatError("bmp: image too large");
    if (palette_count == 0) palette_count = 256;
    if (palette_count > 256) throw FormatError("bmp: palette too large");
    if (buf.size() < 54 + 4ULL * palette_count) throw FormatError("bmp: truncated palette");
    std::array<std::uint8_t, 256> gray{};
    for (std::uint32_t i = 0; i < palette_count; ++i) {
        const std::uint8_t b = buf[54 + 4 * i];
        const std::uint8_t g = buf[54 + 4 * i + 1];
        const std::uint8_t r = buf[54 + 4 * i + 2];
        if (b != g || g != r)
            throw FormatError("bmp: palette entry " + std::to_string(i) + " is not grayscale");
        gray[i] = r;
    }
    const std::size_t stride = detail::bmp_row_stride(width);
    if (data_offset < 54 + 4ULL * palette_count || data_offset > buf.size())
        throw FormatError("bmp: bad pixel data offset");
    if (buf.size() < data_offset + stride * static_cast<std::size_t>(height))
        throw FormatError("bmp: truncated pixel data");
    GrayImage img(width, static_cast<int>(height));
    for (int y = 0; y < static_cast<int>(height); ++y) {
        const std::size_t stored_row = top_down ? y : static_cast<std::size_t>(height) - 1 - y;
        const std::size_t row_start = data_offset + stored_row * stride;
        for (int x = 0; x < width; ++x) {
            const std::uint8_t index = buf[row_start + static_cast<std::size_t>(x)];
            if (index >= palette_count)
                throw FormatError("bmp: pixel index " + std::to_string(index) +
                                  " outside palette");
            img.at(x, y) = gray[index];
        }
    }
    return img;
}

// Emits a 14-byte file header, a 40-byte info header, the 256-entry
// identity gray palette (i, i, i, 0), then bottom-up rows padded to 4-byte
// multiples.
inline void save_bmp8(const GrayImage& img, std::ostream& out) {
    const std::size_t stride = detail::bmp_row_stride(img.width());
    const std::size_t image_bytes = stride * static_cast<std::size_t>(img.height());
    const std::uint32_t data_offset = 14 + 40 + 256 * 4;
    std::vector<std::uint8_t> buf;
    buf.reserve(data_offset + image_bytes);
    buf.push_back('B');
    buf.push_back('M');
    detail::wr_u32(buf, static_cast<std::uint32_t>(data_offset + image_bytes));
    detail::wr_u16(buf, 0);
    detail::wr_u16(buf, 0);
    detail::wr_u32(buf, data_offset);
    detail::wr_u32(buf, 40);
    detail::wr_u32(buf, static_cast<std::uint32_t>(img.width()));
    detail::wr_u32(buf, static_cast<std::uint32_t>(img.height()));
    detail::wr_u16(buf, 1);
    detail::wr_u16(buf, 8);
    detail::wr_u32(buf, 0);
    detail::wr_u32(buf, static_cast<std::uint32_t>(image_bytes));
    detail::wr_u32(buf, 0);
    detail::wr_u32(buf, 0);
    detail::wr_u32(buf, 256);
    detail::wr_u32(buf, 0);
    for (int i = 0; i < 256; ++i) {
        const auto v = static_cast<std::uint8_t>(i);
        buf.push_back(v);
        buf.push_back(v);
        buf.push_back(v);
        buf.push_back(0);
    }
    for (int y = img.height() - 1; y >= 0; --y) {
        for (int x = 0; x < img.width(); ++x) buf.push_back(img.at(x, y));
        for (std::size_t pad = static_cast<std::size_t>(img.width()); pad < stride; ++pad)
            buf.push_back(0);
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("bmp: stream write failed");
}

enum class ImageFormat { pgm_binary, pgm_ascii, bmp8 };

struct LoadedImage {
    GrayImage image;
    ImageFormat format = ImageFormat::pgm_binary;
};

// Loads a file, identifying the format by magic (P5/P2/BM) rather than by
// extension, and reports which variant was found so callers can write the
// result back in kind.
inline LoadedImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in) throw FormatError(path.string() + ": too short to identify");
    in.seekg(0);
    if (magic[0] == 'P' && magic[1] == '5') return {load_pgm(in), ImageFormat::pgm_binary};
    if (magic[0] == 'P' && magic[1] == '2') return {load_pgm(in), ImageFormat::pgm_ascii};
    if (magic[0] == 'B' && magic[1] == 'M') return {load_bmp8(in), ImageFormat::bmp8};
    throw FormatError(path.string() + ": unrecognized image magic");
}

inline void save_image(const GrayImage& img, const std::filesystem::path& path,
                       ImageFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    switch (format) {
        case ImageFormat::pgm_binary: save_pgm(img, out, PnmMode::binary); break;
        case ImageFormat::pgm_ascii: save_pgm(img, out, PnmMode::ascii); break;
        case ImageFormat::bmp8: save_bmp8(img, out); break;
    }
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

} // namespace stfmm
