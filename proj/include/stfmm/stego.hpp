// Embedding and extraction: one hidden character per k x k window, carried
// by the residue of a single perturbed pixel.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stfmm/charset.hpp"
#include "stfmm/errors.hpp"
#include "stfmm/fmm.hpp"
#include "stfmm/gray_image.hpp"
#include "stfmm/metrics.hpp"

namespace stfmm {

// k x k tiling of an image. Windows run row-major across the image (left to
// right, then top to bottom); pixels inside a window are numbered 1..k^2
// down each column, leftmost column first. Rows and columns not covered by
// a complete window are margins and never carry payload.
class WindowGrid {
public:
    WindowGrid(int image_width, int image_height, int k)
        : k_(check_edge(k)), cols_(image_width / k_), rows_(image_height / k_) {
        if (image_width < 0 || image_height < 0)
            throw std::invalid_argument("negative image dimensions");
    }

    int k() const noexcept { return k_; }
    int cols() const noexcept { return cols_; }
    int rows() const noexcept { return rows_; }
    int window_count() const noexcept { return cols_ * rows_; }

    int origin_x(int window) const noexcept { return (window % cols_) * k_; }
    int origin_y(int window) const noexcept { return (window / cols_) * k_; }

    // Image coordinates of the 1-based column-wise `position` in `window`.
    std::pair<int, int> pixel_at(int window, int position) const {
        const int local_col = (position - 1) / k_;
        const int local_row = (position - 1) % k_;
        return {origin_x(window) + local_col, origin_y(window) + local_row};
    }

    // 1-based column-wise position of local coordinates within a window.
    int position(int local_col, int local_row) const noexcept {
        return local_col * k_ + local_row + 1;
    }

private:
    static int check_edge(int k) {
        if (k < 2) throw std::invalid_argument("window edge must be at least 2");
        return k;
    }

    int k_;
    int cols_;
    int rows_;
};

// Embedding parameters. The window edge doubles as the stego key; when
// omitted it defaults to window_size_for(charset.size).
struct StegoParams {
    int window;
    Charset charset;

    StegoParams(int window_edge, const Charset& cs) : window(window_edge), charset(cs) {
        if (window < 2) throw std::invalid_argument("window edge must be at least 2");
        if (charset.size > 4 * window * window)
            throw std::invalid_argument("charset " + std::string(charset.name) + " (" +
                                        std::to_string(charset.size) +
                                        " characters) does not fit in a window of edge " +
                                        std::to_string(window));
    }

    explicit StegoParams(const Charset& cs) : StegoParams(window_size_for(cs.size), cs) {}
};

// Number of characters the image can hold: one per complete window. Images
// smaller than k x k report 0.
inline int capacity(const GrayImage& img, int k) {
    if (k < 2) throw std::invalid_argument("window edge must be at least 2");
    return (img.width() / k) * (img.height() / k);
}

// Quantizes the cover, then perturbs one pixel per message character: the
// pixel at the character's column-wise position gets base + remainder, or
// base - (5 - remainder) when that would leave the 8-bit range (only
// possible at base 255). Either way the pixel's residue mod 5 is the
// remainder, which is all extraction reads. Sentinel spaces ride the
// window's centre pixel as a bare remainder 4.
inline GrayImage embed(const GrayImage& cover, std::string_view message, const StegoParams& p) {
    const int cap = capacity(cover, p.window);
    if (message.size() > static_cast<std::size_t>(cap))
        throw CapacityError("message of " + std::to_string(message.size()) +
                            " characters exceeds capacity " + std::to_string(cap));
    GrayImage stego = fmm_image(cover);
    const WindowGrid grid(cover.width(), cover.height(), p.window);
    const int span = p.window * p.window;
    for (std::size_t i = 0; i < message.size(); ++i) {
        const int code = static_cast<unsigned char>(message[i]);
        int index = 0;
        try {
            index = char_to_index(code, p.charset);
        } catch (const UnsupportedCharacterError&) {
            throw UnsupportedCharacterError(code, i);
        }
        const IndexEncoding slot = index == space_sentinel_index
                                       ? IndexEncoding{(span + 1) / 2, 4}
                                       : encode_index(index, p.window);
        const auto [x, y] = grid.pixel_at(static_cast<int>(i), slot.position);
        const int base = stego.at(x, y);
        const int value = base + slot.remainder;
        stego.at(x, y) =
            static_cast<std::uint8_t>(value <= 255 ? value : base - (5 - slot.remainder));
    }
    return stego;
}

struct WindowRef {
    int row = 0;
    int col = 0;

    bool operator==(const WindowRef&) const = default;
};

struct ExtractReport {
    std::string text;
    std::vector<WindowRef> corrupt_windows;  // populated only in lenient mode
};

// Scans windows row-major. A window with no residue pixel ends the message;
// exactly one residue pixel decodes to a character; anything else is a
// corrupt window, which throws in strict mode and is skipped (and recorded)
// in lenient mode.
inline ExtractReport extract_report(const GrayImage& stego, const StegoParams& p,
                                    bool lenient = false) {
    const WindowGrid grid(stego.width(), stego.height(), p.window);
    ExtractReport out;
    for (int w = 0; w < grid.window_count(); ++w) {
        const int ox = grid.origin_x(w);
        const int oy = grid.origin_y(w);
        int residues = 0;
        IndexEncoding slot;
        for (int lc = 0; lc < p.window; ++lc) {
            for (int lr = 0; lr < p.window; ++lr) {
                const int rem = stego.at(ox + lc, oy + lr) % 5;
                if (rem == 0) continue;
                ++residues;
                slot = {grid.position(lc, lr), rem};
            }
        }
        if (residues == 0) break;
        const WindowRef ref{w / grid.cols(), w % grid.cols()};
        if (residues > 1) {
            if (!lenient)
                throw CorruptWindowError(ref.row, ref.col,
                                         std::to_string(residues) + " residue pixels");
            out.corrupt_windows.push_back(ref);
            continue;
        }
        try {
            out.text.push_back(static_cast<char>(decode_index(slot, p.window, p.charset)));
        } catch (const CorruptEncodingError& e) {
            if (!lenient) throw CorruptWindowError(ref.row, ref.col, e.what());
            out.corrupt_windows.push_back(ref);
        }
    }
    return out;
}

inline std::string extract(const GrayImage& stego, const StegoParams& p) {
    return extract_report(stego, p).text;
}

struct EmbedResult {
    GrayImage stego;
    QualityReport quality;
};

// embed() plus the PSNR of the stego image against the original cover.
inline EmbedResult embed_then_report(const GrayImage& cover, std::string_view message,
                                     const StegoParams& p) {
    EmbedResult result{embed(cover, message, p), {}};
    result.quality = psnr(cover, result.stego);
    return result;
}

} // namespace stfmm
