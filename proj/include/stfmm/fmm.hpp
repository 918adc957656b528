// Five Modulus Method quantizer: snap intensities to multiples of five.
#pragma once

#include <cstdint>

#include "stfmm/gray_image.hpp"

namespace stfmm {

// Nearest multiple of five: residues 1 and 2 round down, 3 and 4 round up.
// Total on [0, 255] (253/254 go to 255, 1/2 go to 0) and never moves a
// value by more than 2.
constexpr std::uint8_t fmm_pixel(std::uint8_t v) noexcept {
    switch (v % 5) {
        case 1: return static_cast<std::uint8_t>(v - 1);
        case 2: return static_cast<std::uint8_t>(v - 2);
        case 3: return static_cast<std::uint8_t>(v + 2);
        case 4: return static_cast<std::uint8_t>(v + 1);
        default: return v;
    }
}

// Quantize every pixel, margins included. Dimensions are preserved and the
// transform is idempotent.
inline GrayImage fmm_image(GrayImage img) {
    for (auto& p : img.pixels()) p = fmm_pixel(p);
    return img;
}

} // namespace stfmm
