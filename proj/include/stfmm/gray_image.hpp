// 8-bit single-channel raster type.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stfmm {

// Row-major grayscale raster, top row first, one byte per pixel.
// A default-constructed instance is empty (0x0) and only useful as an
// assignment target; every other constructor enforces positive dimensions
// and a matching pixel count.
class GrayImage {
public:
    GrayImage() = default;

    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height), pixels_(checked_size(width, height), fill) {}

    GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        if (pixels_.size() != checked_size(width, height))
            throw std::invalid_argument("pixel buffer size does not match dimensions");
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

    const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }
    std::vector<std::uint8_t>& pixels() noexcept { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("image dimensions must be positive, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

} // namespace stfmm
