// Image fidelity metrics: MSE and PSNR.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "stfmm/errors.hpp"
#include "stfmm/gray_image.hpp"

namespace stfmm {

// MSE/PSNR pair for one image comparison. Identical images carry mse 0 and
// an infinite psnr.
struct QualityReport {
    double mse = 0.0;
    double psnr = std::numeric_limits<double>::infinity();

    bool identical() const noexcept { return mse == 0.0; }
};

// Mean squared error. The sum is accumulated in integers and divided once,
// so the result is bit-reproducible across platforms.
inline double mse(const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatchError("image dimensions differ: " + std::to_string(a.width()) +
                                     "x" + std::to_string(a.height()) + " vs " +
                                     std::to_string(b.width()) + "x" +
                                     std::to_string(b.height()));
    if (a.empty()) throw std::invalid_argument("mse of empty images");
    std::uint64_t sum = 0;
    const auto& pa = a.pixels();
    const auto& pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(pa[i]) - static_cast<std::int64_t>(pb[i]);
        sum += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum) / static_cast<double>(pa.size());
}

// 10 * log10(255^2 / mse) dB against the 8-bit peak.
inline QualityReport psnr(const GrayImage& a, const GrayImage& b) {
    const double m = mse(a, b);
    if (m == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
    return {m, 10.0 * std::log10(255.0 * 255.0 / m)};
}

} // namespace stfmm
