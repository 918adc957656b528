#include <catch2/catch.hpp>

#include <cstdlib>

#include "stfmm/fmm.hpp"
#include "test_util.hpp"

using stfmm::fmm_image;
using stfmm::fmm_pixel;

namespace {

// Independent oracle: pick the multiple of five in [0, 255] closest to v.
// Ties cannot occur (that would need a fractional midpoint).
int nearest_multiple_of_five(int v) {
    int best = 0;
    for (int m = 0; m <= 255; m += 5)
        if (std::abs(m - v) < std::abs(best - v)) best = m;
    return best;
}

} // namespace

TEST_CASE("fmm_pixel reference pairs") {
    const int pairs[][2] = {
        {0, 0},     {1, 0},     {2, 0},     {3, 5},     {4, 5},     {5, 5},    {6, 5},
        {7, 5},     {8, 10},    {9, 10},    {10, 10},   {111, 110}, {112, 110}, {113, 115},
        {114, 115}, {115, 115}, {221, 220}, {222, 220}, {254, 255}, {255, 255},
    };
    for (const auto& [in, out] : pairs) {
        CAPTURE(in);
        CHECK(fmm_pixel(static_cast<std::uint8_t>(in)) == out);
    }
}

TEST_CASE("fmm_pixel exhaustive over all intensities") {
    for (int v = 0; v <= 255; ++v) {
        CAPTURE(v);
        const int q = fmm_pixel(static_cast<std::uint8_t>(v));
        CHECK(q == nearest_multiple_of_five(v));
        CHECK(q % 5 == 0);
        CHECK(std::abs(q - v) <= 2);
        CHECK((q >= 0 && q <= 255));
        CHECK(fmm_pixel(static_cast<std::uint8_t>(q)) == q);
    }
}

TEST_CASE("fmm_image quantizes every pixel and keeps dimensions") {
    SECTION("all-zero image is unchanged") {
        const stfmm::GrayImage img(7, 3, 0);
        CHECK(fmm_image(img) == img);
    }
    SECTION("uniform 113 becomes uniform 115") {
        const stfmm::GrayImage out = fmm_image(stfmm::GrayImage(4, 4, 113));
        for (std::uint8_t p : out.pixels()) CHECK(p == 115);
    }
    SECTION("random image: bounded deviation, idempotence") {
        std::mt19937 rng(7);
        const stfmm::GrayImage img = testutil::random_image(rng, 33, 21);
        const stfmm::GrayImage out = fmm_image(img);
        REQUIRE(out.width() == img.width());
        REQUIRE(out.height() == img.height());
        int max_delta = 0;
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            const int d = std::abs(int(out.pixels()[i]) - int(img.pixels()[i]));
            max_delta = std::max(max_delta, d);
            CHECK(out.pixels()[i] % 5 == 0);
        }
        CHECK(max_delta <= 2);
        CHECK(fmm_image(out) == out);
    }
}
