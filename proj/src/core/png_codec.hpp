#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigcast {

struct RgbImage {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<std::uint8_t> rgb;  // row-major, interleaved R,G,B per pixel
};

// 8-bit RGB (color type 2), non-interlaced. Encoding always emits filter type
// 0 rows; decoding accepts all five standard filter types.
std::string encode_png_rgb8(const RgbImage& img);
RgbImage decode_png_rgb8(const std::string& bytes, const std::string& source_name);

}  // namespace sigcast
