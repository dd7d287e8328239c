#pragma once

#include "core/png_codec.hpp"
#include "core/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sigcast {

enum class ReshapePolicy { keep, near_square, auto_near_square };
enum class NormMode { per_instance, global };
enum class RgbScheme { scheme_a, scheme_b, single_channel };

const char* reshape_policy_name(ReshapePolicy p);
ReshapePolicy reshape_policy_from_name(const std::string& name);
const char* norm_mode_name(NormMode m);
NormMode norm_mode_from_name(const std::string& name);
const char* scheme_name(RgbScheme s);
RgbScheme scheme_from_name(const std::string& name);

struct ImageOptions {
    std::size_t height = 224;
    std::size_t width = 224;
    ReshapePolicy reshape = ReshapePolicy::auto_near_square;
    NormMode norm = NormMode::per_instance;
    double global_min = 0.0;  // used only when norm == global
    double global_max = 1.0;

    void validate() const;
};

// First 16 hex chars of a hash over every semantically meaningful option.
std::string image_options_hash(const ImageOptions& opt);

struct RgbStack {
    std::array<Plane, 3> planes;
    RgbScheme scheme = RgbScheme::scheme_a;
    std::size_t pre_rows = 0;  // plane shape fed to the resize stage
    std::size_t pre_cols = 0;
};

struct PixelImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;  // plane-major: 3 * height * width
    double norm_min = 0.0;
    double norm_max = 0.0;
    RgbScheme scheme = RgbScheme::scheme_a;
    std::size_t pre_rows = 0;
    std::size_t pre_cols = 0;
    std::string instance_id;
    std::string config_hash;
};

// C divisible by 3 relabels channels losslessly (scheme A); otherwise the
// channel axis is resampled per time column up to 3*ceil(C/3) first (scheme B).
RgbStack build_rgb_stack(const SignalMatrix& m);

// C == 1: replicate the single row into three identical planes.
RgbStack single_channel_stack(const SignalMatrix& m);

RgbStack reshape_planes(RgbStack stack, ReshapePolicy policy);

PixelImage quantize_stack(const RgbStack& stack, const ImageOptions& opt);

PixelImage convert_to_image(const SignalMatrix& m, const ImageOptions& opt);

// Plane-major pixels -> interleaved RGB rows and back.
RgbImage to_interleaved(const PixelImage& img);
std::array<Plane, 3> planes_from_interleaved(const RgbImage& img);

}  // namespace sigcast
