#include "core/image_adapter.hpp"

#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sigcast {

const char* reshape_policy_name(ReshapePolicy p) {
    switch (p) {
        case ReshapePolicy::keep: return "keep";
        case ReshapePolicy::near_square: return "near_square";
        case ReshapePolicy::auto_near_square: return "auto";
    }
    throw validation_error("unknown reshape policy value");
}

ReshapePolicy reshape_policy_from_name(const std::string& name) {
    if (name == "keep") return ReshapePolicy::keep;
    if (name == "near_square" || name == "near-square") return ReshapePolicy::near_square;
    if (name == "auto") return ReshapePolicy::auto_near_square;
    throw validation_error("unknown reshape policy '" + name +
                           "' (expected keep, near_square, or auto)");
}

const char* norm_mode_name(NormMode m) {
    switch (m) {
        case NormMode::per_instance: return "per_instance";
        case NormMode::global: return "global";
    }
    throw validation_error("unknown normalization mode value");
}

NormMode norm_mode_from_name(const std::string& name) {
    if (name == "per_instance" || name == "per-instance") return NormMode::per_instance;
    if (name == "global") return NormMode::global;
    throw validation_error("unknown normalization mode '" + name +
                           "' (expected per_instance or global)");
}

const char* scheme_name(RgbScheme s) {
    switch (s) {
        case RgbScheme::scheme_a: return "A";
        case RgbScheme::scheme_b: return "B";
        case RgbScheme::single_channel: return "single_channel";
    }
    throw validation_error("unknown scheme value");
}

RgbScheme scheme_from_name(const std::string& name) {
    if (name == "A") return RgbScheme::scheme_a;
    if (name == "B") return RgbScheme::scheme_b;
    if (name == "single_channel") return RgbScheme::single_channel;
    throw validation_error("unknown scheme '" + name + "'");
}

void ImageOptions::validate() const {
    if (height < 2 || width < 2)
        throw validation_error("image geometry must be at least 2x2, got " +
                               std::to_string(height) + "x" + std::to_string(width));
    if (norm == NormMode::global) {
        if (!std::isfinite(global_min) || !std::isfinite(global_max))
            throw validation_error("global normalization bounds must be finite");
        if (!(global_min < global_max))
            throw validation_error("global normalization requires min < max");
    }
}

std::string image_options_hash(const ImageOptions& opt) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "image|h=%zu|w=%zu|reshape=%s|norm=%s|lo=%.17g|hi=%.17g",
                  opt.height, opt.width, reshape_policy_name(opt.reshape), norm_mode_name(opt.norm),
                  opt.norm == NormMode::global ? opt.global_min : 0.0,
                  opt.norm == NormMode::global ? opt.global_max : 0.0);
    return sha256_hex(buf).substr(0, 16);
}

RgbStack build_rgb_stack(const SignalMatrix& m) {
    require_valid(m);
    if (m.channels < 2)
        throw validation_error("instance '" + m.id +
                               "' has a single channel; use the replication path");

    RgbStack out;
    const std::size_t t_len = m.length;
    if (m.channels % 3 == 0) {
        out.scheme = RgbScheme::scheme_a;
        const std::size_t rows = m.channels / 3;
        for (std::size_t p = 0; p < 3; ++p) {
            Plane& plane = out.planes[p];
            plane.rows = rows;
            plane.cols = t_len;
            // Channel c lands in plane c/rows, row c%rows: a pure relabeling
            // of the row-major buffer.
            plane.values.assign(m.samples.begin() + static_cast<std::ptrdiff_t>(p * rows * t_len),
                                m.samples.begin() +
                                    static_cast<std::ptrdiff_t>((p + 1) * rows * t_len));
        }
        out.pre_rows = rows;
        out.pre_cols = t_len;
        return out;
    }

    out.scheme = RgbScheme::scheme_b;
    const std::size_t expanded = 3 * ((m.channels + 2) / 3);
    const std::size_t rows = expanded / 3;
    for (auto& plane : out.planes) {
        plane.rows = rows;
        plane.cols = t_len;
        plane.values.assign(rows * t_len, 0.0);
    }
    std::vector<double> column(m.channels), stretched;
    for (std::size_t t = 0; t < t_len; ++t) {
        for (std::size_t c = 0; c < m.channels; ++c) column[c] = m.at(c, t);
        stretched = linear_resample_1d(column, expanded);
        for (std::size_t i = 0; i < expanded; ++i)
            out.planes[i / rows].values[(i % rows) * t_len + t] = stretched[i];
    }
    out.pre_rows = rows;
    out.pre_cols = t_len;
    return out;
}

RgbStack single_channel_stack(const SignalMatrix& m) {
    require_valid(m);
    if (m.channels != 1)
        throw validation_error("replication path expects a single channel, instance '" + m.id +
                               "' has " + std::to_string(m.channels));
    RgbStack out;
    out.scheme = RgbScheme::single_channel;
    for (auto& plane : out.planes) {
        plane.rows = 1;
        plane.cols = m.length;
        plane.values = m.samples;
    }
    out.pre_rows = 1;
    out.pre_cols = m.length;
    return out;
}

namespace {

std::size_t largest_divisor_below_sqrt(std::size_t p) {
    std::size_t s = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
    while (s > 1 && s * s > p) --s;
    while ((s + 1) * (s + 1) <= p) ++s;
    for (std::size_t d = s; d > 1; --d)
        if (p % d == 0) return d;
    return 1;
}

}  // namespace

RgbStack reshape_planes(RgbStack stack, ReshapePolicy policy) {
    const bool apply = policy == ReshapePolicy::near_square ||
                       (policy == ReshapePolicy::auto_near_square && stack.planes[0].rows == 1);
    if (!apply) return stack;
    const std::size_t total = stack.planes[0].rows * stack.planes[0].cols;
    const std::size_t rows = largest_divisor_below_sqrt(total);
    for (auto& plane : stack.planes) {
        // Row-major flatten + refill: the value buffer is already row-major,
        // so only the declared shape changes.
        plane.rows = rows;
        plane.cols = total / rows;
    }
    stack.pre_rows = rows;
    stack.pre_cols = total / rows;
    return stack;
}

PixelImage quantize_stack(const RgbStack& stack, const ImageOptions& opt) {
    opt.validate();
    for (const auto& plane : stack.planes) require_valid(plane);

    double lo, hi;
    if (opt.norm == NormMode::global) {
        lo = opt.global_min;
        hi = opt.global_max;
    } else {
        lo = stack.planes[0].values[0];
        hi = lo;
        for (const auto& plane : stack.planes)
            for (double v : plane.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    }

    PixelImage out;
    out.height = stack.planes[0].rows;
    out.width = stack.planes[0].cols;
    out.norm_min = lo;
    out.norm_max = hi;
    out.scheme = stack.scheme;
    out.pre_rows = stack.pre_rows;
    out.pre_cols = stack.pre_cols;
    out.pixels.reserve(3 * out.height * out.width);
    const double span = hi - lo;
    for (const auto& plane : stack.planes)
        for (double v : plane.values) {
            long long q;
            if (span <= 0.0) {
                q = 127;  // constant input has no range to stretch
            } else {
                q = std::llround(255.0 * (v - lo) / span);
                q = std::clamp(q, 0ll, 255ll);
            }
            out.pixels.push_back(static_cast<std::uint8_t>(q));
        }
    return out;
}

PixelImage convert_to_image(const SignalMatrix& m, const ImageOptions& opt) {
    opt.validate();
    RgbStack stack = m.channels == 1 ? single_channel_stack(m) : build_rgb_stack(m);
    stack = reshape_planes(std::move(stack), opt.reshape);
    for (auto& plane : stack.planes) plane = bilinear_resize_2d(plane, opt.height, opt.width);
    PixelImage out = quantize_stack(stack, opt);
    out.instance_id = m.id;
    out.config_hash = image_options_hash(opt);
    return out;
}

RgbImage to_interleaved(const PixelImage& img) {
    RgbImage out;
    out.height = static_cast<std::uint32_t>(img.height);
    out.width = static_cast<std::uint32_t>(img.width);
    const std::size_t plane = img.height * img.width;
    out.rgb.resize(3 * plane);
    for (std::size_t i = 0; i < plane; ++i)
        for (std::size_t p = 0; p < 3; ++p) out.rgb[3 * i + p] = img.pixels[p * plane + i];
    return out;
}

std::array<Plane, 3> planes_from_interleaved(const RgbImage& img) {
    std::array<Plane, 3> out;
    const std::size_t plane = std::size_t(img.height) * img.width;
    for (std::size_t p = 0; p < 3; ++p) {
        out[p].rows = img.height;
        out[p].cols = img.width;
        out[p].values.resize(plane);
        for (std::size_t i = 0; i < plane; ++i)
            out[p].values[i] = static_cast<double>(img.rgb[3 * i + p]);
    }
    return out;
}

}  // namespace sigcast
