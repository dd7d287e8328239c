#include "core/resample.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace sigcast {

namespace detail {

namespace {

// Exact at t == 0, t == 1, and for equal neighbors, so grid-aligned positions
// and constant spans survive bit-for-bit.
double lerp(double a, double b, double t) {
    if (a == b || t == 0.0) return a;
    if (t == 1.0) return b;
    return a * (1.0 - t) + b * t;
}

} // namespace

void resample_span(const double* src, std::size_t n, std::size_t src_stride,
                   double* dst, std::size_t m, std::size_t dst_stride) {
    if (n == 1) {
        for (std::size_t j = 0; j < m; ++j) dst[j * dst_stride] = src[0];
        return;
    }
    if (m == 1) {
        // Single-sample target reads the source midpoint.
        const double x = static_cast<double>(n - 1) / 2.0;
        std::size_t i0 = static_cast<std::size_t>(x);
        if (i0 > n - 2) i0 = n - 2;
        const double t = x - static_cast<double>(i0);
        dst[0] = lerp(src[i0 * src_stride], src[(i0 + 1) * src_stride], t);
        return;
    }
    const double num = static_cast<double>(n - 1);
    const double den = static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        // j*(n-1) is exact in double for realistic sizes, so the identity case
        // (m == n) and both endpoints come out bit-exact.
        const double x = static_cast<double>(j) * num / den;
        std::size_t i0 = static_cast<std::size_t>(x);
        if (i0 > n - 2) i0 = n - 2;
        const double t = x - static_cast<double>(i0);
        dst[j * dst_stride] = lerp(src[i0 * src_stride], src[(i0 + 1) * src_stride], t);
    }
}

} // namespace detail

std::vector<double> linear_resample_1d(const std::vector<double>& values,
                                       std::size_t target) {
    if (values.size() < 2)
        throw validation_error("linear_resample_1d: need at least 2 samples, got " +
                               std::to_string(values.size()) +
                               " (length-1 inputs use the replication path)");
    if (target == 0)
        throw validation_error("linear_resample_1d: target length must be positive");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw numeric_error("linear_resample_1d: non-finite value at index " +
                                std::to_string(i));

    std::vector<double> out(target);
    detail::resample_span(values.data(), values.size(), 1, out.data(), target, 1);
    return out;
}

Plane bilinear_resize_2d(const Plane& plane, std::size_t target_rows,
                         std::size_t target_cols) {
    require_valid(plane, "bilinear_resize_2d");
    if (target_rows == 0 || target_cols == 0)
        throw validation_error("bilinear_resize_2d: target dimensions must be positive");

    if (target_rows == plane.rows && target_cols == plane.cols) return plane;

    // Horizontal pass: every row to target_cols.
    Plane mid;
    mid.rows = plane.rows;
    mid.cols = target_cols;
    mid.values.resize(mid.rows * mid.cols);
    for (std::size_t r = 0; r < plane.rows; ++r)
        detail::resample_span(plane.values.data() + r * plane.cols, plane.cols, 1,
                              mid.values.data() + r * target_cols, target_cols, 1);

    // Vertical pass: every column to target_rows.
    Plane out;
    out.rows = target_rows;
    out.cols = target_cols;
    out.values.resize(out.rows * out.cols);
    for (std::size_t c = 0; c < target_cols; ++c)
        detail::resample_span(mid.values.data() + c, mid.rows, target_cols,
                              out.values.data() + c, target_rows, target_cols);
    return out;
}

} // namespace sigcast
