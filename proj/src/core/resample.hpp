#pragma once

#include <cstddef>
#include <vector>

#include "core/types.hpp"

namespace sigcast {

// Endpoint-aligned 1-D linear resampling. Output j samples the source at
// coordinate j*(n-1)/(m-1); first and last samples are preserved exactly for
// m >= 2, and a single-sample target reads the source midpoint. Requires
// n >= 2 and finite input; a length-1 input belongs to the replication path.
std::vector<double> linear_resample_1d(const std::vector<double>& values,
                                       std::size_t target);

// Separable endpoint-aligned bilinear resize, usable for both upsampling and
// downsampling. Resizing to the source shape returns the input unchanged, and
// a size-1 source axis replicates along that axis. All arithmetic is double
// precision; no anti-alias prefilter is applied before downsampling.
Plane bilinear_resize_2d(const Plane& plane, std::size_t target_rows,
                         std::size_t target_cols);

namespace detail {
// Strided kernel shared by the 1-D and 2-D paths. Tolerates n == 1 by
// replication so the 2-D resize can use it on degenerate axes.
void resample_span(const double* src, std::size_t n, std::size_t src_stride,
                   double* dst, std::size_t m, std::size_t dst_stride);
} // namespace detail

} // namespace sigcast
