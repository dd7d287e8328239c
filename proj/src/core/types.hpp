#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace sigcast {

// One labeled instance: `channels` rows of `length` samples, row-major.
// The channel axis is the spatial dimension, the sample axis the temporal one.
struct SignalMatrix {
    std::string id;
    std::size_t channels = 0;
    std::size_t length = 0;
    std::vector<double> samples; // channels * length values
    int label = 0;
    std::string group; // optional grouping key (subject/recording) for group-wise splits

    double at(std::size_t c, std::size_t t) const { return samples[c * length + t]; }
    double& at(std::size_t c, std::size_t t) { return samples[c * length + t]; }
};

struct Dataset {
    std::string name;
    std::vector<std::string> class_names;
    std::vector<SignalMatrix> instances;
    std::string checksum; // hex digest over the raw sources

    std::size_t classes() const { return class_names.size(); }
};

// Real-valued matrix, row-major.
struct Plane {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

inline void require_valid(const Plane& p, const char* what = "plane") {
    if (p.rows == 0 || p.cols == 0)
        throw validation_error(std::string(what) + ": dimensions must be positive");
    if (p.values.size() != p.rows * p.cols)
        throw validation_error(std::string(what) + ": value count " +
                               std::to_string(p.values.size()) + " does not match " +
                               std::to_string(p.rows) + "x" + std::to_string(p.cols));
    for (std::size_t i = 0; i < p.values.size(); ++i)
        if (!std::isfinite(p.values[i]))
            throw numeric_error(std::string(what) + ": non-finite value at index " +
                                std::to_string(i));
}

inline void require_valid(const SignalMatrix& m) {
    if (m.channels == 0 || m.length == 0)
        throw validation_error("instance " + m.id + ": dimensions must be positive");
    if (m.samples.size() != m.channels * m.length)
        throw validation_error("instance " + m.id + ": sample count " +
                               std::to_string(m.samples.size()) + " does not match " +
                               std::to_string(m.channels) + "x" + std::to_string(m.length));
    for (std::size_t i = 0; i < m.samples.size(); ++i)
        if (!std::isfinite(m.samples[i]))
            throw numeric_error("instance " + m.id + ": non-finite sample at index " +
                                std::to_string(i));
}

} // namespace sigcast
