#pragma once

#include "core/types.hpp"

#include <cstddef>
#include <cstdint>

namespace sigcast {

struct SynthOptions {
    std::size_t channels = 3;
    std::size_t length = 256;
    std::size_t classes = 2;
    std::size_t per_class = 50;
    double separation = 1.0;  // sinusoid amplitude relative to unit noise
    std::uint64_t seed = 1;
};

// Class k carries a sinusoid at frequency k+1 cycles per window, phase-shifted
// per channel, plus unit Gaussian noise. separation=0 leaves pure noise.
Dataset make_synthetic_dataset(const SynthOptions& opt);

}  // namespace sigcast
