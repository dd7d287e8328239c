#include "core/synth.hpp"

#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace sigcast {

Dataset make_synthetic_dataset(const SynthOptions& opt) {
    if (opt.channels == 0 || opt.length == 0)
        throw validation_error("synthetic dataset: channels and length must be positive");
    if (opt.classes == 0 || opt.per_class == 0)
        throw validation_error("synthetic dataset: classes and per_class must be positive");
    if (!std::isfinite(opt.separation) || opt.separation < 0.0)
        throw validation_error("synthetic dataset: separation must be finite and non-negative");

    Dataset ds;
    ds.name = "synth";
    for (std::size_t k = 0; k < opt.classes; ++k)
        ds.class_names.push_back("class" + std::to_string(k));

    char buf[128];
    std::snprintf(buf, sizeof buf, "synth|c=%zu|t=%zu|k=%zu|n=%zu|sep=%.17g|seed=%llu",
                  opt.channels, opt.length, opt.classes, opt.per_class,
                  opt.separation, static_cast<unsigned long long>(opt.seed));
    ds.checksum = sha256_hex(buf);

    DetRng rng(opt.seed);
    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t serial = 0;
    ds.instances.reserve(opt.classes * opt.per_class);
    for (std::size_t k = 0; k < opt.classes; ++k) {
        const double freq = static_cast<double>(k + 1);
        for (std::size_t n = 0; n < opt.per_class; ++n) {
            SignalMatrix m;
            std::snprintf(buf, sizeof buf, "synth-%05zu", serial++);
            m.id = buf;
            m.channels = opt.channels;
            m.length = opt.length;
            m.label = static_cast<int>(k);
            m.samples.resize(opt.channels * opt.length);
            for (std::size_t c = 0; c < opt.channels; ++c) {
                // Fixed per-channel phase keeps classes linearly separable.
                const double phase =
                    0.5 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(opt.channels);
                for (std::size_t t = 0; t < opt.length; ++t) {
                    const double x = two_pi * freq * static_cast<double>(t) /
                                     static_cast<double>(opt.length);
                    m.samples[c * opt.length + t] =
                        opt.separation * std::sin(x + phase) + rng.normal();
                }
            }
            ds.instances.push_back(std::move(m));
        }
    }
    return ds;
}

}  // namespace sigcast
