#pragma once

#include "core/probe.hpp"
#include "core/split.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigcast {

struct LoadedFeatures {
    FeatureBatch batch;  // sidecar order, optionally filtered to one section
    std::size_t classes = 0;
    std::vector<std::string> class_names;
    std::vector<std::string> ids;  // parallel to batch rows
};

// Reads a converted-images directory: decodes each referenced PNG and
// flattens it plane-major with pixels scaled to [0,1].
LoadedFeatures load_image_features(const std::string& dir, const SplitManifest* split = nullptr,
                                   std::optional<Section> section = std::nullopt);

// Reads a converted-texts directory: parses each referenced line back to
// integers and applies the feature scale recorded in the sidecar header.
LoadedFeatures load_text_features(const std::string& dir, const SplitManifest* split = nullptr,
                                  std::optional<Section> section = std::nullopt);

// Dispatches on whichever of images.jsonl / texts.jsonl exists under dir.
LoadedFeatures load_converted_features(const std::string& dir,
                                       const SplitManifest* split = nullptr,
                                       std::optional<Section> section = std::nullopt);

}  // namespace sigcast
