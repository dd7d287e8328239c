#pragma once

#include <array>
#include <string>

#include "core/types.hpp"

namespace sigcast {

// Nine per-channel inertial files plus the activity label file. Channel order
// is fixed: total acceleration X/Y/Z, body acceleration X/Y/Z, angular
// velocity X/Y/Z. The subjects file is optional and feeds group-wise splits.
struct HarFiles {
    std::array<std::string, 9> channels;
    std::string labels;
    std::string subjects; // may be empty
};

// Stacks row i of the nine files into one 9xT instance. All files must agree
// on row and column counts; labels are 1..6 in the source and remapped to
// 0-based class indices.
Dataset load_har_dataset(const HarFiles& files, const std::string& name = "har");

// Locates the canonical file names under `dir` (or dir/"Inertial Signals")
// for a partition suffix such as "train" or "test".
HarFiles find_har_files(const std::string& dir, const std::string& partition);

} // namespace sigcast
