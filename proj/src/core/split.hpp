#pragma once

#include "core/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sigcast {

enum class Section { train = 0, valid = 1, test = 2 };

const char* section_name(Section s);
Section section_from_name(const std::string& name);

struct SplitOptions {
    std::array<double, 3> ratios{0.6, 0.2, 0.2};
    std::uint64_t seed = 1;
    bool stratified = false;
    bool by_group = false;  // keep instances sharing a group id in one section
};

struct SplitManifest {
    std::uint64_t seed = 0;
    std::array<double, 3> ratios{};
    std::vector<std::string> ids;       // dataset order
    std::vector<Section> assignment;    // parallel to ids

    std::array<std::size_t, 3> counts() const;
    std::vector<std::size_t> section_indices(Section s) const;
    Section section_of(const std::string& id) const;  // validation_error if unknown
};

// Splits n into three parts proportional to ratios, largest remainder first;
// remainder ties go to the lower section index.
std::array<std::size_t, 3> apportion_counts(std::size_t n, const std::array<double, 3>& ratios);

SplitManifest split_dataset(const Dataset& ds, const SplitOptions& opt);

void save_split(const SplitManifest& split, const std::string& path);
SplitManifest load_split(const std::string& path);

}  // namespace sigcast
