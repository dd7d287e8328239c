#pragma once

#include <string>
#include <string_view>

#include "core/types.hpp"

namespace sigcast {

// Seizure-recognition CSV: one 1x178 instance per row, fields comma-separated
// as [optional id,] 178 samples, label in 1..5. With `binary_labels` the five
// classes collapse to seizure (source label 1) vs non-seizure.
Dataset load_seizure_csv(std::string_view text, bool binary_labels,
                         const std::string& name = "seizure");

Dataset load_seizure_csv_file(const std::string& path, bool binary_labels);

} // namespace sigcast
