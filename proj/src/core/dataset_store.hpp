#pragma once

#include "core/types.hpp"

#include <string>

namespace sigcast {

// On-disk layout under <dir>:
//   manifest.jsonl: header record (name, class_names, channels, length,
//                   count, checksum) followed by one record per instance
//                   (id, source, offset, label, optional group)
//   data.bin:       "SGCD" magic, u32 version, u64 count/channels/length,
//                   then per-instance C*T float64 samples, little-endian
void save_dataset(const Dataset& ds, const std::string& dir);
Dataset load_dataset(const std::string& dir);

}  // namespace sigcast
