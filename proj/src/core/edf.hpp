#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/types.hpp"

namespace sigcast {

// One signal of an EDF recording, with samples already mapped from digital
// 16-bit values to physical units.
struct EdfSignal {
    std::string label;
    std::string transducer;
    std::string physical_dimension;
    std::string prefiltering;
    double physical_min = 0.0;
    double physical_max = 0.0;
    int digital_min = 0;
    int digital_max = 0;
    std::size_t samples_per_record = 0;
    double sampling_rate = 0.0; // samples_per_record / record_duration
    std::vector<double> samples;
};

struct EdfRecording {
    std::string version;
    std::string patient;
    std::string recording;
    std::string start_date;
    std::string start_time;
    std::size_t header_bytes = 0;
    long long declared_records = 0; // -1 means "derive from file size"
    std::size_t num_records = 0;    // actual record count
    double record_duration = 0.0;   // seconds
    std::vector<EdfSignal> signals;
};

// Parses a complete EDF byte stream: 256-byte fixed ASCII header, 256 bytes of
// per-signal header fields, then data records of 16-bit little-endian samples.
// Digital values map to physical ones linearly via the per-signal calibration.
EdfRecording parse_edf(std::string_view bytes, const std::string& source_name = "edf");

EdfRecording parse_edf_file(const std::string& path);

// Maps sleep-stage annotation tokens to class indices; -1 drops the epoch.
struct StageMap {
    std::unordered_map<std::string, int> tokens;
    std::vector<std::string> class_names;
};

// Default 5-class staging: W, N1, N2, N3 (stages 3 and 4 merged), REM.
StageMap default_stage_map();

// One "token=index" pair per line; tokens may contain spaces.
StageMap parse_stage_map(std::string_view text);

// One stage token per line, either an integer class or a token resolved
// through the map.
std::vector<int> parse_stage_labels(std::string_view text, const StageMap& map,
                                    const std::string& source_name = "labels");

// Cuts a sample stream into consecutive non-overlapping epochs of
// `epoch_samples`, dropping the trailing partial window. Epoch i takes
// labels[i]; a negative label drops that epoch. A stream shorter than one
// epoch yields an empty result.
std::vector<SignalMatrix> epoch_recording(const std::vector<double>& stream,
                                          std::size_t epoch_samples,
                                          const std::vector<int>& labels,
                                          const std::string& id_prefix);

// End-to-end sleep ingestion: parse the EDF, pick one channel by label,
// epoch it, and attach per-epoch stage labels.
Dataset load_sleep_edf(const std::string& edf_path, const std::string& channel_label,
                       const std::string& labels_path, const StageMap& map,
                       std::size_t epoch_samples = 3000,
                       const std::string& name = "sleep");

} // namespace sigcast
