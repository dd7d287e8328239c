#pragma once

#include "core/image_adapter.hpp"
#include "core/split.hpp"
#include "core/synth.hpp"
#include "core/text_adapter.hpp"
#include "core/probe.hpp"
#include "core/types.hpp"

#include <cstdint>
#include <string>

namespace sigcast {

struct PipelineConfig {
    // dataset source
    std::string dataset_format;        // har | seizure_csv | edf | synth | store
    std::string dataset_path;
    std::string har_partition = "train";
    bool seizure_binary = false;
    std::string edf_channel = "EEG Fpz-Cz";
    std::string edf_labels;            // per-epoch stage label file
    std::string edf_stage_map;         // optional token -> class mapping file
    std::size_t edf_epoch_samples = 3000;
    SynthOptions synth;

    // conversion
    std::string adapter;               // image | text
    ImageOptions image;
    TextOptions text;

    // split and probe
    SplitOptions split;
    bool probe_enabled = false;
    TrainOptions train;

    // execution only: never part of the config hash
    std::string out_root = "out";
    std::size_t parallelism = 1;

    void validate() const;
};

// Strict line-oriented key=value format; '#' starts a comment; unknown keys
// are rejected.
PipelineConfig parse_pipeline_config(const std::string& text, const std::string& source_name);
PipelineConfig load_pipeline_config(const std::string& path);

// Sorted key=value rendering of every semantically meaningful field for the
// chosen source and adapter; out_root and parallelism are excluded so reruns
// and different worker counts land in the same output tree.
std::string canonical_config(const PipelineConfig& cfg);
std::string pipeline_config_hash(const PipelineConfig& cfg);

struct ConvertStats {
    std::size_t count = 0;
    std::size_t fits = 0;
    std::size_t downsampled = 0;
    std::size_t forced = 0;  // rejected by the length rule, converted anyway
};

// One <id>.png per instance plus an images.jsonl sidecar, assembled in
// dataset order regardless of worker count.
void convert_images_to_dir(const Dataset& ds, const ImageOptions& opt, const std::string& dir,
                           const std::string& cfg_hash, std::size_t parallelism);

// One text file per section (all.txt without a split) plus texts.jsonl.
ConvertStats convert_texts_to_dir(const Dataset& ds, const TextOptions& opt,
                                  const SplitManifest* split, const std::string& dir,
                                  const std::string& cfg_hash, std::size_t parallelism);

Dataset ingest_dataset(const PipelineConfig& cfg);

// ingest -> split -> convert -> optional probe; returns the report JSON.
// Output tree: <out_root>/<config-hash>/{config.txt, manifests/, images|texts/,
// probe/, report.json}. A FAILED marker is left behind when a stage throws.
std::string run_pipeline(const PipelineConfig& cfg);

}  // namespace sigcast
