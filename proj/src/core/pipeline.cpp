#include "core/pipeline.hpp"

#include "core/dataset_store.hpp"
#include "core/edf.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/har.hpp"
#include "core/hash.hpp"
#include "core/io_util.hpp"
#include "core/log.hpp"
#include "core/png_codec.hpp"
#include "core/seizure.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace sigcast {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string& src, std::size_t lineno, const std::string& key,
                            const std::string& value, const std::string& expected) {
    throw validation_error(src + " line " + std::to_string(lineno) + ": key '" + key +
                           "' needs " + expected + ", got '" + value + "'");
}

bool parse_bool(const std::string& src, std::size_t lineno, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(src, lineno, key, value, "a boolean (true/false)");
}

std::size_t parse_count(const std::string& src, std::size_t lineno, const std::string& key,
                        const std::string& value) {
    std::size_t out = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || end != value.data() + value.size())
        bad_value(src, lineno, key, value, "a non-negative integer");
    return out;
}

double parse_real(const std::string& src, std::size_t lineno, const std::string& key,
                  const std::string& value) {
    double out = 0.0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || end != value.data() + value.size())
        bad_value(src, lineno, key, value, "a real number");
    return out;
}

std::string separator_from_config(const std::string& value) {
    if (value == "space") return " ";
    if (value == "comma") return ",";
    if (value == "tab") return "\t";
    if (value == "semicolon") return ";";
    return value;  // literal, validated later by TextOptions
}

std::string separator_to_config(const std::string& sep) {
    if (sep == " ") return "space";
    if (sep == ",") return "comma";
    if (sep == "\t") return "tab";
    if (sep == ";") return "semicolon";
    return sep;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

void apply_key(PipelineConfig& cfg, const std::string& key, const std::string& value,
               const std::string& src, std::size_t lineno) {
    if (key == "dataset.format") cfg.dataset_format = value;
    else if (key == "dataset.path") cfg.dataset_path = value;
    else if (key == "dataset.partition") cfg.har_partition = value;
    else if (key == "dataset.binary_labels") cfg.seizure_binary = parse_bool(src, lineno, key, value);
    else if (key == "dataset.channel") cfg.edf_channel = value;
    else if (key == "dataset.labels") cfg.edf_labels = value;
    else if (key == "dataset.stage_map") cfg.edf_stage_map = value;
    else if (key == "dataset.epoch_samples") cfg.edf_epoch_samples = parse_count(src, lineno, key, value);
    else if (key == "synth.channels") cfg.synth.channels = parse_count(src, lineno, key, value);
    else if (key == "synth.length") cfg.synth.length = parse_count(src, lineno, key, value);
    else if (key == "synth.classes") cfg.synth.classes = parse_count(src, lineno, key, value);
    else if (key == "synth.per_class") cfg.synth.per_class = parse_count(src, lineno, key, value);
    else if (key == "synth.separation") cfg.synth.separation = parse_real(src, lineno, key, value);
    else if (key == "synth.seed") cfg.synth.seed = parse_count(src, lineno, key, value);
    else if (key == "adapter") cfg.adapter = value;
    else if (key == "image.height") cfg.image.height = parse_count(src, lineno, key, value);
    else if (key == "image.width") cfg.image.width = parse_count(src, lineno, key, value);
    else if (key == "image.reshape") cfg.image.reshape = reshape_policy_from_name(value);
    else if (key == "image.norm") cfg.image.norm = norm_mode_from_name(value);
    else if (key == "image.global_min") cfg.image.global_min = parse_real(src, lineno, key, value);
    else if (key == "image.global_max") cfg.image.global_max = parse_real(src, lineno, key, value);
    else if (key == "text.alpha") cfg.text.alpha = parse_real(src, lineno, key, value);
    else if (key == "text.max_len") cfg.text.max_len = parse_count(src, lineno, key, value);
    else if (key == "text.aggregator") cfg.text.aggregator = aggregator_from_name(value);
    else if (key == "text.separator") cfg.text.separator = separator_from_config(value);
    else if (key == "text.integer_input") cfg.text.integer_input = parse_bool(src, lineno, key, value);
    else if (key == "text.force") cfg.text.force = parse_bool(src, lineno, key, value);
    else if (key == "text.legacy_flatten") cfg.text.legacy_flatten = parse_bool(src, lineno, key, value);
    else if (key == "split.ratios") {
        std::istringstream parts(value);
        std::string part;
        std::vector<double> ratios;
        while (std::getline(parts, part, ','))
            ratios.push_back(parse_real(src, lineno, key, trim(part)));
        if (ratios.size() != 3)
            bad_value(src, lineno, key, value, "three comma-separated fractions");
        std::copy(ratios.begin(), ratios.end(), cfg.split.ratios.begin());
    }
    else if (key == "split.seed") cfg.split.seed = parse_count(src, lineno, key, value);
    else if (key == "split.stratified") cfg.split.stratified = parse_bool(src, lineno, key, value);
    else if (key == "split.by_group") cfg.split.by_group = parse_bool(src, lineno, key, value);
    else if (key == "probe.enabled") cfg.probe_enabled = parse_bool(src, lineno, key, value);
    else if (key == "probe.epochs") cfg.train.epochs = parse_count(src, lineno, key, value);
    else if (key == "probe.learning_rate") cfg.train.learning_rate = parse_real(src, lineno, key, value);
    else if (key == "probe.batch_size") cfg.train.batch_size = parse_count(src, lineno, key, value);
    else if (key == "probe.seed") cfg.train.seed = parse_count(src, lineno, key, value);
    else if (key == "probe.l2") cfg.train.l2 = parse_real(src, lineno, key, value);
    else if (key == "out.root") cfg.out_root = value;
    else if (key == "parallelism") cfg.parallelism = parse_count(src, lineno, key, value);
    else
        throw validation_error(src + " line " + std::to_string(lineno) + ": unknown key '" +
                               key + "'");
}

constexpr const char* kTextOnMultichannelMessage =
    "the text adapter takes single-channel data; convert multi-channel instances with the "
    "image adapter, or set text.legacy_flatten to concatenate rows";

}  // namespace

void PipelineConfig::validate() const {
    static const std::vector<std::string> formats{"har", "seizure_csv", "edf", "synth", "store"};
    if (std::find(formats.begin(), formats.end(), dataset_format) == formats.end())
        throw validation_error("dataset.format must be one of har, seizure_csv, edf, synth, "
                               "store; got '" + dataset_format + "'");
    if (dataset_format != "synth" && dataset_path.empty())
        throw validation_error("dataset.path is required for format '" + dataset_format + "'");
    if (dataset_format == "edf" && edf_labels.empty())
        throw validation_error("dataset.labels (per-epoch stage file) is required for EDF input");
    if (dataset_format == "edf" && edf_epoch_samples == 0)
        throw validation_error("dataset.epoch_samples must be positive");
    if (adapter != "image" && adapter != "text")
        throw validation_error("adapter must be 'image' or 'text'; got '" + adapter + "'");
    if (adapter == "image") image.validate();
    if (adapter == "text") {
        text.validate();
        // reject what is knowable without touching the data
        std::size_t channels = 0;
        if (dataset_format == "har") channels = 9;
        if (dataset_format == "synth") channels = synth.channels;
        if (channels > 1 && !text.legacy_flatten)
            throw validation_error("dataset '" + dataset_format + "' carries " +
                                   std::to_string(channels) + " channels; " +
                                   kTextOnMultichannelMessage);
    }
    if (parallelism == 0) throw validation_error("parallelism must be at least 1");
    if (out_root.empty()) throw validation_error("out.root must not be empty");
}

PipelineConfig parse_pipeline_config(const std::string& text, const std::string& source_name) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(source_name + " line " + std::to_string(lineno) +
                                   ": expected key=value");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), source_name, lineno);
    }
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    return parse_pipeline_config(read_file(path), path);
}

std::string canonical_config(const PipelineConfig& cfg) {
    std::vector<std::string> lines;
    auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + "=" + v); };

    add("dataset.format", cfg.dataset_format);
    if (cfg.dataset_format == "har") {
        add("dataset.path", cfg.dataset_path);
        add("dataset.partition", cfg.har_partition);
    } else if (cfg.dataset_format == "seizure_csv") {
        add("dataset.path", cfg.dataset_path);
        add("dataset.binary_labels", fmt_bool(cfg.seizure_binary));
    } else if (cfg.dataset_format == "edf") {
        add("dataset.path", cfg.dataset_path);
        add("dataset.labels", cfg.edf_labels);
        add("dataset.channel", cfg.edf_channel);
        add("dataset.stage_map", cfg.edf_stage_map);
        add("dataset.epoch_samples", std::to_string(cfg.edf_epoch_samples));
    } else if (cfg.dataset_format == "synth") {
        add("synth.channels", std::to_string(cfg.synth.channels));
        add("synth.length", std::to_string(cfg.synth.length));
        add("synth.classes", std::to_string(cfg.synth.classes));
        add("synth.per_class", std::to_string(cfg.synth.per_class));
        add("synth.separation", fmt_real(cfg.synth.separation));
        add("synth.seed", std::to_string(cfg.synth.seed));
    } else if (cfg.dataset_format == "store") {
        add("dataset.path", cfg.dataset_path);
    }

    add("adapter", cfg.adapter);
    if (cfg.adapter == "image") {
        add("image.height", std::to_string(cfg.image.height));
        add("image.width", std::to_string(cfg.image.width));
        add("image.reshape", reshape_policy_name(cfg.image.reshape));
        add("image.norm", norm_mode_name(cfg.image.norm));
        if (cfg.image.norm == NormMode::global) {
            add("image.global_min", fmt_real(cfg.image.global_min));
            add("image.global_max", fmt_real(cfg.image.global_max));
        }
    } else if (cfg.adapter == "text") {
        add("text.alpha", fmt_real(cfg.text.alpha));
        add("text.max_len", std::to_string(cfg.text.max_len));
        add("text.aggregator", aggregator_name(cfg.text.aggregator));
        add("text.separator", separator_to_config(cfg.text.separator));
        add("text.integer_input", fmt_bool(cfg.text.integer_input));
        add("text.force", fmt_bool(cfg.text.force));
        add("text.legacy_flatten", fmt_bool(cfg.text.legacy_flatten));
    }

    add("split.ratios", fmt_real(cfg.split.ratios[0]) + "," + fmt_real(cfg.split.ratios[1]) + "," +
                            fmt_real(cfg.split.ratios[2]));
    add("split.seed", std::to_string(cfg.split.seed));
    add("split.stratified", fmt_bool(cfg.split.stratified));
    add("split.by_group", fmt_bool(cfg.split.by_group));

    add("probe.enabled", fmt_bool(cfg.probe_enabled));
    if (cfg.probe_enabled) {
        add("probe.epochs", std::to_string(cfg.train.epochs));
        add("probe.learning_rate", fmt_real(cfg.train.learning_rate));
        add("probe.batch_size", std::to_string(cfg.train.batch_size));
        add("probe.seed", std::to_string(cfg.train.seed));
        add("probe.l2", fmt_real(cfg.train.l2));
    }

    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string pipeline_config_hash(const PipelineConfig& cfg) {
    return sha256_hex(canonical_config(cfg)).substr(0, 16);
}

namespace {

void check_file_safe_ids(const Dataset& ds) {
    for (const auto& m : ds.instances)
        if (m.id.empty() || m.id.find('/') != std::string::npos || m.id.front() == '.')
            throw validation_error("instance id '" + m.id + "' cannot name an output file");
}

// Work-stealing over instance indices; each worker bails on first error and
// the earliest one captured is rethrown after the join.
void run_workers(const std::function<void()>& work, std::size_t parallelism, std::size_t items) {
    const std::size_t n = std::min(std::max<std::size_t>(parallelism, 1), std::max<std::size_t>(items, 1));
    if (n <= 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

}  // namespace

void convert_images_to_dir(const Dataset& ds, const ImageOptions& opt, const std::string& dir,
                           const std::string& cfg_hash, std::size_t parallelism) {
    opt.validate();
    if (ds.instances.empty()) throw validation_error("nothing to convert: dataset is empty");
    check_file_safe_ids(ds);
    ensure_dir(dir);

    const std::size_t n = ds.instances.size();
    std::vector<std::string> lines(n);
    std::atomic<std::size_t> cursor{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= n) return;
            try {
                const SignalMatrix& m = ds.instances[i];
                PixelImage img = convert_to_image(m, opt);
                const std::string file = m.id + ".png";
                write_file((fs::path(dir) / file).string(), encode_png_rgb8(to_interleaved(img)));
                json line;
                line["id"] = m.id;
                line["label"] = m.label;
                line["scheme"] = scheme_name(img.scheme);
                line["pre_rows"] = img.pre_rows;
                line["pre_cols"] = img.pre_cols;
                line["v_min"] = img.norm_min;
                line["v_max"] = img.norm_max;
                line["file"] = file;
                line["config_hash"] = cfg_hash;
                lines[i] = line.dump();
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    run_workers(work, parallelism, n);
    if (err) std::rethrow_exception(err);

    json header;
    header["kind"] = "images";
    header["config_hash"] = cfg_hash;
    header["dataset"] = ds.name;
    header["count"] = n;
    header["class_names"] = ds.class_names;
    header["height"] = opt.height;
    header["width"] = opt.width;
    header["reshape"] = reshape_policy_name(opt.reshape);
    header["norm"] = norm_mode_name(opt.norm);
    if (opt.norm == NormMode::global) {
        header["global_min"] = opt.global_min;
        header["global_max"] = opt.global_max;
    }
    std::string sidecar = header.dump() + "\n";
    for (const auto& line : lines) {
        sidecar += line;
        sidecar += '\n';
    }
    write_file((fs::path(dir) / "images.jsonl").string(), sidecar);
}

ConvertStats convert_texts_to_dir(const Dataset& ds, const TextOptions& opt,
                                  const SplitManifest* split, const std::string& dir,
                                  const std::string& cfg_hash, std::size_t parallelism) {
    opt.validate();
    if (ds.instances.empty()) throw validation_error("nothing to convert: dataset is empty");
    if (ds.instances.front().channels > 1 && !opt.legacy_flatten)
        throw validation_error("dataset '" + ds.name + "' carries " +
                               std::to_string(ds.instances.front().channels) + " channels; " +
                               kTextOnMultichannelMessage);
    check_file_safe_ids(ds);
    ensure_dir(dir);

    const std::size_t n = ds.instances.size();
    std::vector<TokenText> results(n);
    std::atomic<std::size_t> cursor{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = convert_to_text(ds.instances[i], opt);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    run_workers(work, parallelism, n);
    if (err) std::rethrow_exception(err);

    std::unordered_map<std::string, Section> by_id;
    if (split != nullptr) {
        by_id.reserve(split->ids.size());
        for (std::size_t i = 0; i < split->ids.size(); ++i)
            by_id.emplace(split->ids[i], split->assignment[i]);
    }

    ConvertStats stats;
    stats.count = n;
    std::array<std::string, 3> section_text;
    std::array<std::size_t, 3> section_lines{0, 0, 0};
    std::string sidecar_lines;
    for (std::size_t i = 0; i < n; ++i) {
        const SignalMatrix& m = ds.instances[i];
        std::size_t slot = 0;
        std::string file = "all.txt";
        if (split != nullptr) {
            auto it = by_id.find(m.id);
            if (it == by_id.end())
                throw validation_error("instance '" + m.id + "' is missing from the split manifest");
            slot = static_cast<std::size_t>(it->second);
            file = std::string(section_name(it->second)) + ".txt";
        }
        section_text[slot] += results[i].text;
        section_text[slot] += '\n';
        section_lines[slot]++;

        switch (results[i].status) {
            case OverflowStatus::fits: stats.fits++; break;
            case OverflowStatus::downsampled:
                if (check_overflow(m.samples.size(), opt.max_len) == OverflowStatus::rejected)
                    stats.forced++;
                else
                    stats.downsampled++;
                break;
            case OverflowStatus::rejected: break;  // unreachable: conversion throws instead
        }

        json line;
        line["id"] = m.id;
        line["label"] = m.label;
        line["token_count"] = results[i].token_count;
        line["window_size"] = results[i].window_size;
        line["status"] = overflow_status_name(results[i].status);
        line["file"] = file;
        line["line"] = section_lines[slot];
        line["config_hash"] = cfg_hash;
        sidecar_lines += line.dump();
        sidecar_lines += '\n';
    }

    json header;
    header["kind"] = "texts";
    header["config_hash"] = cfg_hash;
    header["dataset"] = ds.name;
    header["count"] = n;
    header["class_names"] = ds.class_names;
    header["alpha"] = opt.alpha;
    header["max_len"] = opt.max_len;
    header["aggregator"] = aggregator_name(opt.aggregator);
    header["separator"] = opt.separator;
    header["integer_input"] = opt.integer_input;
    header["legacy_flatten"] = opt.legacy_flatten;
    // inverse of the amplification, so loaded features sit near the raw scale
    header["feature_scale"] = opt.integer_input ? 1.0 : 1.0 / opt.alpha;
    write_file((fs::path(dir) / "texts.jsonl").string(), header.dump() + "\n" + sidecar_lines);

    if (split != nullptr) {
        for (int s = 0; s < 3; ++s)
            write_file((fs::path(dir) / (std::string(section_name(static_cast<Section>(s))) + ".txt"))
                           .string(),
                       section_text[static_cast<std::size_t>(s)]);
    } else {
        write_file((fs::path(dir) / "all.txt").string(), section_text[0]);
    }
    return stats;
}

Dataset ingest_dataset(const PipelineConfig& cfg) {
    if (cfg.dataset_format == "har") {
        HarFiles files = find_har_files(cfg.dataset_path, cfg.har_partition);
        return load_har_dataset(files, "har-" + cfg.har_partition);
    }
    if (cfg.dataset_format == "seizure_csv")
        return load_seizure_csv_file(cfg.dataset_path, cfg.seizure_binary);
    if (cfg.dataset_format == "edf") {
        StageMap map = cfg.edf_stage_map.empty() ? default_stage_map()
                                                 : parse_stage_map(read_file(cfg.edf_stage_map));
        return load_sleep_edf(cfg.dataset_path, cfg.edf_channel, cfg.edf_labels, map,
                              cfg.edf_epoch_samples);
    }
    if (cfg.dataset_format == "synth") return make_synthetic_dataset(cfg.synth);
    if (cfg.dataset_format == "store") return load_dataset(cfg.dataset_path);
    throw validation_error("unknown dataset format '" + cfg.dataset_format + "'");
}

std::string run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    const std::string hash = pipeline_config_hash(cfg);
    const fs::path root = fs::path(cfg.out_root) / hash;
    log_event("pipeline_start", {{"config_hash", hash}, {"out", root.string()}});
    ensure_dir(root.string());
    const fs::path marker = root / "FAILED";
    try {
        Dataset ds = ingest_dataset(cfg);
        if (cfg.adapter == "text" && !ds.instances.empty() &&
            ds.instances.front().channels > 1 && !cfg.text.legacy_flatten)
            throw validation_error("dataset '" + ds.name + "' carries " +
                                   std::to_string(ds.instances.front().channels) + " channels; " +
                                   kTextOnMultichannelMessage);

        write_file((root / "config.txt").string(), canonical_config(cfg));
        const fs::path manifests = root / "manifests";
        save_dataset(ds, manifests.string());
        log_event("stage", {{"name", "ingest"},
                            {"count", ds.instances.size()},
                            {"channels", ds.instances.front().channels},
                            {"length", ds.instances.front().length},
                            {"classes", ds.classes()}});

        SplitManifest split = split_dataset(ds, cfg.split);
        save_split(split, (manifests / "split.jsonl").string());
        const auto counts = split.counts();
        log_event("stage", {{"name", "split"},
                            {"train", counts[0]},
                            {"valid", counts[1]},
                            {"test", counts[2]}});

        json report;
        report["config_hash"] = hash;
        report["dataset"] = {{"name", ds.name},
                             {"count", ds.instances.size()},
                             {"channels", ds.instances.front().channels},
                             {"length", ds.instances.front().length},
                             {"classes", ds.classes()},
                             {"checksum", ds.checksum}};
        report["split"] = {{"train", counts[0]},
                           {"valid", counts[1]},
                           {"test", counts[2]},
                           {"seed", cfg.split.seed}};

        std::string convert_dir;
        if (cfg.adapter == "image") {
            convert_dir = (root / "images").string();
            convert_images_to_dir(ds, cfg.image, convert_dir, hash, cfg.parallelism);
            report["conversion"] = {{"adapter", "image"},
                                    {"count", ds.instances.size()},
                                    {"height", cfg.image.height},
                                    {"width", cfg.image.width}};
        } else {
            convert_dir = (root / "texts").string();
            ConvertStats st =
                convert_texts_to_dir(ds, cfg.text, &split, convert_dir, hash, cfg.parallelism);
            report["conversion"] = {{"adapter", "text"},
                                    {"count", st.count},
                                    {"fits", st.fits},
                                    {"downsampled", st.downsampled},
                                    {"forced", st.forced}};
        }
        log_event("stage", {{"name", "convert"}, {"out", convert_dir}});

        if (cfg.probe_enabled) {
            const fs::path probe_dir = root / "probe";
            ensure_dir(probe_dir.string());
            LoadedFeatures train = load_converted_features(convert_dir, &split, Section::train);
            if (train.batch.count == 0)
                throw validation_error("probe training needs a non-empty train section");
            TrainResult trained = probe_train(train.batch, train.classes, cfg.train);
            probe_save(trained.head, (probe_dir / "head.bin").string());

            std::string metrics_text;
            json mh;
            mh["kind"] = "probe_metrics";
            mh["config_hash"] = hash;
            mh["classes"] = train.classes;
            mh["train_count"] = train.batch.count;
            mh["initial_objective"] = trained.history.front();
            mh["final_objective"] = trained.history.back();
            metrics_text += mh.dump() + "\n";

            json probe_report;
            probe_report["classes"] = train.classes;
            probe_report["initial_objective"] = trained.history.front();
            probe_report["final_objective"] = trained.history.back();
            probe_report["train_count"] = train.batch.count;
            for (Section s : {Section::valid, Section::test}) {
                LoadedFeatures feats = load_converted_features(convert_dir, &split, s);
                if (feats.batch.count == 0) continue;
                EvalResult ev = probe_evaluate(trained.head, feats.batch);
                json line;
                line["section"] = section_name(s);
                line["count"] = feats.batch.count;
                line["accuracy"] = ev.accuracy;
                line["macro_f1"] = ev.macro_f1;
                json rows = json::array();
                for (std::size_t c = 0; c < train.classes; ++c)
                    rows.push_back(std::vector<std::uint64_t>(
                        ev.confusion.begin() + static_cast<std::ptrdiff_t>(c * train.classes),
                        ev.confusion.begin() + static_cast<std::ptrdiff_t>((c + 1) * train.classes)));
                line["confusion"] = rows;
                metrics_text += line.dump() + "\n";
                probe_report[section_name(s)] = {{"count", feats.batch.count},
                                                 {"accuracy", ev.accuracy},
                                                 {"macro_f1", ev.macro_f1}};
                log_event("probe_eval", {{"section", section_name(s)},
                                         {"accuracy", ev.accuracy},
                                         {"macro_f1", ev.macro_f1}});
            }
            write_file((probe_dir / "metrics.jsonl").string(), metrics_text);
            report["probe"] = probe_report;
        }

        const std::string report_text = report.dump(2) + "\n";
        write_file((root / "report.json").string(), report_text);
        std::error_code ec;
        fs::remove(marker, ec);
        log_event("pipeline_done", {{"config_hash", hash}});
        return report_text;
    } catch (const std::exception& e) {
        try {
            write_file(marker.string(), std::string(e.what()) + "\n");
        } catch (...) {
            // the failure being reported takes precedence
        }
        throw;
    }
}

}  // namespace sigcast
