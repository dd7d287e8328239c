#include "sigcast.h"

#include "core/dataset_store.hpp"
#include "core/edf.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/har.hpp"
#include "core/image_adapter.hpp"
#include "core/inspect.hpp"
#include "core/io_util.hpp"
#include "core/pipeline.hpp"
#include "core/png_codec.hpp"
#include "core/probe.hpp"
#include "core/seizure.hpp"
#include "core/split.hpp"
#include "core/synth.hpp"
#include "core/text_adapter.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

struct sigcast_dataset {
    sigcast::Dataset value;
};
struct sigcast_split {
    sigcast::SplitManifest value;
};
struct sigcast_image {
    sigcast::PixelImage value;
};
struct sigcast_text {
    sigcast::TokenText value;
};
struct sigcast_probe {
    sigcast::ProbeHead value;
};

namespace {

thread_local std::string g_last_error;

sigcast_status fail(sigcast_status code, const char* message) {
    g_last_error = message;
    return code;
}

/* Runs fn, translating exceptions into status codes + the thread-local
 * message. Anything not carrying an explicit kind counts as validation. */
template <typename Fn>
sigcast_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SIGCAST_OK;
    } catch (const sigcast::error& e) {
        g_last_error = e.what();
        return static_cast<sigcast_status>(static_cast<int>(e.kind()));
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SIGCAST_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SIGCAST_ERR_VALIDATION;
    }
}

sigcast_status require(bool ok, const char* message) {
    return ok ? SIGCAST_OK : fail(SIGCAST_ERR_VALIDATION, message);
}

sigcast::ImageOptions to_image_options(const sigcast_image_options* opt) {
    sigcast::ImageOptions out;
    if (opt == nullptr) return out;
    out.height = opt->height;
    out.width = opt->width;
    switch (opt->reshape) {
        case 0: out.reshape = sigcast::ReshapePolicy::keep; break;
        case 1: out.reshape = sigcast::ReshapePolicy::near_square; break;
        case 2: out.reshape = sigcast::ReshapePolicy::auto_near_square; break;
        default: throw sigcast::validation_error("reshape must be 0, 1, or 2");
    }
    switch (opt->norm) {
        case 0: out.norm = sigcast::NormMode::per_instance; break;
        case 1: out.norm = sigcast::NormMode::global; break;
        default: throw sigcast::validation_error("norm must be 0 or 1");
    }
    out.global_min = opt->global_min;
    out.global_max = opt->global_max;
    return out;
}

sigcast::TextOptions to_text_options(const sigcast_text_options* opt) {
    sigcast::TextOptions out;
    if (opt == nullptr) return out;
    out.alpha = opt->alpha;
    out.max_len = opt->max_len;
    switch (opt->aggregator) {
        case 0: out.aggregator = sigcast::Aggregator::mean; break;
        case 1: out.aggregator = sigcast::Aggregator::first; break;
        case 2: out.aggregator = sigcast::Aggregator::max_abs; break;
        default: throw sigcast::validation_error("aggregator must be 0, 1, or 2");
    }
    if (opt->separator != nullptr) out.separator = opt->separator;
    out.integer_input = opt->integer_input != 0;
    out.force = opt->force != 0;
    out.legacy_flatten = opt->legacy_flatten != 0;
    return out;
}

sigcast::TrainOptions to_train_options(const sigcast_train_options* opt) {
    sigcast::TrainOptions out;
    if (opt == nullptr) return out;
    out.learning_rate = opt->learning_rate;
    out.epochs = opt->epochs;
    out.batch_size = opt->batch_size;
    out.seed = opt->seed;
    out.l2 = opt->l2;
    return out;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const sigcast::SignalMatrix& instance_at(const sigcast_dataset* ds, size_t index) {
    if (index >= ds->value.instances.size())
        throw sigcast::validation_error("instance index " + std::to_string(index) +
                                        " out of range (dataset holds " +
                                        std::to_string(ds->value.instances.size()) + ")");
    return ds->value.instances[index];
}

sigcast_status run_pipeline_config(sigcast::PipelineConfig cfg, const char* out_root_override,
                                   char** report_json) {
    return guarded([&] {
        if (out_root_override != nullptr && out_root_override[0] != '\0')
            cfg.out_root = out_root_override;
        std::string report = sigcast::run_pipeline(cfg);
        if (report_json != nullptr) *report_json = dup_string(report);
    });
}

}  // namespace

extern "C" {

const char* sigcast_version(void) { return "0.1.0"; }

const char* sigcast_last_error(void) { return g_last_error.c_str(); }

/* ---------- dataset ---------- */

sigcast_status sigcast_dataset_load_har(const char* dir, const char* partition,
                                        sigcast_dataset** out) {
    if (auto s = require(dir && partition && out, "dir, partition, and out are required")) return s;
    return guarded([&] {
        sigcast::HarFiles files = sigcast::find_har_files(dir, partition);
        auto handle = new sigcast_dataset{
            sigcast::load_har_dataset(files, std::string("har-") + partition)};
        *out = handle;
    });
}

sigcast_status sigcast_dataset_load_seizure_csv(const char* path, int binary_labels,
                                                sigcast_dataset** out) {
    if (auto s = require(path && out, "path and out are required")) return s;
    return guarded([&] {
        *out = new sigcast_dataset{sigcast::load_seizure_csv_file(path, binary_labels != 0)};
    });
}

sigcast_status sigcast_dataset_load_edf(const char* edf_path, const char* channel_label,
                                        const char* labels_path, const char* stage_map_path,
                                        size_t epoch_samples, sigcast_dataset** out) {
    if (auto s = require(edf_path && channel_label && labels_path && out,
                         "edf_path, channel_label, labels_path, and out are required"))
        return s;
    return guarded([&] {
        sigcast::StageMap map = stage_map_path == nullptr
                                    ? sigcast::default_stage_map()
                                    : sigcast::parse_stage_map(sigcast::read_file(stage_map_path));
        *out = new sigcast_dataset{
            sigcast::load_sleep_edf(edf_path, channel_label, labels_path, map, epoch_samples)};
    });
}

sigcast_status sigcast_dataset_synth(size_t channels, size_t length, size_t classes,
                                     size_t per_class, double separation, uint64_t seed,
                                     sigcast_dataset** out) {
    if (auto s = require(out != nullptr, "out is required")) return s;
    return guarded([&] {
        sigcast::SynthOptions opt;
        opt.channels = channels;
        opt.length = length;
        opt.classes = classes;
        opt.per_class = per_class;
        opt.separation = separation;
        opt.seed = seed;
        *out = new sigcast_dataset{sigcast::make_synthetic_dataset(opt)};
    });
}

sigcast_status sigcast_dataset_open(const char* dir, sigcast_dataset** out) {
    if (auto s = require(dir && out, "dir and out are required")) return s;
    return guarded([&] { *out = new sigcast_dataset{sigcast::load_dataset(dir)}; });
}

sigcast_status sigcast_dataset_save(const sigcast_dataset* ds, const char* dir) {
    if (auto s = require(ds && dir, "dataset and dir are required")) return s;
    return guarded([&] { sigcast::save_dataset(ds->value, dir); });
}

void sigcast_dataset_free(sigcast_dataset* ds) { delete ds; }

size_t sigcast_dataset_count(const sigcast_dataset* ds) {
    return ds ? ds->value.instances.size() : 0;
}

size_t sigcast_dataset_channels(const sigcast_dataset* ds) {
    return (ds && !ds->value.instances.empty()) ? ds->value.instances.front().channels : 0;
}

size_t sigcast_dataset_length(const sigcast_dataset* ds) {
    return (ds && !ds->value.instances.empty()) ? ds->value.instances.front().length : 0;
}

size_t sigcast_dataset_classes(const sigcast_dataset* ds) {
    return ds ? ds->value.class_names.size() : 0;
}

const char* sigcast_dataset_name(const sigcast_dataset* ds) {
    return ds ? ds->value.name.c_str() : "";
}

const char* sigcast_dataset_checksum(const sigcast_dataset* ds) {
    return ds ? ds->value.checksum.c_str() : "";
}

const char* sigcast_dataset_class_name(const sigcast_dataset* ds, size_t index) {
    if (ds == nullptr || index >= ds->value.class_names.size()) return nullptr;
    return ds->value.class_names[index].c_str();
}

const char* sigcast_dataset_instance_id(const sigcast_dataset* ds, size_t index) {
    if (ds == nullptr || index >= ds->value.instances.size()) return nullptr;
    return ds->value.instances[index].id.c_str();
}

int sigcast_dataset_instance_label(const sigcast_dataset* ds, size_t index) {
    if (ds == nullptr || index >= ds->value.instances.size()) return -1;
    return ds->value.instances[index].label;
}

sigcast_status sigcast_dataset_instance_samples(const sigcast_dataset* ds, size_t index,
                                                double* out, size_t capacity) {
    if (auto s = require(ds && out, "dataset and out are required")) return s;
    return guarded([&] {
        const sigcast::SignalMatrix& m = instance_at(ds, index);
        if (capacity < m.samples.size())
            throw sigcast::validation_error("buffer holds " + std::to_string(capacity) +
                                            " values, instance needs " +
                                            std::to_string(m.samples.size()));
        std::memcpy(out, m.samples.data(), m.samples.size() * sizeof(double));
    });
}

/* ---------- splits ---------- */

sigcast_status sigcast_split_create(const sigcast_dataset* ds, const double ratios[3],
                                    uint64_t seed, int stratified, int by_group,
                                    sigcast_split** out) {
    if (auto s = require(ds && out, "dataset and out are required")) return s;
    return guarded([&] {
        sigcast::SplitOptions opt;
        if (ratios != nullptr) {
            opt.ratios[0] = ratios[0];
            opt.ratios[1] = ratios[1];
            opt.ratios[2] = ratios[2];
        }
        opt.seed = seed;
        opt.stratified = stratified != 0;
        opt.by_group = by_group != 0;
        *out = new sigcast_split{sigcast::split_dataset(ds->value, opt)};
    });
}

sigcast_status sigcast_split_save(const sigcast_split* split, const char* path) {
    if (auto s = require(split && path, "split and path are required")) return s;
    return guarded([&] { sigcast::save_split(split->value, path); });
}

sigcast_status sigcast_split_load(const char* path, sigcast_split** out) {
    if (auto s = require(path && out, "path and out are required")) return s;
    return guarded([&] { *out = new sigcast_split{sigcast::load_split(path)}; });
}

void sigcast_split_free(sigcast_split* split) { delete split; }

size_t sigcast_split_count(const sigcast_split* split, int section) {
    if (split == nullptr || section < 0 || section > 2) return 0;
    return split->value.counts()[static_cast<size_t>(section)];
}

int sigcast_split_section(const sigcast_split* split, const char* id) {
    if (split == nullptr || id == nullptr) return -1;
    for (size_t i = 0; i < split->value.ids.size(); ++i)
        if (split->value.ids[i] == id) return static_cast<int>(split->value.assignment[i]);
    return -1;
}

/* ---------- images ---------- */

void sigcast_image_options_default(sigcast_image_options* opt) {
    if (opt == nullptr) return;
    opt->height = 224;
    opt->width = 224;
    opt->reshape = 2;
    opt->norm = 0;
    opt->global_min = 0.0;
    opt->global_max = 1.0;
}

sigcast_status sigcast_convert_image(const sigcast_dataset* ds, size_t index,
                                     const sigcast_image_options* opt, sigcast_image** out) {
    if (auto s = require(ds && out, "dataset and out are required")) return s;
    return guarded([&] {
        *out = new sigcast_image{
            sigcast::convert_to_image(instance_at(ds, index), to_image_options(opt))};
    });
}

void sigcast_image_free(sigcast_image* img) { delete img; }

size_t sigcast_image_height(const sigcast_image* img) { return img ? img->value.height : 0; }

size_t sigcast_image_width(const sigcast_image* img) { return img ? img->value.width : 0; }

const uint8_t* sigcast_image_pixels(const sigcast_image* img) {
    return img ? img->value.pixels.data() : nullptr;
}

void sigcast_image_norm_record(const sigcast_image* img, double* v_min, double* v_max) {
    if (img == nullptr) return;
    if (v_min != nullptr) *v_min = img->value.norm_min;
    if (v_max != nullptr) *v_max = img->value.norm_max;
}

const char* sigcast_image_scheme(const sigcast_image* img) {
    return img ? sigcast::scheme_name(img->value.scheme) : "";
}

sigcast_status sigcast_image_write_png(const sigcast_image* img, const char* path) {
    if (auto s = require(img && path, "image and path are required")) return s;
    return guarded([&] {
        sigcast::write_file(path, sigcast::encode_png_rgb8(sigcast::to_interleaved(img->value)));
    });
}

sigcast_status sigcast_convert_images_to_dir(const sigcast_dataset* ds,
                                             const sigcast_image_options* opt, const char* dir,
                                             size_t parallelism) {
    if (auto s = require(ds && dir, "dataset and dir are required")) return s;
    return guarded([&] {
        const sigcast::ImageOptions options = to_image_options(opt);
        sigcast::convert_images_to_dir(ds->value, options, dir,
                                       sigcast::image_options_hash(options), parallelism);
    });
}

/* ---------- texts ---------- */

void sigcast_text_options_default(sigcast_text_options* opt) {
    if (opt == nullptr) return;
    opt->alpha = 1000.0;
    opt->max_len = 1024;
    opt->aggregator = 0;
    opt->separator = NULL;
    opt->integer_input = 0;
    opt->force = 0;
    opt->legacy_flatten = 0;
}

sigcast_status sigcast_convert_text(const sigcast_dataset* ds, size_t index,
                                    const sigcast_text_options* opt, sigcast_text** out) {
    if (auto s = require(ds && out, "dataset and out are required")) return s;
    return guarded([&] {
        *out = new sigcast_text{
            sigcast::convert_to_text(instance_at(ds, index), to_text_options(opt))};
    });
}

void sigcast_text_free(sigcast_text* txt) { delete txt; }

const char* sigcast_text_string(const sigcast_text* txt) {
    return txt ? txt->value.text.c_str() : "";
}

size_t sigcast_text_token_count(const sigcast_text* txt) {
    return txt ? txt->value.token_count : 0;
}

size_t sigcast_text_window_size(const sigcast_text* txt) {
    return txt ? txt->value.window_size : 0;
}

const char* sigcast_text_status_name(const sigcast_text* txt) {
    return txt ? sigcast::overflow_status_name(txt->value.status) : "";
}

sigcast_status sigcast_convert_texts_to_dir(const sigcast_dataset* ds,
                                            const sigcast_text_options* opt,
                                            const sigcast_split* split, const char* dir,
                                            size_t parallelism) {
    if (auto s = require(ds && dir, "dataset and dir are required")) return s;
    return guarded([&] {
        const sigcast::TextOptions options = to_text_options(opt);
        sigcast::convert_texts_to_dir(ds->value, options, split ? &split->value : nullptr, dir,
                                      sigcast::text_options_hash(options), parallelism);
    });
}

/* ---------- probe ---------- */

void sigcast_train_options_default(sigcast_train_options* opt) {
    if (opt == nullptr) return;
    opt->learning_rate = 0.01;
    opt->epochs = 20;
    opt->batch_size = 32;
    opt->seed = 1;
    opt->l2 = 0.0;
}

sigcast_status sigcast_probe_train_dir(const char* converted_dir, const char* split_path,
                                       const sigcast_train_options* opt, sigcast_probe** out) {
    if (auto s = require(converted_dir && split_path && out,
                         "converted_dir, split_path, and out are required"))
        return s;
    return guarded([&] {
        sigcast::SplitManifest split = sigcast::load_split(split_path);
        sigcast::LoadedFeatures feats =
            sigcast::load_converted_features(converted_dir, &split, sigcast::Section::train);
        sigcast::TrainResult result =
            sigcast::probe_train(feats.batch, feats.classes, to_train_options(opt));
        *out = new sigcast_probe{std::move(result.head)};
    });
}

sigcast_status sigcast_probe_eval_dir(const sigcast_probe* probe, const char* converted_dir,
                                      const char* split_path, int section,
                                      sigcast_metrics* metrics, uint64_t* confusion) {
    if (auto s = require(probe && converted_dir && metrics,
                         "probe, converted_dir, and metrics are required"))
        return s;
    if (auto s = require(section >= -1 && section <= 2, "section must be -1, 0, 1, or 2")) return s;
    if (auto s = require(section == -1 || split_path != nullptr,
                         "selecting a section requires split_path"))
        return s;
    return guarded([&] {
        std::optional<sigcast::SplitManifest> split;
        if (split_path != nullptr) split = sigcast::load_split(split_path);
        std::optional<sigcast::Section> wanted;
        if (section >= 0) wanted = static_cast<sigcast::Section>(section);
        sigcast::LoadedFeatures feats = sigcast::load_converted_features(
            converted_dir, split.has_value() ? &*split : nullptr, wanted);
        sigcast::EvalResult ev = sigcast::probe_evaluate(probe->value, feats.batch);
        metrics->accuracy = ev.accuracy;
        metrics->macro_f1 = ev.macro_f1;
        metrics->classes = probe->value.classes;
        metrics->count = feats.batch.count;
        if (confusion != nullptr)
            std::memcpy(confusion, ev.confusion.data(), ev.confusion.size() * sizeof(uint64_t));
    });
}

sigcast_status sigcast_probe_save(const sigcast_probe* probe, const char* path) {
    if (auto s = require(probe && path, "probe and path are required")) return s;
    return guarded([&] { sigcast::probe_save(probe->value, path); });
}

sigcast_status sigcast_probe_load(const char* path, sigcast_probe** out) {
    if (auto s = require(path && out, "path and out are required")) return s;
    return guarded([&] { *out = new sigcast_probe{sigcast::probe_load(path)}; });
}

void sigcast_probe_free(sigcast_probe* probe) { delete probe; }

size_t sigcast_probe_classes(const sigcast_probe* probe) {
    return probe ? probe->value.classes : 0;
}

size_t sigcast_probe_features(const sigcast_probe* probe) {
    return probe ? probe->value.features : 0;
}

/* ---------- pipeline and inspection ---------- */

sigcast_status sigcast_pipeline_run_file(const char* config_path, const char* out_root_override,
                                         char** report_json) {
    if (auto s = require(config_path != nullptr, "config_path is required")) return s;
    try {
        return run_pipeline_config(sigcast::load_pipeline_config(config_path), out_root_override,
                                   report_json);
    } catch (const sigcast::error& e) {
        g_last_error = e.what();
        return static_cast<sigcast_status>(static_cast<int>(e.kind()));
    }
}

sigcast_status sigcast_pipeline_run_text(const char* config_text, const char* out_root_override,
                                         char** report_json) {
    if (auto s = require(config_text != nullptr, "config_text is required")) return s;
    try {
        return run_pipeline_config(sigcast::parse_pipeline_config(config_text, "config"),
                                   out_root_override, report_json);
    } catch (const sigcast::error& e) {
        g_last_error = e.what();
        return static_cast<sigcast_status>(static_cast<int>(e.kind()));
    }
}

sigcast_status sigcast_inspect(const char* path, char** dump) {
    if (auto s = require(path && dump, "path and dump are required")) return s;
    return guarded([&] { *dump = dup_string(sigcast::inspect_path(path)); });
}

void sigcast_string_free(char* s) { std::free(s); }

} /* extern "C" */
