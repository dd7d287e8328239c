/* sigcast: multi-channel time-series to model-ready images and text.
 *
 * All functions returning sigcast_status use 0 for success; nonzero values
 * match the CLI exit codes (1 validation, 2 I/O, 3 numeric). On failure the
 * message is available from sigcast_last_error() until the next call on the
 * same thread. Every *_free accepts NULL.
 */
#ifndef SIGCAST_H
#define SIGCAST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sigcast_status {
    SIGCAST_OK = 0,
    SIGCAST_ERR_VALIDATION = 1,
    SIGCAST_ERR_IO = 2,
    SIGCAST_ERR_NUMERIC = 3
} sigcast_status;

const char* sigcast_version(void);
const char* sigcast_last_error(void);

typedef struct sigcast_dataset sigcast_dataset;
typedef struct sigcast_split sigcast_split;
typedef struct sigcast_image sigcast_image;
typedef struct sigcast_text sigcast_text;
typedef struct sigcast_probe sigcast_probe;

/* ---------- dataset ingestion ---------- */

/* Nine-channel inertial recordings: dir holds <stem>_<partition>.txt files
 * (directly or under "Inertial Signals") plus y_<partition>.txt. */
sigcast_status sigcast_dataset_load_har(const char* dir, const char* partition,
                                        sigcast_dataset** out);

sigcast_status sigcast_dataset_load_seizure_csv(const char* path, int binary_labels,
                                                sigcast_dataset** out);

/* stage_map_path NULL selects the built-in 5-class stage mapping. */
sigcast_status sigcast_dataset_load_edf(const char* edf_path, const char* channel_label,
                                        const char* labels_path, const char* stage_map_path,
                                        size_t epoch_samples, sigcast_dataset** out);

sigcast_status sigcast_dataset_synth(size_t channels, size_t length, size_t classes,
                                     size_t per_class, double separation, uint64_t seed,
                                     sigcast_dataset** out);

/* Open a directory written by sigcast_dataset_save. */
sigcast_status sigcast_dataset_open(const char* dir, sigcast_dataset** out);
sigcast_status sigcast_dataset_save(const sigcast_dataset* ds, const char* dir);
void sigcast_dataset_free(sigcast_dataset* ds);

size_t sigcast_dataset_count(const sigcast_dataset* ds);
size_t sigcast_dataset_channels(const sigcast_dataset* ds);
size_t sigcast_dataset_length(const sigcast_dataset* ds);
size_t sigcast_dataset_classes(const sigcast_dataset* ds);
const char* sigcast_dataset_name(const sigcast_dataset* ds);
const char* sigcast_dataset_checksum(const sigcast_dataset* ds);
const char* sigcast_dataset_class_name(const sigcast_dataset* ds, size_t index);
const char* sigcast_dataset_instance_id(const sigcast_dataset* ds, size_t index);
int sigcast_dataset_instance_label(const sigcast_dataset* ds, size_t index);

/* Copies channels*length samples, row-major by channel. capacity is the
 * element count of `out`. */
sigcast_status sigcast_dataset_instance_samples(const sigcast_dataset* ds, size_t index,
                                                double* out, size_t capacity);

/* ---------- deterministic splits ---------- */

/* Sections are 0 train, 1 valid, 2 test throughout. */
sigcast_status sigcast_split_create(const sigcast_dataset* ds, const double ratios[3],
                                    uint64_t seed, int stratified, int by_group,
                                    sigcast_split** out);
sigcast_status sigcast_split_save(const sigcast_split* split, const char* path);
sigcast_status sigcast_split_load(const char* path, sigcast_split** out);
void sigcast_split_free(sigcast_split* split);

size_t sigcast_split_count(const sigcast_split* split, int section);
/* 0/1/2, or -1 when the id has no entry. */
int sigcast_split_section(const sigcast_split* split, const char* id);

/* ---------- image adapter ---------- */

typedef struct sigcast_image_options {
    size_t height;
    size_t width;
    int reshape;       /* 0 keep, 1 near_square, 2 auto (near_square for 1-row planes) */
    int norm;          /* 0 per_instance, 1 global */
    double global_min; /* read only under global normalization */
    double global_max;
} sigcast_image_options;

void sigcast_image_options_default(sigcast_image_options* opt);

sigcast_status sigcast_convert_image(const sigcast_dataset* ds, size_t index,
                                     const sigcast_image_options* opt, sigcast_image** out);
void sigcast_image_free(sigcast_image* img);

size_t sigcast_image_height(const sigcast_image* img);
size_t sigcast_image_width(const sigcast_image* img);
/* Plane-major: 3 * height * width bytes, valid until the image is freed. */
const uint8_t* sigcast_image_pixels(const sigcast_image* img);
void sigcast_image_norm_record(const sigcast_image* img, double* v_min, double* v_max);
/* "A", "B", or "single_channel". */
const char* sigcast_image_scheme(const sigcast_image* img);
sigcast_status sigcast_image_write_png(const sigcast_image* img, const char* path);

/* One <id>.png per instance plus an images.jsonl sidecar. */
sigcast_status sigcast_convert_images_to_dir(const sigcast_dataset* ds,
                                             const sigcast_image_options* opt, const char* dir,
                                             size_t parallelism);

/* ---------- text adapter ---------- */

typedef struct sigcast_text_options {
    double alpha;
    size_t max_len;
    int aggregator;        /* 0 mean, 1 first, 2 max_abs */
    const char* separator; /* NULL means a single space */
    int integer_input;     /* inputs already integers: skip amplification */
    int force;             /* convert even past the 3x budget rule */
    int legacy_flatten;    /* multi-channel comparison mode: row-major flatten */
} sigcast_text_options;

void sigcast_text_options_default(sigcast_text_options* opt);

sigcast_status sigcast_convert_text(const sigcast_dataset* ds, size_t index,
                                    const sigcast_text_options* opt, sigcast_text** out);
void sigcast_text_free(sigcast_text* txt);

const char* sigcast_text_string(const sigcast_text* txt);
size_t sigcast_text_token_count(const sigcast_text* txt);
size_t sigcast_text_window_size(const sigcast_text* txt);
/* "fits", "downsampled", or "rejected". */
const char* sigcast_text_status_name(const sigcast_text* txt);

/* One text file per section (all.txt when split is NULL) plus texts.jsonl. */
sigcast_status sigcast_convert_texts_to_dir(const sigcast_dataset* ds,
                                            const sigcast_text_options* opt,
                                            const sigcast_split* split, const char* dir,
                                            size_t parallelism);

/* ---------- probe ---------- */

typedef struct sigcast_train_options {
    double learning_rate;
    size_t epochs;
    size_t batch_size;
    uint64_t seed;
    double l2;
} sigcast_train_options;

void sigcast_train_options_default(sigcast_train_options* opt);

typedef struct sigcast_metrics {
    double accuracy;
    double macro_f1;
    size_t classes;
    size_t count;
} sigcast_metrics;

/* Trains on the split's train section of a converted directory. */
sigcast_status sigcast_probe_train_dir(const char* converted_dir, const char* split_path,
                                       const sigcast_train_options* opt, sigcast_probe** out);

/* section: 0/1/2 selects one split section (split_path required); -1 takes
 * every converted instance (split_path may be NULL). confusion, when not
 * NULL, receives classes*classes counts indexed [truth * classes + predicted]. */
sigcast_status sigcast_probe_eval_dir(const sigcast_probe* probe, const char* converted_dir,
                                      const char* split_path, int section,
                                      sigcast_metrics* metrics, uint64_t* confusion);

sigcast_status sigcast_probe_save(const sigcast_probe* probe, const char* path);
sigcast_status sigcast_probe_load(const char* path, sigcast_probe** out);
void sigcast_probe_free(sigcast_probe* probe);
size_t sigcast_probe_classes(const sigcast_probe* probe);
size_t sigcast_probe_features(const sigcast_probe* probe);

/* ---------- pipeline and inspection ---------- */

/* Runs ingest -> split -> convert -> optional probe from a key=value config.
 * out_root_override, when non-NULL, replaces the configured output root.
 * *report_json receives the run report; free it with sigcast_string_free. */
sigcast_status sigcast_pipeline_run_file(const char* config_path, const char* out_root_override,
                                         char** report_json);
sigcast_status sigcast_pipeline_run_text(const char* config_text, const char* out_root_override,
                                         char** report_json);

sigcast_status sigcast_inspect(const char* path, char** dump);

void sigcast_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SIGCAST_H */
