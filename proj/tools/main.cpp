// Command-line front end. Everything goes through the public C API so the
// shared library stays the single source of behavior.
#include "sigcast.h"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

namespace {

int report_failure(sigcast_status status) {
    std::fprintf(stderr, "error: %s\n", sigcast_last_error());
    return static_cast<int>(status);
}

std::string decode_separator(const std::string& value) {
    if (value == "space") return " ";
    if (value == "comma") return ",";
    if (value == "tab") return "\t";
    if (value == "semicolon") return ";";
    return value;
}

bool parse_ratios(const std::string& text, double out[3]) {
    return std::sscanf(text.c_str(), "%lf,%lf,%lf", &out[0], &out[1], &out[2]) == 3;
}

int section_index(const std::string& name) {
    if (name == "train") return 0;
    if (name == "valid") return 1;
    if (name == "test") return 2;
    if (name == "all") return -1;
    std::fprintf(stderr, "error: unknown section '%s' (train|valid|test|all)\n", name.c_str());
    return -2;
}

void print_dataset_summary(const sigcast_dataset* ds) {
    std::printf("{\"name\":\"%s\",\"count\":%zu,\"channels\":%zu,\"length\":%zu,"
                "\"classes\":%zu,\"checksum\":\"%s\"}\n",
                sigcast_dataset_name(ds), sigcast_dataset_count(ds), sigcast_dataset_channels(ds),
                sigcast_dataset_length(ds), sigcast_dataset_classes(ds),
                sigcast_dataset_checksum(ds));
}

struct DatasetGuard {
    sigcast_dataset* ds = nullptr;
    ~DatasetGuard() { sigcast_dataset_free(ds); }
};

struct SplitGuard {
    sigcast_split* split = nullptr;
    ~SplitGuard() { sigcast_split_free(split); }
};

struct ProbeGuard {
    sigcast_probe* probe = nullptr;
    ~ProbeGuard() { sigcast_probe_free(probe); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigcast: convert multi-channel time-series into model-ready images and text"};
    app.require_subcommand(1);

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "Parse a dataset into the normalized store");
    std::string in_format, in_path, in_out, in_partition = "train";
    std::string in_channel = "EEG Fpz-Cz", in_labels, in_stage_map;
    bool in_binary = false;
    std::size_t in_epoch_samples = 3000;
    std::size_t sy_channels = 3, sy_length = 256, sy_classes = 2, sy_per_class = 50;
    double sy_separation = 1.0;
    std::uint64_t sy_seed = 1;
    ingest->add_option("--format", in_format, "har|seizure_csv|edf|synth|store")->required();
    ingest->add_option("--path", in_path, "source file or directory");
    ingest->add_option("--out", in_out, "output dataset directory")->required();
    ingest->add_option("--partition", in_partition, "har partition suffix (default train)");
    ingest->add_flag("--binary-labels", in_binary, "seizure: collapse to seizure/non-seizure");
    ingest->add_option("--channel", in_channel, "edf: channel label (default 'EEG Fpz-Cz')");
    ingest->add_option("--labels", in_labels, "edf: per-epoch stage label file");
    ingest->add_option("--stage-map", in_stage_map, "edf: custom stage mapping file");
    ingest->add_option("--epoch-samples", in_epoch_samples, "edf: samples per epoch (default 3000)");
    ingest->add_option("--channels", sy_channels, "synth: channel count");
    ingest->add_option("--length", sy_length, "synth: samples per channel");
    ingest->add_option("--classes", sy_classes, "synth: class count");
    ingest->add_option("--per-class", sy_per_class, "synth: instances per class");
    ingest->add_option("--separation", sy_separation, "synth: class signal amplitude");
    ingest->add_option("--seed", sy_seed, "synth: generator seed");

    // ---- split ----
    auto* split_cmd = app.add_subcommand("split", "Write a deterministic train/valid/test split");
    std::string sp_dataset, sp_out, sp_ratios = "0.6,0.2,0.2";
    std::uint64_t sp_seed = 1;
    bool sp_stratified = false, sp_by_group = false;
    split_cmd->add_option("--dataset", sp_dataset, "dataset store directory")->required();
    split_cmd->add_option("--out", sp_out, "split manifest path")->required();
    split_cmd->add_option("--ratios", sp_ratios, "three fractions, e.g. 0.6,0.2,0.2");
    split_cmd->add_option("--seed", sp_seed, "shuffle seed");
    split_cmd->add_flag("--stratified", sp_stratified, "apportion per class");
    split_cmd->add_flag("--by-group", sp_by_group, "keep each group in one section");

    // ---- convert ----
    auto* convert = app.add_subcommand("convert", "Convert a dataset store");
    convert->require_subcommand(1);
    auto* conv_image = convert->add_subcommand("image", "One PNG per instance");
    std::string ci_dataset, ci_out, ci_reshape = "auto", ci_norm = "per_instance";
    std::size_t ci_height = 224, ci_width = 224, ci_parallelism = 1;
    double ci_gmin = 0.0, ci_gmax = 1.0;
    conv_image->add_option("--dataset", ci_dataset, "dataset store directory")->required();
    conv_image->add_option("--out", ci_out, "output directory")->required();
    conv_image->add_option("--height", ci_height, "target rows (default 224)");
    conv_image->add_option("--width", ci_width, "target columns (default 224)");
    conv_image->add_option("--reshape", ci_reshape, "keep|near_square|auto");
    conv_image->add_option("--norm", ci_norm, "per_instance|global");
    conv_image->add_option("--global-min", ci_gmin, "lower bound under global norm");
    conv_image->add_option("--global-max", ci_gmax, "upper bound under global norm");
    conv_image->add_option("--parallelism", ci_parallelism, "worker count (default 1)");

    auto* conv_text = convert->add_subcommand("text", "Delimited integer text per instance");
    std::string ct_dataset, ct_out, ct_aggregator = "mean", ct_separator = "space", ct_split;
    double ct_alpha = 1000.0;
    std::size_t ct_max_len = 1024, ct_parallelism = 1;
    bool ct_integer = false, ct_force = false, ct_legacy = false;
    conv_text->add_option("--dataset", ct_dataset, "dataset store directory")->required();
    conv_text->add_option("--out", ct_out, "output directory")->required();
    conv_text->add_option("--alpha", ct_alpha, "amplification factor (default 1000)");
    conv_text->add_option("--max-len", ct_max_len, "token budget (default 1024)");
    conv_text->add_option("--aggregator", ct_aggregator, "mean|first|max_abs");
    conv_text->add_option("--separator", ct_separator, "space|comma|tab|semicolon or literal");
    conv_text->add_option("--split", ct_split, "split manifest: one output file per section");
    conv_text->add_flag("--integer-input", ct_integer, "inputs already integers");
    conv_text->add_flag("--force", ct_force, "convert past the 3x budget rule");
    conv_text->add_flag("--legacy-flatten", ct_legacy, "flatten multi-channel rows first");
    conv_text->add_option("--parallelism", ct_parallelism, "worker count (default 1)");

    // ---- probe ----
    auto* probe = app.add_subcommand("probe", "Linear+softmax probe over converted outputs");
    probe->require_subcommand(1);
    auto* probe_train = probe->add_subcommand("train", "Fit on the train section");
    std::string pt_in, pt_split, pt_out;
    sigcast_train_options pt_opt;
    sigcast_train_options_default(&pt_opt);
    probe_train->add_option("--in", pt_in, "converted artifact directory")->required();
    probe_train->add_option("--split", pt_split, "split manifest")->required();
    probe_train->add_option("--out", pt_out, "head output path")->required();
    probe_train->add_option("--epochs", pt_opt.epochs, "training epochs (default 20)");
    probe_train->add_option("--lr", pt_opt.learning_rate, "learning rate (default 0.01)");
    probe_train->add_option("--batch-size", pt_opt.batch_size, "mini-batch size (default 32)");
    probe_train->add_option("--seed", pt_opt.seed, "shuffle seed (default 1)");
    probe_train->add_option("--l2", pt_opt.l2, "ridge penalty (default 0)");

    auto* probe_eval = probe->add_subcommand("eval", "Report accuracy, macro-F1, confusion");
    std::string pe_head, pe_in, pe_split, pe_section = "test";
    probe_eval->add_option("--head", pe_head, "trained head path")->required();
    probe_eval->add_option("--in", pe_in, "converted artifact directory")->required();
    probe_eval->add_option("--split", pe_split, "split manifest");
    probe_eval->add_option("--section", pe_section, "train|valid|test|all (default test)");

    // ---- inspect ----
    auto* inspect = app.add_subcommand("inspect", "Describe any artifact this tool wrote");
    std::string is_path;
    inspect->add_option("path", is_path, "artifact file or directory")->required();

    // ---- run ----
    auto* run = app.add_subcommand("run", "Full pipeline from a key=value config file");
    std::string run_config, run_out_root;
    run->add_option("--config", run_config, "pipeline config file")->required();
    run->add_option("--out-root", run_out_root, "override the configured output root");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // every usage problem is a validation failure
    }

    if (*ingest) {
        DatasetGuard guard;
        sigcast_status status = SIGCAST_ERR_VALIDATION;
        if (in_format == "har") {
            status = sigcast_dataset_load_har(in_path.c_str(), in_partition.c_str(), &guard.ds);
        } else if (in_format == "seizure_csv") {
            status = sigcast_dataset_load_seizure_csv(in_path.c_str(), in_binary ? 1 : 0,
                                                      &guard.ds);
        } else if (in_format == "edf") {
            status = sigcast_dataset_load_edf(in_path.c_str(), in_channel.c_str(),
                                              in_labels.c_str(),
                                              in_stage_map.empty() ? nullptr : in_stage_map.c_str(),
                                              in_epoch_samples, &guard.ds);
        } else if (in_format == "synth") {
            status = sigcast_dataset_synth(sy_channels, sy_length, sy_classes, sy_per_class,
                                           sy_separation, sy_seed, &guard.ds);
        } else if (in_format == "store") {
            status = sigcast_dataset_open(in_path.c_str(), &guard.ds);
        } else {
            std::fprintf(stderr, "error: unknown format '%s'\n", in_format.c_str());
            return 1;
        }
        if (status != SIGCAST_OK) return report_failure(status);
        status = sigcast_dataset_save(guard.ds, in_out.c_str());
        if (status != SIGCAST_OK) return report_failure(status);
        print_dataset_summary(guard.ds);
        return 0;
    }

    if (*split_cmd) {
        double ratios[3];
        if (!parse_ratios(sp_ratios, ratios)) {
            std::fprintf(stderr, "error: --ratios needs three comma-separated fractions\n");
            return 1;
        }
        DatasetGuard ds;
        sigcast_status status = sigcast_dataset_open(sp_dataset.c_str(), &ds.ds);
        if (status != SIGCAST_OK) return report_failure(status);
        SplitGuard split;
        status = sigcast_split_create(ds.ds, ratios, sp_seed, sp_stratified ? 1 : 0,
                                      sp_by_group ? 1 : 0, &split.split);
        if (status != SIGCAST_OK) return report_failure(status);
        status = sigcast_split_save(split.split, sp_out.c_str());
        if (status != SIGCAST_OK) return report_failure(status);
        std::printf("{\"train\":%zu,\"valid\":%zu,\"test\":%zu}\n",
                    sigcast_split_count(split.split, 0), sigcast_split_count(split.split, 1),
                    sigcast_split_count(split.split, 2));
        return 0;
    }

    if (*conv_image) {
        DatasetGuard ds;
        sigcast_status status = sigcast_dataset_open(ci_dataset.c_str(), &ds.ds);
        if (status != SIGCAST_OK) return report_failure(status);
        sigcast_image_options opt;
        sigcast_image_options_default(&opt);
        opt.height = ci_height;
        opt.width = ci_width;
        if (ci_reshape == "keep") opt.reshape = 0;
        else if (ci_reshape == "near_square") opt.reshape = 1;
        else if (ci_reshape == "auto") opt.reshape = 2;
        else {
            std::fprintf(stderr, "error: unknown reshape policy '%s'\n", ci_reshape.c_str());
            return 1;
        }
        if (ci_norm == "per_instance") opt.norm = 0;
        else if (ci_norm == "global") opt.norm = 1;
        else {
            std::fprintf(stderr, "error: unknown normalization '%s'\n", ci_norm.c_str());
            return 1;
        }
        opt.global_min = ci_gmin;
        opt.global_max = ci_gmax;
        status = sigcast_convert_images_to_dir(ds.ds, &opt, ci_out.c_str(), ci_parallelism);
        if (status != SIGCAST_OK) return report_failure(status);
        std::printf("{\"converted\":%zu,\"out\":\"%s\"}\n", sigcast_dataset_count(ds.ds),
                    ci_out.c_str());
        return 0;
    }

    if (*conv_text) {
        DatasetGuard ds;
        sigcast_status status = sigcast_dataset_open(ct_dataset.c_str(), &ds.ds);
        if (status != SIGCAST_OK) return report_failure(status);
        SplitGuard split;
        if (!ct_split.empty()) {
            status = sigcast_split_load(ct_split.c_str(), &split.split);
            if (status != SIGCAST_OK) return report_failure(status);
        }
        sigcast_text_options opt;
        sigcast_text_options_default(&opt);
        opt.alpha = ct_alpha;
        opt.max_len = ct_max_len;
        if (ct_aggregator == "mean") opt.aggregator = 0;
        else if (ct_aggregator == "first") opt.aggregator = 1;
        else if (ct_aggregator == "max_abs") opt.aggregator = 2;
        else {
            std::fprintf(stderr, "error: unknown aggregator '%s'\n", ct_aggregator.c_str());
            return 1;
        }
        const std::string separator = decode_separator(ct_separator);
        opt.separator = separator.c_str();
        opt.integer_input = ct_integer ? 1 : 0;
        opt.force = ct_force ? 1 : 0;
        opt.legacy_flatten = ct_legacy ? 1 : 0;
        status = sigcast_convert_texts_to_dir(ds.ds, &opt, split.split, ct_out.c_str(),
                                              ct_parallelism);
        if (status != SIGCAST_OK) return report_failure(status);
        std::printf("{\"converted\":%zu,\"out\":\"%s\"}\n", sigcast_dataset_count(ds.ds),
                    ct_out.c_str());
        return 0;
    }

    if (*probe_train) {
        ProbeGuard probe_handle;
        sigcast_status status =
            sigcast_probe_train_dir(pt_in.c_str(), pt_split.c_str(), &pt_opt, &probe_handle.probe);
        if (status != SIGCAST_OK) return report_failure(status);
        status = sigcast_probe_save(probe_handle.probe, pt_out.c_str());
        if (status != SIGCAST_OK) return report_failure(status);
        std::printf("{\"classes\":%zu,\"features\":%zu,\"head\":\"%s\"}\n",
                    sigcast_probe_classes(probe_handle.probe),
                    sigcast_probe_features(probe_handle.probe), pt_out.c_str());
        return 0;
    }

    if (*probe_eval) {
        const int section = section_index(pe_section);
        if (section == -2) return 1;
        if (section >= 0 && pe_split.empty()) {
            std::fprintf(stderr, "error: --section %s needs --split\n", pe_section.c_str());
            return 1;
        }
        ProbeGuard probe_handle;
        sigcast_status status = sigcast_probe_load(pe_head.c_str(), &probe_handle.probe);
        if (status != SIGCAST_OK) return report_failure(status);
        const std::size_t classes = sigcast_probe_classes(probe_handle.probe);
        std::vector<uint64_t> confusion(classes * classes, 0);
        sigcast_metrics metrics;
        status = sigcast_probe_eval_dir(probe_handle.probe, pe_in.c_str(),
                                        pe_split.empty() ? nullptr : pe_split.c_str(), section,
                                        &metrics, confusion.data());
        if (status != SIGCAST_OK) return report_failure(status);
        std::printf("{\"section\":\"%s\",\"count\":%zu}\n", pe_section.c_str(), metrics.count);
        std::printf("{\"accuracy\":%.17g}\n", metrics.accuracy);
        std::printf("{\"macro_f1\":%.17g}\n", metrics.macro_f1);
        for (std::size_t r = 0; r < classes; ++r) {
            std::printf("{\"confusion_row\":%zu,\"counts\":[", r);
            for (std::size_t c = 0; c < classes; ++c)
                std::printf("%s%llu", c > 0 ? "," : "",
                            static_cast<unsigned long long>(confusion[r * classes + c]));
            std::printf("]}\n");
        }
        return 0;
    }

    if (*inspect) {
        char* dump = nullptr;
        sigcast_status status = sigcast_inspect(is_path.c_str(), &dump);
        if (status != SIGCAST_OK) return report_failure(status);
        std::fputs(dump, stdout);
        sigcast_string_free(dump);
        return 0;
    }

    if (*run) {
        const char* override_root = nullptr;
        if (!run_out_root.empty()) {
            override_root = run_out_root.c_str();
        } else if (const char* env = std::getenv("SIGCAST_OUT_ROOT");
                   env != nullptr && env[0] != '\0') {
            override_root = env;
        }
        char* report = nullptr;
        sigcast_status status =
            sigcast_pipeline_run_file(run_config.c_str(), override_root, &report);
        if (status != SIGCAST_OK) return report_failure(status);
        std::fputs(report, stdout);
        sigcast_string_free(report);
        return 0;
    }

    std::fprintf(stderr, "error: no subcommand selected\n");
    return 1;
}
