// Acceptance gate: ten independent checks, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/dataset_store.hpp"
#include "core/edf.hpp"
#include "core/error.hpp"
#include "core/features.hpp"
#include "core/hash.hpp"
#include "core/image_adapter.hpp"
#include "core/io_util.hpp"
#include "core/pipeline.hpp"
#include "core/png_codec.hpp"
#include "core/probe.hpp"
#include "core/resample.hpp"
#include "core/split.hpp"
#include "core/synth.hpp"
#include "core/text_adapter.hpp"
#include "core/types.hpp"
#include "support.hpp"

using namespace sigcast;
namespace fs = std::filesystem;

namespace {

struct Checker {
    bool ok = true;
    std::string first_failure;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

SignalMatrix random_instance(std::mt19937_64& gen, std::size_t channels, std::size_t length) {
    SignalMatrix m = testsup::make_matrix("a", channels, length);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (double& v : m.samples) v = dist(gen);
    return m;
}

// independent piecewise-linear oracle, duplicated on purpose
double oracle_point(const std::vector<double>& src, double pos) {
    const std::size_t n = src.size();
    if (n == 1) return src[0];
    std::size_t i0 = static_cast<std::size_t>(pos);
    if (i0 >= n - 1) i0 = n - 2;
    const double frac = pos - static_cast<double>(i0);
    return src[i0] * (1.0 - frac) + src[i0 + 1] * frac;
}

double axis_pos(std::size_t j, std::size_t src_n, std::size_t dst_m) {
    if (src_n == 1) return 0.0;
    if (dst_m == 1) return 0.5 * static_cast<double>(src_n - 1);
    return static_cast<double>(j) * static_cast<double>(src_n - 1) /
           static_cast<double>(dst_m - 1);
}

bool close_rel(double a, double b, double tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

// ---- criterion bodies -----------------------------------------------------

bool criterion_geometry(Checker& c) {
    std::mt19937_64 gen(1);

    SignalMatrix har_like = random_instance(gen, 9, 128);
    ImageOptions iopt;  // 224x224 defaults
    const PixelImage img = convert_to_image(har_like, iopt);
    c.require(img.scheme == RgbScheme::scheme_a, "9x128 must take the divisible path");
    c.require(img.height == 224 && img.width == 224, "image geometry must be 224x224");
    c.require(img.pixels.size() == 3u * 224 * 224, "pixel buffer must be 3x224x224");
    const std::string png = encode_png_rgb8(to_interleaved(img));
    const RgbImage decoded = decode_png_rgb8(png, "mem");
    c.require(decoded.height == 224 && decoded.width == 224, "PNG must round trip 224x224");

    SignalMatrix seizure_like = random_instance(gen, 1, 178);
    TextOptions topt;  // L = 1024
    const TokenText fits = convert_to_text(seizure_like, topt);
    c.require(fits.status == OverflowStatus::fits, "178 tokens must fit the budget");
    c.require(fits.token_count == 178, "178 samples must give exactly 178 integers");
    c.require(parse_token_text(fits.text, topt.separator).size() == 178,
              "the rendering must carry 178 integers");

    SignalMatrix sleep_like = random_instance(gen, 1, 3000);
    const TokenText down = convert_to_text(sleep_like, topt);
    c.require(down.status == OverflowStatus::downsampled, "3000 samples must downsample");
    c.require(down.token_count == 1000, "3000 samples must give exactly 1000 integers");
    c.require(down.window_size == 3, "the window must be ceil(3000/1024) = 3");

    const PixelImage sleep_img = convert_to_image(sleep_like, iopt);
    c.require(sleep_img.pre_rows == 50 && sleep_img.pre_cols == 60,
              "1x3000 must reshape to 50x60 before resizing");
    c.require(sleep_img.height == 224 && sleep_img.width == 224,
              "the reshaped epoch must still land on 224x224");
    return c.ok;
}

bool criterion_interpolation(Checker& c) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);

    for (int trial = 0; trial < 600; ++trial) {
        std::vector<double> src(2 + gen() % 199);
        for (double& v : src) v = dist(gen);
        const std::size_t m = 1 + gen() % 300;
        const std::vector<double> got = linear_resample_1d(src, m);
        for (std::size_t j = 0; j < m; ++j) {
            const double want = oracle_point(src, axis_pos(j, src.size(), m));
            if (!close_rel(got[j], want, 1e-10)) {
                c.require(false, "1-D resample diverged from the oracle");
                return c.ok;
            }
        }
    }

    for (int trial = 0; trial < 400; ++trial) {
        Plane p;
        p.rows = 1 + gen() % 24;
        p.cols = 1 + gen() % 24;
        p.values.resize(p.rows * p.cols);
        for (double& v : p.values) v = dist(gen);
        const std::size_t tr = 1 + gen() % 32;
        const std::size_t tc = 1 + gen() % 32;
        const Plane got = bilinear_resize_2d(p, tr, tc);
        for (std::size_t r = 0; r < tr; ++r) {
            const double rpos = axis_pos(r, p.rows, tr);
            for (std::size_t cc = 0; cc < tc; ++cc) {
                const double cpos = axis_pos(cc, p.cols, tc);
                std::size_t r0 = static_cast<std::size_t>(rpos);
                if (p.rows > 1 && r0 >= p.rows - 1) r0 = p.rows - 2;
                const double rf = p.rows == 1 ? 0.0 : rpos - static_cast<double>(r0);
                std::vector<double> row0(p.cols), row1(p.cols);
                for (std::size_t k = 0; k < p.cols; ++k) {
                    row0[k] = p.at(r0, k);
                    row1[k] = p.rows == 1 ? row0[k] : p.at(r0 + 1, k);
                }
                const double want = oracle_point(row0, cpos) * (1.0 - rf) +
                                    oracle_point(row1, cpos) * rf;
                if (!close_rel(got.at(r, cc), want, 1e-10)) {
                    c.require(false, "2-D resize diverged from the oracle");
                    return c.ok;
                }
            }
        }
    }
    return c.ok;
}

bool criterion_scheme_a(Checker& c) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t channels = 3 * (1 + gen() % 10);
        const std::size_t t_len = 2 + gen() % 99;
        const SignalMatrix m = random_instance(gen, channels, t_len);
        const RgbStack stack = build_rgb_stack(m);
        if (stack.scheme != RgbScheme::scheme_a) {
            c.require(false, "divisible channel counts must select the relabel path");
            return c.ok;
        }
        const std::size_t rows = channels / 3;
        SignalMatrix rebuilt = testsup::make_matrix(m.id, channels, t_len);
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t t = 0; t < t_len; ++t)
                    rebuilt.at(p * rows + r, t) = stack.planes[p].at(r, t);
        if (rebuilt.samples != m.samples) {  // element-wise bit equality
            c.require(false, "inverting the relabel map must recover the matrix bit-exactly");
            return c.ok;
        }
    }
    return c.ok;
}

bool criterion_overflow_rule(Checker& c) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t l = 1 + gen() % 3000;
        const std::size_t t = 1 + gen() % (4 * l + 8);
        const OverflowStatus got = check_overflow(t, l);
        OverflowStatus want;
        if (t <= l)
            want = OverflowStatus::fits;
        else if (t <= 3 * l)
            want = OverflowStatus::downsampled;
        else
            want = OverflowStatus::rejected;
        if (got != want) {
            c.require(false, "overflow status disagreed at T=" + std::to_string(t) +
                                 " L=" + std::to_string(l));
            return c.ok;
        }
    }
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t l = 1 + gen() % 2000;
        if (check_overflow(l, l) != OverflowStatus::fits ||
            check_overflow(l + 1, l) != OverflowStatus::downsampled ||
            check_overflow(3 * l, l) != OverflowStatus::downsampled ||
            check_overflow(3 * l + 1, l) != OverflowStatus::rejected) {
            c.require(false, "boundaries at L and 3L must be exact for L=" +
                                 std::to_string(l));
            return c.ok;
        }
    }
    return c.ok;
}

bool criterion_text_round_trip(Checker& c) {
    std::mt19937_64 gen(5);
    const std::string seps[] = {" ", ",", ";", "\t", " / "};
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::int64_t> v(1 + gen() % 200);
        for (auto& x : v) {
            x = static_cast<std::int64_t>(gen());
            if (trial % 3 == 0) x %= 100000;
        }
        if (trial == 0) {
            v.front() = INT64_MIN;
            v.back() = INT64_MAX;
        }
        const std::string& sep = seps[trial % 5];
        if (parse_token_text(render_tokens(v, sep), sep) != v) {
            c.require(false, "render/parse must be the identity on integer sequences");
            return c.ok;
        }
    }
    // the emitted token count never exceeds the budget
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t t_len = 1 + gen() % 2000;
        TextOptions opt;
        opt.max_len = 1 + gen() % 700;
        opt.force = true;
        const SignalMatrix m = random_instance(gen, 1, t_len);
        const TokenText out = convert_to_text(m, opt);
        if (out.token_count > opt.max_len) {
            c.require(false, "token_count must never exceed the budget");
            return c.ok;
        }
        if (parse_token_text(out.text, opt.separator).size() != out.token_count) {
            c.require(false, "token_count must match the rendered text");
            return c.ok;
        }
    }
    return c.ok;
}

bool criterion_gradients(Checker& c) {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0);
    std::uniform_real_distribution<double> wdist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t classes = 2 + gen() % 4;
        const std::size_t width = 1 + gen() % 8;
        const std::size_t count = 1 + gen() % 10;
        FeatureBatch b;
        b.count = count;
        b.width = width;
        b.x.resize(count * width);
        b.labels.resize(count);
        for (double& v : b.x) v = xdist(gen);
        for (int& l : b.labels) l = static_cast<int>(gen() % classes);
        ProbeHead h = ProbeHead::zeros(classes, width);
        for (double& v : h.weights) v = wdist(gen);
        for (double& v : h.bias) v = wdist(gen);
        const double l2 = (trial % 2 == 0) ? 0.1 : 0.0;

        std::vector<double> gw, gb;
        probe_gradient(h, b, l2, gw, gb);
        const double eps = 1e-6;
        for (std::size_t i = 0; i < gw.size() + gb.size(); ++i) {
            double* slot = i < gw.size() ? &h.weights[i] : &h.bias[i - gw.size()];
            const double analytic = i < gw.size() ? gw[i] : gb[i - gw.size()];
            const double save = *slot;
            *slot = save + eps;
            const double up = probe_objective(h, b, l2);
            *slot = save - eps;
            const double down = probe_objective(h, b, l2);
            *slot = save;
            const double fd = -(up - down) / (2.0 * eps);
            const double scale = std::max({1.0, std::fabs(fd), std::fabs(analytic)});
            if (std::fabs(fd - analytic) > 1e-4 * scale) {
                c.require(false, "finite differences disagreed with the analytic gradient");
                return c.ok;
            }
        }
    }
    return c.ok;
}

double section_accuracy(const std::string& dir, const SplitManifest& split,
                        const TrainOptions& topt) {
    const LoadedFeatures train = load_converted_features(dir, &split, Section::train);
    const TrainResult trained = probe_train(train.batch, train.classes, topt);
    const LoadedFeatures test = load_converted_features(dir, &split, Section::test);
    return probe_evaluate(trained.head, test.batch).accuracy;
}

bool criterion_discrimination(Checker& c) {
    testsup::TempDir tmp;

    {  // image path: 6 classes, 9x128, separation 3
        SynthOptions sopt;
        sopt.channels = 9;
        sopt.length = 128;
        sopt.classes = 6;
        sopt.per_class = 50;
        sopt.separation = 3.0;
        sopt.seed = 1;
        const Dataset ds = make_synthetic_dataset(sopt);
        SplitOptions split_opt;
        const SplitManifest split = split_dataset(ds, split_opt);
        ImageOptions iopt;
        iopt.height = 32;
        iopt.width = 32;
        convert_images_to_dir(ds, iopt, tmp.sub("img"), image_options_hash(iopt), 4);
        TrainOptions topt;
        topt.epochs = 30;
        topt.learning_rate = 1e-4;
        topt.seed = 1;
        const double acc = section_accuracy(tmp.sub("img"), split, topt);
        c.require(acc >= 0.95, "image-path test accuracy " + std::to_string(acc) +
                                   " fell below 0.95");
    }

    {  // text path: 2 classes, 1x178, separation 3
        SynthOptions sopt;
        sopt.channels = 1;
        sopt.length = 178;
        sopt.classes = 2;
        sopt.per_class = 150;
        sopt.separation = 3.0;
        sopt.seed = 2;
        const Dataset ds = make_synthetic_dataset(sopt);
        SplitOptions split_opt;
        const SplitManifest split = split_dataset(ds, split_opt);
        TextOptions topt_text;
        convert_texts_to_dir(ds, topt_text, &split, tmp.sub("txt"),
                             text_options_hash(topt_text), 4);
        TrainOptions topt;
        topt.epochs = 30;
        topt.learning_rate = 0.001;
        topt.seed = 1;
        const double acc = section_accuracy(tmp.sub("txt"), split, topt);
        c.require(acc >= 0.95, "text-path test accuracy " + std::to_string(acc) +
                                   " fell below 0.95");
    }

    {  // no signal: accuracy must sit near chance
        SynthOptions sopt;
        sopt.channels = 1;
        sopt.length = 178;
        sopt.classes = 2;
        sopt.per_class = 500;
        sopt.separation = 0.0;
        sopt.seed = 3;
        const Dataset ds = make_synthetic_dataset(sopt);
        SplitOptions split_opt;
        const SplitManifest split = split_dataset(ds, split_opt);
        TextOptions topt_text;
        convert_texts_to_dir(ds, topt_text, &split, tmp.sub("null"),
                             text_options_hash(topt_text), 4);
        TrainOptions topt;
        topt.epochs = 10;
        topt.learning_rate = 0.001;
        topt.seed = 1;
        const double acc = section_accuracy(tmp.sub("null"), split, topt);
        c.require(std::fabs(acc - 0.5) <= 0.05,
                  "separation-0 accuracy " + std::to_string(acc) +
                      " strayed more than 5 points from chance");
    }
    return c.ok;
}

std::string tree_digest(const std::string& root) {
    std::vector<std::string> rel;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), root).string());
    std::sort(rel.begin(), rel.end());
    std::string all;
    for (const auto& r : rel) {
        all += r;
        all += '\0';
        all += read_file((fs::path(root) / r).string());
        all += '\0';
    }
    return sha256_hex(all);
}

bool criterion_determinism(Checker& c) {
    testsup::TempDir tmp;

    PipelineConfig cfg;
    cfg.dataset_format = "synth";
    cfg.synth.channels = 3;
    cfg.synth.length = 48;
    cfg.synth.classes = 2;
    cfg.synth.per_class = 8;
    cfg.synth.separation = 2.0;
    cfg.adapter = "image";
    cfg.image.height = 16;
    cfg.image.width = 16;
    cfg.probe_enabled = true;
    cfg.train.epochs = 3;
    cfg.train.learning_rate = 0.001;

    cfg.out_root = tmp.sub("a");
    cfg.parallelism = 1;
    run_pipeline(cfg);
    cfg.out_root = tmp.sub("b");
    run_pipeline(cfg);
    cfg.out_root = tmp.sub("c");
    cfg.parallelism = 8;
    run_pipeline(cfg);

    const std::string hash = pipeline_config_hash(cfg);
    const std::string da = tree_digest(tmp.sub("a") + "/" + hash);
    c.require(da == tree_digest(tmp.sub("b") + "/" + hash),
              "two serial image runs must be byte-identical");
    c.require(da == tree_digest(tmp.sub("c") + "/" + hash),
              "a parallel image run must match the serial tree");

    // in-place rerun
    cfg.out_root = tmp.sub("a");
    cfg.parallelism = 1;
    run_pipeline(cfg);
    c.require(da == tree_digest(tmp.sub("a") + "/" + hash),
              "an in-place rerun must leave the tree unchanged");

    PipelineConfig text_cfg;
    text_cfg.dataset_format = "synth";
    text_cfg.synth.channels = 1;
    text_cfg.synth.length = 120;
    text_cfg.synth.classes = 2;
    text_cfg.synth.per_class = 10;
    text_cfg.adapter = "text";
    text_cfg.text.max_len = 64;
    text_cfg.out_root = tmp.sub("t1");
    text_cfg.parallelism = 1;
    run_pipeline(text_cfg);
    text_cfg.out_root = tmp.sub("t8");
    text_cfg.parallelism = 8;
    run_pipeline(text_cfg);
    const std::string thash = pipeline_config_hash(text_cfg);
    c.require(tree_digest(tmp.sub("t1") + "/" + thash) ==
                  tree_digest(tmp.sub("t8") + "/" + thash),
              "text trees must not depend on the worker count");
    return c.ok;
}

bool criterion_edf(Checker& c) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t ns = 1 + gen() % 4;
        const std::size_t records = 1 + gen() % 5;
        std::vector<testsup::EdfTestSignal> signals(ns);
        std::vector<std::vector<double>> truth(ns);
        for (std::size_t s = 0; s < ns; ++s) {
            auto& sig = signals[s];
            sig.label = "sig " + std::to_string(s);
            sig.physical_min = -(100 + static_cast<long long>(gen() % 400));
            sig.physical_max = 50 + static_cast<long long>(gen() % 450);
            const int bits = 7 + static_cast<int>(gen() % 9);  // 7..15
            sig.digital_min = -(1 << bits);
            sig.digital_max = (1 << bits) - 1;
            sig.samples_per_record = 1 + gen() % 60;
            const double pmin = static_cast<double>(sig.physical_min);
            const double pmax = static_cast<double>(sig.physical_max);
            const double step =
                (pmax - pmin) / (static_cast<double>(sig.digital_max) -
                                 static_cast<double>(sig.digital_min));
            const std::size_t total = records * sig.samples_per_record;
            truth[s].resize(total);
            sig.digital.resize(total);
            for (std::size_t i = 0; i < total; ++i) {
                truth[s][i] = pmin + (pmax - pmin) * unit(gen);
                long long d = sig.digital_min +
                              static_cast<long long>(std::llround((truth[s][i] - pmin) / step));
                d = std::min<long long>(sig.digital_max,
                                        std::max<long long>(sig.digital_min, d));
                sig.digital[i] = static_cast<std::int16_t>(d);
            }
        }
        const EdfRecording rec =
            parse_edf(testsup::build_edf(signals, static_cast<long long>(records)), "mem");
        for (std::size_t s = 0; s < ns; ++s) {
            const double step =
                (static_cast<double>(signals[s].physical_max) -
                 static_cast<double>(signals[s].physical_min)) /
                (static_cast<double>(signals[s].digital_max) -
                 static_cast<double>(signals[s].digital_min));
            if (rec.signals[s].samples.size() != truth[s].size()) {
                c.require(false, "parsed sample count diverged");
                return c.ok;
            }
            for (std::size_t i = 0; i < truth[s].size(); ++i) {
                if (std::fabs(rec.signals[s].samples[i] - truth[s][i]) >
                    step * (1.0 + 1e-9)) {
                    c.require(false, "a sample strayed past one quantization step");
                    return c.ok;
                }
            }
        }
    }

    // the two specified failure modes
    testsup::EdfTestSignal sig;
    sig.samples_per_record = 6;
    sig.digital = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    const std::string whole = testsup::build_edf({sig}, 2);
    bool truncation_fired = false;
    try {
        parse_edf(whole.substr(0, whole.size() - 5), "mem");
    } catch (const io_error&) {
        truncation_fired = true;
    }
    c.require(truncation_fired, "a truncated payload must raise the I/O error");

    testsup::EdfTestSignal degenerate = sig;
    degenerate.digital_min = 7;
    degenerate.digital_max = 7;
    bool degenerate_fired = false;
    try {
        parse_edf(testsup::build_edf({degenerate}, 2), "mem");
    } catch (const numeric_error&) {
        degenerate_fired = true;
    }
    c.require(degenerate_fired, "a flat calibration must raise the numeric error");
    return c.ok;
}

bool criterion_metrics(Checker& c) {
    struct Case {
        std::size_t classes;
        std::vector<std::uint64_t> confusion;
        double accuracy;
        double macro_f1;
    };
    const std::vector<Case> cases = {
        {2, {1, 1, 1, 1}, 0.5, 0.5},
        {2, {2, 0, 0, 2}, 1.0, 1.0},
        {2, {0, 2, 2, 0}, 0.0, 0.0},
        {2, {3, 1, 0, 4}, 7.0 / 8.0, (6.0 / 7.0 + 8.0 / 9.0) / 2.0},
        {3, {2, 0, 0, 0, 2, 0, 0, 0, 2}, 1.0, 1.0},
        {3, {1, 0, 0, 0, 1, 0, 1, 0, 0}, 2.0 / 3.0, (2.0 / 3.0 + 1.0 + 0.0) / 3.0},
        {3, {1, 0, 0, 0, 1, 0, 0, 0, 0}, 1.0, (1.0 + 1.0 + 0.0) / 3.0},
        {4, std::vector<std::uint64_t>(16, 1), 4.0 / 16.0, 0.25},
        {2, {0, 1, 0, 1}, 0.5, (0.0 + 2.0 / 3.0) / 2.0},
        {5,
         {5, 0, 0, 0, 0, 0, 4, 1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 2, 0, 1, 0, 0, 0, 1},
         15.0 / 17.0,
         (10.0 / 11.0 + 8.0 / 9.0 + 6.0 / 7.0 + 1.0 + 2.0 / 3.0) / 5.0},
    };

    std::size_t index = 0;
    for (const Case& k : cases) {
        ++index;
        // realize the confusion matrix through evaluate(): one-hot features,
        // identity weights, so prediction == the encoded class
        FeatureBatch b;
        b.width = k.classes;
        for (std::size_t truth = 0; truth < k.classes; ++truth) {
            for (std::size_t pred = 0; pred < k.classes; ++pred) {
                const std::uint64_t n = k.confusion[truth * k.classes + pred];
                for (std::uint64_t rep = 0; rep < n; ++rep) {
                    for (std::size_t f = 0; f < k.classes; ++f)
                        b.x.push_back(f == pred ? 1.0 : 0.0);
                    b.labels.push_back(static_cast<int>(truth));
                    b.count++;
                }
            }
        }
        ProbeHead head = ProbeHead::zeros(k.classes, k.classes);
        for (std::size_t f = 0; f < k.classes; ++f) head.weights[f * k.classes + f] = 1.0;

        const EvalResult ev = probe_evaluate(head, b);
        if (ev.confusion != k.confusion) {
            c.require(false, "case " + std::to_string(index) +
                                 ": evaluate() built the wrong confusion matrix");
            return c.ok;
        }
        if (ev.accuracy != k.accuracy) {
            c.require(false, "case " + std::to_string(index) + ": accuracy " +
                                 std::to_string(ev.accuracy) + " != " +
                                 std::to_string(k.accuracy));
            return c.ok;
        }
        if (ev.macro_f1 != k.macro_f1) {
            c.require(false, "case " + std::to_string(index) + ": macro-F1 " +
                                 std::to_string(ev.macro_f1) + " != " +
                                 std::to_string(k.macro_f1));
            return c.ok;
        }
    }
    return c.ok;
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* name;
        std::function<bool(Checker&)> body;
        double budget_ms;  // 0 = untimed
    };
    const std::vector<Entry> entries = {
        {1, "conversion geometry", criterion_geometry, 1000.0},
        {2, "interpolation oracle", criterion_interpolation, 30000.0},
        {3, "scheme A losslessness", criterion_scheme_a, 0.0},
        {4, "overflow rule boundaries", criterion_overflow_rule, 0.0},
        {5, "text round trip", criterion_text_round_trip, 0.0},
        {6, "gradient checks", criterion_gradients, 10000.0},
        {7, "end-to-end discrimination", criterion_discrimination, 60000.0},
        {8, "output determinism", criterion_determinism, 0.0},
        {9, "EDF round trip and failure modes", criterion_edf, 0.0},
        {10, "exact metrics", criterion_metrics, 0.0},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        Checker check;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = e.body(check);
            detail = check.first_failure;
        } catch (const std::exception& ex) {
            ok = false;
            detail = std::string("unexpected exception: ") + ex.what();
        }
        const double ms = elapsed_ms(start);
        if (ok && e.budget_ms > 0.0 && ms > e.budget_ms) {
            ok = false;
            detail = "exceeded the " + std::to_string(e.budget_ms / 1000.0) +
                     " s budget";
        }
        if (ok) {
            std::printf("[PASS] criterion %2d: %s (%.0f ms)\n", e.number, e.name, ms);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.0f ms) %s\n", e.number, e.name, ms,
                        detail.c_str());
            failures++;
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all 10 criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
