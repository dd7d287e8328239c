#include "core/probe.hpp"

#include "core/bytes.hpp"
#include "core/error.hpp"
#include "core/io_util.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace sigcast {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'P', 'H'};
constexpr std::uint32_t kVersion = 1;

void check_batch(const ProbeHead& head, const FeatureBatch& batch) {
    if (head.classes == 0 || head.features == 0)
        throw validation_error("probe head has empty dimensions");
    if (head.weights.size() != head.classes * head.features ||
        head.bias.size() != head.classes)
        throw validation_error("probe head parameter buffers disagree with its dimensions");
    if (batch.count == 0) throw validation_error("empty feature batch");
    if (batch.width != head.features)
        throw validation_error("feature width " + std::to_string(batch.width) +
                               " does not match head width " + std::to_string(head.features));
    if (batch.x.size() != batch.count * batch.width || batch.labels.size() != batch.count)
        throw validation_error("feature batch buffers disagree with its dimensions");
    for (std::size_t k = 0; k < batch.count; ++k)
        if (batch.labels[k] < 0 || static_cast<std::size_t>(batch.labels[k]) >= head.classes)
            throw validation_error("label " + std::to_string(batch.labels[k]) + " at row " +
                                   std::to_string(k) + " is outside the " +
                                   std::to_string(head.classes) + "-class range");
}

// logits for row k; returns max logit for reuse by the stable softmax/log-prob
double row_logits(const ProbeHead& head, const double* x, std::vector<double>& logits) {
    logits.resize(head.classes);
    double top = -HUGE_VAL;
    for (std::size_t c = 0; c < head.classes; ++c) {
        const double* w = head.weights.data() + c * head.features;
        double acc = head.bias[c];
        for (std::size_t f = 0; f < head.features; ++f) acc += w[f] * x[f];
        logits[c] = acc;
        top = std::max(top, acc);
    }
    return top;
}

}  // namespace

ProbeHead ProbeHead::zeros(std::size_t classes, std::size_t features) {
    ProbeHead h;
    h.classes = classes;
    h.features = features;
    h.weights.assign(classes * features, 0.0);
    h.bias.assign(classes, 0.0);
    return h;
}

void TrainOptions::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw validation_error("learning_rate must be positive and finite");
    if (batch_size < 1) throw validation_error("batch_size must be at least 1");
    if (l2 < 0.0 || !std::isfinite(l2))
        throw validation_error("l2 must be non-negative and finite");
}

std::vector<double> probe_forward(const ProbeHead& head, const FeatureBatch& batch) {
    check_batch(head, batch);
    std::vector<double> out(batch.count * head.classes);
    std::vector<double> logits;
    for (std::size_t k = 0; k < batch.count; ++k) {
        const double top = row_logits(head, batch.x.data() + k * batch.width, logits);
        double sum = 0.0;
        double* row = out.data() + k * head.classes;
        for (std::size_t c = 0; c < head.classes; ++c) {
            row[c] = std::exp(logits[c] - top);
            sum += row[c];
        }
        for (std::size_t c = 0; c < head.classes; ++c) row[c] /= sum;
    }
    return out;
}

double probe_objective(const ProbeHead& head, const FeatureBatch& batch, double l2) {
    check_batch(head, batch);
    double total = 0.0;
    std::vector<double> logits;
    for (std::size_t k = 0; k < batch.count; ++k) {
        const double top = row_logits(head, batch.x.data() + k * batch.width, logits);
        double sum = 0.0;
        for (std::size_t c = 0; c < head.classes; ++c) sum += std::exp(logits[c] - top);
        total += logits[static_cast<std::size_t>(batch.labels[k])] - top - std::log(sum);
    }
    if (l2 > 0.0) {
        double sq = 0.0;
        for (double w : head.weights) sq += w * w;
        total -= 0.5 * l2 * sq;
    }
    return total;
}

void probe_gradient(const ProbeHead& head, const FeatureBatch& batch, double l2,
                    std::vector<double>& grad_weights, std::vector<double>& grad_bias) {
    check_batch(head, batch);
    grad_weights.assign(head.weights.size(), 0.0);
    grad_bias.assign(head.bias.size(), 0.0);
    std::vector<double> logits, probs(head.classes);
    for (std::size_t k = 0; k < batch.count; ++k) {
        const double* x = batch.x.data() + k * batch.width;
        const double top = row_logits(head, x, logits);
        double sum = 0.0;
        for (std::size_t c = 0; c < head.classes; ++c) {
            probs[c] = std::exp(logits[c] - top);
            sum += probs[c];
        }
        for (std::size_t c = 0; c < head.classes; ++c) {
            const double coef =
                probs[c] / sum - (static_cast<std::size_t>(batch.labels[k]) == c ? 1.0 : 0.0);
            grad_bias[c] += coef;
            double* gw = grad_weights.data() + c * head.features;
            for (std::size_t f = 0; f < head.features; ++f) gw[f] += coef * x[f];
        }
    }
    if (l2 > 0.0)
        for (std::size_t i = 0; i < grad_weights.size(); ++i)
            grad_weights[i] += l2 * head.weights[i];
}

TrainResult probe_train(const FeatureBatch& data, std::size_t classes, const TrainOptions& opt) {
    opt.validate();
    if (classes < 2) throw validation_error("training needs at least 2 classes");
    TrainResult result;
    result.head = ProbeHead::zeros(classes, data.width);
    check_batch(result.head, data);

    result.history.push_back(probe_objective(result.head, data, opt.l2));
    DetRng rng(opt.seed);
    std::vector<std::size_t> order(data.count);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> logits, probs(classes);
    std::vector<double> gw(result.head.weights.size());
    std::vector<double> gb(classes);
    for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t start = 0; start < data.count; start += opt.batch_size) {
            const std::size_t stop = std::min(start + opt.batch_size, data.count);
            std::fill(gw.begin(), gw.end(), 0.0);
            std::fill(gb.begin(), gb.end(), 0.0);
            for (std::size_t i = start; i < stop; ++i) {
                const std::size_t k = order[i];
                const double* x = data.x.data() + k * data.width;
                const double top = row_logits(result.head, x, logits);
                double sum = 0.0;
                for (std::size_t c = 0; c < classes; ++c) {
                    probs[c] = std::exp(logits[c] - top);
                    sum += probs[c];
                }
                for (std::size_t c = 0; c < classes; ++c) {
                    const double coef =
                        probs[c] / sum -
                        (static_cast<std::size_t>(data.labels[k]) == c ? 1.0 : 0.0);
                    gb[c] += coef;
                    double* g = gw.data() + c * data.width;
                    for (std::size_t f = 0; f < data.width; ++f) g[f] += coef * x[f];
                }
            }
            if (opt.l2 > 0.0)
                for (std::size_t i = 0; i < gw.size(); ++i)
                    gw[i] += opt.l2 * result.head.weights[i];
            for (std::size_t i = 0; i < gw.size(); ++i)
                result.head.weights[i] -= opt.learning_rate * gw[i];
            for (std::size_t c = 0; c < classes; ++c)
                result.head.bias[c] -= opt.learning_rate * gb[c];
        }
        const double objective = probe_objective(result.head, data, opt.l2);
        if (!std::isfinite(objective))
            throw numeric_error("training diverged: objective is not finite after epoch " +
                                std::to_string(epoch + 1) +
                                " (lower the learning rate or raise l2)");
        result.history.push_back(objective);
    }
    return result;
}

EvalResult probe_evaluate(const ProbeHead& head, const FeatureBatch& batch) {
    check_batch(head, batch);
    std::vector<std::uint64_t> confusion(head.classes * head.classes, 0);
    std::vector<double> logits;
    for (std::size_t k = 0; k < batch.count; ++k) {
        row_logits(head, batch.x.data() + k * batch.width, logits);
        std::size_t best = 0;
        for (std::size_t c = 1; c < head.classes; ++c)
            if (logits[c] > logits[best]) best = c;
        confusion[static_cast<std::size_t>(batch.labels[k]) * head.classes + best]++;
    }
    return metrics_from_confusion(head.classes, std::move(confusion));
}

EvalResult metrics_from_confusion(std::size_t classes, std::vector<std::uint64_t> confusion) {
    if (classes == 0 || confusion.size() != classes * classes)
        throw validation_error("confusion matrix shape mismatch");
    std::uint64_t total = 0, correct = 0;
    double f1_sum = 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
        std::uint64_t tp = confusion[c * classes + c];
        std::uint64_t truth = 0, predicted = 0;
        for (std::size_t j = 0; j < classes; ++j) {
            truth += confusion[c * classes + j];
            predicted += confusion[j * classes + c];
        }
        correct += tp;
        total += truth;
        // F1 = 2PR/(P+R) = 2tp/(truth+predicted); zero by convention when the
        // class never appears in truth or prediction
        if (truth + predicted > 0)
            f1_sum += 2.0 * static_cast<double>(tp) / static_cast<double>(truth + predicted);
    }
    if (total == 0) throw validation_error("confusion matrix holds no instances");
    EvalResult out;
    out.accuracy = static_cast<double>(correct) / static_cast<double>(total);
    out.macro_f1 = f1_sum / static_cast<double>(classes);
    out.confusion = std::move(confusion);
    return out;
}

void probe_save(const ProbeHead& head, const std::string& path) {
    std::string out;
    out.append(kMagic, 4);
    put_u32_le(out, kVersion);
    put_u64_le(out, head.classes);
    put_u64_le(out, head.features);
    for (double w : head.weights) put_f64_le(out, w);
    for (double b : head.bias) put_f64_le(out, b);
    write_file(path, out);
}

ProbeHead probe_load(const std::string& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < 24 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw io_error(path + ": not a probe head file");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (get_u32_le(p + 4) != kVersion)
        throw io_error(path + ": unsupported head version " + std::to_string(get_u32_le(p + 4)));
    ProbeHead head;
    head.classes = get_u64_le(p + 8);
    head.features = get_u64_le(p + 16);
    const std::size_t expected = 24 + (head.classes * head.features + head.classes) * 8;
    if (head.classes == 0 || head.features == 0 || bytes.size() != expected)
        throw io_error(path + ": expected " + std::to_string(expected) + " bytes, got " +
                       std::to_string(bytes.size()));
    head.weights.resize(head.classes * head.features);
    head.bias.resize(head.classes);
    std::size_t off = 24;
    for (auto& w : head.weights) {
        w = get_f64_le(p + off);
        off += 8;
    }
    for (auto& b : head.bias) {
        b = get_f64_le(p + off);
        off += 8;
    }
    return head;
}

}  // namespace sigcast
