#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigcast {

struct ProbeHead {
    std::size_t classes = 0;
    std::size_t features = 0;
    std::vector<double> weights;  // classes x features, row-major
    std::vector<double> bias;     // classes

    static ProbeHead zeros(std::size_t classes, std::size_t features);
};

struct FeatureBatch {
    std::size_t count = 0;
    std::size_t width = 0;
    std::vector<double> x;    // count x width, row-major
    std::vector<int> labels;  // count entries, each < classes
};

struct TrainOptions {
    double learning_rate = 0.01;
    std::size_t epochs = 20;
    std::size_t batch_size = 32;
    std::uint64_t seed = 1;
    double l2 = 0.0;

    void validate() const;
};

struct TrainResult {
    ProbeHead head;
    std::vector<double> history;  // full-set objective: initial value, then one per epoch
};

struct EvalResult {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::vector<std::uint64_t> confusion;  // classes x classes, [truth * classes + predicted]
};

// Row k = softmax(W x_k + b), computed with max subtraction.
std::vector<double> probe_forward(const ProbeHead& head, const FeatureBatch& batch);

// Sum over the batch of log p(true class), minus l2 * |W|^2 / 2.
double probe_objective(const ProbeHead& head, const FeatureBatch& batch, double l2 = 0.0);

// Gradient of the NEGATED objective, summed over the batch (not averaged).
void probe_gradient(const ProbeHead& head, const FeatureBatch& batch, double l2,
                    std::vector<double>& grad_weights, std::vector<double>& grad_bias);

// Mini-batch gradient descent on the negated objective from zero init;
// deterministic in the seed.
TrainResult probe_train(const FeatureBatch& data, std::size_t classes, const TrainOptions& opt);

// Argmax ties break toward the lowest class index; a class with no
// predictions and no members scores F1 = 0.
EvalResult probe_evaluate(const ProbeHead& head, const FeatureBatch& batch);
EvalResult metrics_from_confusion(std::size_t classes, std::vector<std::uint64_t> confusion);

void probe_save(const ProbeHead& head, const std::string& path);
ProbeHead probe_load(const std::string& path);

}  // namespace sigcast
