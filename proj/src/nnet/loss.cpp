#include "nirmal/nnet/loss.hpp"

#include <cmath>

#include "nirmal/error.hpp"

namespace nirmal::nnet {

namespace {

struct Dims {
    std::size_t batch, classes;
};

Dims check(const Buffer& logits, std::span<const Label> labels) {
    if (logits.rank() != 2) throw ContractViolation("cross entropy expects [B, K] logits");
    const Dims d{logits.extent(0), logits.extent(1)};
    if (labels.size() != d.batch) {
        throw ContractViolation("cross entropy: " + std::to_string(labels.size()) + " labels for batch of " +
                                std::to_string(d.batch));
    }
    for (std::size_t b = 0; b < d.batch; ++b) {
        if (labels[b] >= d.classes) {
            throw ContractViolation("label " + std::to_string(labels[b]) + " out of range for " +
                                    std::to_string(d.classes) + " classes");
        }
    }
    return d;
}

// Writes softmax probabilities of one row into `probs` (may be null) and
// returns -log softmax[label].
float row_loss(const float* row, std::size_t k, Label label, float* probs) {
    float peak = row[0];
    for (std::size_t j = 1; j < k; ++j) peak = std::max(peak, row[j]);
    float total = 0.0f;
    for (std::size_t j = 0; j < k; ++j) {
        const float e = std::exp(row[j] - peak);
        if (probs) probs[j] = e;
        total += e;
    }
    if (probs)
        for (std::size_t j = 0; j < k; ++j) probs[j] /= total;
    return std::log(total) - (row[label] - peak);
}

}  // namespace

LossResult softmax_cross_entropy(const Buffer& logits, std::span<const Label> labels) {
    const Dims d = check(logits, labels);
    Buffer grad = Buffer::zeros_like(logits);
    auto x = logits.data();
    auto g = grad.data();
    double total = 0.0;
    const float inv_batch = 1.0f / static_cast<float>(d.batch);
    for (std::size_t b = 0; b < d.batch; ++b) {
        float* probs = g.data() + b * d.classes;
        total += row_loss(x.data() + b * d.classes, d.classes, labels[b], probs);
        probs[labels[b]] -= 1.0f;
        for (std::size_t j = 0; j < d.classes; ++j) probs[j] *= inv_batch;
    }
    return {static_cast<float>(total / static_cast<double>(d.batch)), std::move(grad)};
}

void cross_entropy_per_sample(const Buffer& logits, std::span<const Label> labels, std::span<float> out) {
    const Dims d = check(logits, labels);
    if (out.size() != d.batch) throw ContractViolation("cross_entropy_per_sample: output span size mismatch");
    auto x = logits.data();
    for (std::size_t b = 0; b < d.batch; ++b) out[b] = row_loss(x.data() + b * d.classes, d.classes, labels[b], nullptr);
}

}  // namespace nirmal::nnet
