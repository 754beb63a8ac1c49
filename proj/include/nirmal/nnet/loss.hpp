#pragma once

#include <cstdint>
#include <span>

#include "nirmal/ndbuffer/buffer.hpp"
#include "nirmal/types.hpp"

namespace nirmal::nnet {

using nirmal::Label;

struct LossResult {
    float loss;      // mean over the batch
    Buffer dlogits;  // (softmax - onehot) / B
};

// Max-subtracted log-softmax; labels must lie in [0, K).
LossResult softmax_cross_entropy(const Buffer& logits, std::span<const Label> labels);

// Per-sample losses without the gradient, for evaluation passes.
void cross_entropy_per_sample(const Buffer& logits, std::span<const Label> labels, std::span<float> out);

}  // namespace nirmal::nnet
