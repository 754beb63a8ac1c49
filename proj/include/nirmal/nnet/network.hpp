#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nirmal/ndbuffer/buffer.hpp"
#include "nirmal/nnet/layers.hpp"
#include "nirmal/optim/optimizer.hpp"

namespace nirmal::nnet {

class Network {
public:
    // `input_shape` is per sample, e.g. {1, 28, 28}. Layer shapes are
    // propagated here, so an inconsistent stack fails at construction.
    Network(Shape input_shape, const std::vector<LayerSpec>& specs);

    Network(Network&&) noexcept = default;
    Network& operator=(Network&&) noexcept = default;

    const Shape& input_shape() const noexcept { return input_shape_; }
    const Shape& output_shape() const;
    std::size_t num_layers() const noexcept { return layers_.size(); }
    Layer& layer(std::size_t i) { return *layers_.at(i); }
    std::string describe() const;

    // batch: [B, input_shape...] -> logits [B, K].
    Buffer forward(const Buffer& batch);
    // Fills every parameter gradient and returns d(loss)/d(batch). Must follow
    // a forward call; each forward permits one backward.
    Buffer backward(const Buffer& dlogits);

    std::vector<Parameter*> parameters();
    std::vector<optim::ParamRef> param_refs();
    std::size_t num_parameters() const;

    // Weights ~ U(-sqrt(1/fan_in), +sqrt(1/fan_in)), biases zero.
    void init_params(std::uint64_t seed);

private:
    Shape input_shape_;
    std::vector<std::unique_ptr<Layer>> layers_;
    bool has_forward_ = false;
};

Network init_params(Network net, std::uint64_t seed);

// conv(32,3x3,p1) relu pool2 conv(64,3x3,p1) relu pool2 flatten dense(128) relu dense(classes)
std::vector<LayerSpec> small_cnn_layers(std::size_t num_classes);
Network small_cnn(const Shape& input_shape, std::size_t num_classes);

// flatten dense(hidden) relu dense(classes); used for the vector-valued synthetic data.
std::vector<LayerSpec> mlp_layers(std::size_t hidden, std::size_t num_classes);
Network mlp(const Shape& input_shape, std::size_t hidden, std::size_t num_classes);

}  // namespace nirmal::nnet
