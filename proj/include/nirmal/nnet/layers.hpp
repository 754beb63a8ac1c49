#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nirmal/ndbuffer/buffer.hpp"

namespace nirmal::nnet {

struct Parameter {
    Buffer value;
    Buffer grad;

    explicit Parameter(Shape shape) : value(shape), grad(std::move(shape)) {}
};

struct Conv2dSpec {
    std::size_t out_channels;
    std::size_t kernel = 3;
    std::size_t stride = 1;
    std::size_t padding = 0;
};

struct MaxPool2dSpec {
    std::size_t window = 2;
    std::size_t stride = 2;
};

struct DenseSpec {
    std::size_t out_features;
};

struct ReluSpec {};
struct FlattenSpec {};

using LayerSpec = std::variant<Conv2dSpec, MaxPool2dSpec, DenseSpec, ReluSpec, FlattenSpec>;

// A layer bound to a per-sample input shape. forward/backward operate on
// batches whose leading axis is the batch index.
class Layer {
public:
    virtual ~Layer() = default;

    virtual std::string kind() const = 0;
    virtual Buffer forward(const Buffer& x) = 0;
    // Returns d(loss)/d(input) and overwrites every parameter gradient.
    virtual Buffer backward(const Buffer& dy) = 0;
    virtual std::span<Parameter> parameters() { return {}; }
    // Fan-in used by the uniform initializer; 0 for parameter-free layers.
    virtual std::size_t fan_in() const { return 0; }

    const Shape& input_shape() const noexcept { return in_; }
    const Shape& output_shape() const noexcept { return out_; }

protected:
    Layer(Shape in, Shape out) : in_(std::move(in)), out_(std::move(out)) {}

    // Leading batch extent of x after checking x is [B, in_...].
    std::size_t check_batch(const Buffer& x, const Shape& per_sample, const char* what) const;

    Shape in_;
    Shape out_;
};

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, const Shape& input_shape);

// Weights [out_channels, in_channels, k, k]; bias [out_channels].
class Conv2d final : public Layer {
public:
    Conv2d(const Conv2dSpec& spec, const Shape& in);

    std::string kind() const override { return "conv2d"; }
    Buffer forward(const Buffer& x) override;
    Buffer backward(const Buffer& dy) override;
    std::span<Parameter> parameters() override { return params_; }
    std::size_t fan_in() const override { return in_[0] * spec_.kernel * spec_.kernel; }

    Parameter& weight() { return params_[0]; }
    Parameter& bias() { return params_[1]; }

private:
    Conv2dSpec spec_;
    std::vector<Parameter> params_;
    std::vector<float> col_;  // [C*k*k, B*OH*OW]
    std::size_t batch_ = 0;
};

class MaxPool2d final : public Layer {
public:
    MaxPool2d(const MaxPool2dSpec& spec, const Shape& in);

    std::string kind() const override { return "maxpool2d"; }
    Buffer forward(const Buffer& x) override;
    Buffer backward(const Buffer& dy) override;

private:
    MaxPool2dSpec spec_;
    std::vector<std::size_t> argmax_;  // flat input index per output element
    std::size_t batch_ = 0;
};

// Weights [in_features, out_features]; bias [out_features].
class Dense final : public Layer {
public:
    Dense(const DenseSpec& spec, const Shape& in);

    std::string kind() const override { return "dense"; }
    Buffer forward(const Buffer& x) override;
    Buffer backward(const Buffer& dy) override;
    std::span<Parameter> parameters() override { return params_; }
    std::size_t fan_in() const override { return in_[0]; }

    Parameter& weight() { return params_[0]; }
    Parameter& bias() { return params_[1]; }

private:
    std::vector<Parameter> params_;
    std::vector<float> input_;
    std::size_t batch_ = 0;
};

class Relu final : public Layer {
public:
    explicit Relu(const Shape& in) : Layer(in, in) {}

    std::string kind() const override { return "relu"; }
    Buffer forward(const Buffer& x) override;
    Buffer backward(const Buffer& dy) override;

private:
    std::vector<std::uint8_t> active_;
    std::size_t batch_ = 0;
};

class Flatten final : public Layer {
public:
    explicit Flatten(const Shape& in) : Layer(in, {shape_size(in)}) {}

    std::string kind() const override { return "flatten"; }
    Buffer forward(const Buffer& x) override;
    Buffer backward(const Buffer& dy) override;
};

}  // namespace nirmal::nnet
