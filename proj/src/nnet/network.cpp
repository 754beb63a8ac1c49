#include "nirmal/nnet/network.hpp"

#include <cmath>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/random.hpp"

namespace nirmal::nnet {

Network::Network(Shape input_shape, const std::vector<LayerSpec>& specs) : input_shape_(std::move(input_shape)) {
    if (specs.empty()) throw ContractViolation("network needs at least one layer");
    Shape current = input_shape_;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            layers_.push_back(make_layer(specs[i], current));
        } catch (const ContractViolation& e) {
            throw ContractViolation("layer " + std::to_string(i) + ": " + e.what());
        }
        current = layers_.back()->output_shape();
    }
    if (current.size() != 1) {
        throw ContractViolation("network output must be rank 1 per sample, got " + shape_to_string(current));
    }
}

const Shape& Network::output_shape() const {
    return layers_.back()->output_shape();
}

std::string Network::describe() const {
    std::string out = shape_to_string(input_shape_);
    for (const auto& l : layers_) out += " -> " + l->kind() + shape_to_string(l->output_shape());
    return out;
}

Buffer Network::forward(const Buffer& batch) {
    has_forward_ = false;
    Buffer x = layers_.front()->forward(batch);
    for (std::size_t i = 1; i < layers_.size(); ++i) x = layers_[i]->forward(x);
    has_forward_ = true;
    return x;
}

Buffer Network::backward(const Buffer& dlogits) {
    if (!has_forward_) throw StateError("Network::backward called without a preceding forward pass");
    has_forward_ = false;
    Buffer g = layers_.back()->backward(dlogits);
    for (std::size_t i = layers_.size() - 1; i-- > 0;) g = layers_[i]->backward(g);
    return g;
}

std::vector<Parameter*> Network::parameters() {
    std::vector<Parameter*> out;
    for (auto& l : layers_)
        for (auto& p : l->parameters()) out.push_back(&p);
    return out;
}

std::vector<optim::ParamRef> Network::param_refs() {
    std::vector<optim::ParamRef> out;
    for (Parameter* p : parameters()) out.push_back({p->value.data(), p->grad.data(), p->value.shape()});
    return out;
}

std::size_t Network::num_parameters() const {
    std::size_t n = 0;
    for (const auto& l : layers_)
        for (const auto& p : l->parameters()) n += p.value.size();
    return n;
}

void Network::init_params(std::uint64_t seed) {
    std::uint64_t stream = 0;
    for (auto& l : layers_) {
        auto params = l->parameters();
        if (params.empty()) continue;
        const double bound = std::sqrt(1.0 / static_cast<double>(l->fan_in()));
        Rng rng(seed, stream++);
        for (float& w : params[0].value.data()) w = static_cast<float>(rng.uniform(-bound, bound));
        for (std::size_t i = 1; i < params.size(); ++i) params[i].value.fill(0.0f);
        for (auto& p : params) p.grad.fill(0.0f);
    }
}

Network init_params(Network net, std::uint64_t seed) {
    net.init_params(seed);
    return net;
}

std::vector<LayerSpec> small_cnn_layers(std::size_t num_classes) {
    return {Conv2dSpec{32, 3, 1, 1}, ReluSpec{}, MaxPool2dSpec{2, 2}, Conv2dSpec{64, 3, 1, 1}, ReluSpec{},
            MaxPool2dSpec{2, 2},     FlattenSpec{}, DenseSpec{128},   ReluSpec{},          DenseSpec{num_classes}};
}

Network small_cnn(const Shape& input_shape, std::size_t num_classes) {
    return Network(input_shape, small_cnn_layers(num_classes));
}

std::vector<LayerSpec> mlp_layers(std::size_t hidden, std::size_t num_classes) {
    return {FlattenSpec{}, DenseSpec{hidden}, ReluSpec{}, DenseSpec{num_classes}};
}

Network mlp(const Shape& input_shape, std::size_t hidden, std::size_t num_classes) {
    return Network(input_shape, mlp_layers(hidden, num_classes));
}

}  // namespace nirmal::nnet
