#include "nirmal/ndbuffer/buffer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/gemm.hpp"

namespace nirmal {

std::size_t shape_size(const Shape& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string shape_to_string(const Shape& shape) {
    std::string out = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(shape[i]);
    }
    return out + "]";
}

namespace {

void check_extents(const Shape& shape) {
    if (shape.empty()) throw ContractViolation("buffer shape must have at least one axis");
    for (auto e : shape) {
        if (e == 0) throw ContractViolation("buffer extents must be positive, got " + shape_to_string(shape));
    }
}

void require_same_shape(const Buffer& a, const Buffer& b, const char* what) {
    if (a.shape() != b.shape()) {
        throw ContractViolation(std::string(what) + ": shape mismatch " + shape_to_string(a.shape()) + " vs " +
                                shape_to_string(b.shape()));
    }
}

}  // namespace

Buffer::Buffer(Shape shape, float fill) : shape_(std::move(shape)) {
    check_extents(shape_);
    data_.assign(shape_size(shape_), fill);
}

Buffer::Buffer(Shape shape, std::vector<float> values) : shape_(std::move(shape)), data_(std::move(values)) {
    check_extents(shape_);
    if (data_.size() != shape_size(shape_)) {
        throw ContractViolation("buffer data length " + std::to_string(data_.size()) + " does not match shape " +
                                shape_to_string(shape_));
    }
}

Buffer Buffer::from(std::initializer_list<float> values) {
    return Buffer({values.size()}, std::vector<float>(values));
}

std::size_t Buffer::extent(std::size_t axis) const {
    if (axis >= shape_.size()) throw ContractViolation("axis out of range for " + shape_to_string(shape_));
    return shape_[axis];
}

Buffer Buffer::reshape(Shape shape) const& {
    return Buffer(std::move(shape), data_);
}

Buffer Buffer::reshape(Shape shape) && {
    return Buffer(std::move(shape), std::move(data_));
}

void Buffer::fill(float value) {
    std::fill(data_.begin(), data_.end(), value);
}

Buffer elementwise(const Buffer& a, const Buffer& b, BinaryOp op) {
    require_same_shape(a, b, "elementwise");
    Buffer out = Buffer::zeros_like(a);
    auto x = a.data();
    auto y = b.data();
    auto z = out.data();
    switch (op) {
        case BinaryOp::add:
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + y[i];
            break;
        case BinaryOp::sub:
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
            break;
        case BinaryOp::mul:
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] * y[i];
            break;
        case BinaryOp::div:
            if (std::find(y.begin(), y.end(), 0.0f) != y.end()) throw DomainError("elementwise div: divisor contains zero");
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] / y[i];
            break;
    }
    return out;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Buffer map(const Buffer& a, const MapFn& fn) {
    Buffer out = Buffer::zeros_like(a);
    auto x = a.data();
    auto z = out.data();
    std::visit(overloaded{
                   [&](map_fn::Scale s) {
                       for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] * s.factor;
                   },
                   [&](map_fn::AddScalar s) {
                       for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + s.offset;
                   },
                   [&](map_fn::Sqrt) {
                       for (std::size_t i = 0; i < z.size(); ++i) {
                           if (x[i] < 0.0f) throw DomainError("sqrt of negative element at index " + std::to_string(i));
                           z[i] = std::sqrt(x[i]);
                       }
                   },
                   [&](map_fn::Tanh) {
                       for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::tanh(x[i]);
                   },
               },
               fn);
    return out;
}

float sum(const Buffer& a) {
    float acc = 0.0f;
    for (float x : a.data()) acc += x;
    return acc;
}

float max(const Buffer& a) {
    return *std::max_element(a.data().begin(), a.data().end());
}

std::vector<std::size_t> argmax_last_axis(const Buffer& a) {
    const std::size_t width = a.shape().back();
    const std::size_t rows = a.size() / width;
    std::vector<std::size_t> out(rows);
    auto x = a.data();
    for (std::size_t r = 0; r < rows; ++r) {
        const float* row = x.data() + r * width;
        std::size_t best = 0;
        for (std::size_t j = 1; j < width; ++j) {
            if (row[j] > row[best]) best = j;
        }
        out[r] = best;
    }
    return out;
}

Buffer matmul(const Buffer& a, const Buffer& b) {
    if (a.rank() != 2 || b.rank() != 2) throw ContractViolation("matmul expects rank-2 operands");
    if (a.extent(1) != b.extent(0)) {
        throw ContractViolation("matmul: inner extents disagree " + shape_to_string(a.shape()) + " * " +
                                shape_to_string(b.shape()));
    }
    const std::size_t m = a.extent(0), k = a.extent(1), n = b.extent(1);
    Buffer out({m, n});
    gemm::nn(a.data(), b.data(), out.data(), m, k, n);
    return out;
}

Buffer transpose(const Buffer& a) {
    if (a.rank() != 2) throw ContractViolation("transpose expects a rank-2 buffer");
    Buffer out({a.extent(1), a.extent(0)});
    gemm::transpose(a.data(), out.data(), a.extent(0), a.extent(1));
    return out;
}

}  // namespace nirmal
