#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nirmal {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_to_string(const Shape& shape);

// Dense row-major float32 array. The shape is fixed at construction; the
// element values may be written through data().
class Buffer {
public:
    explicit Buffer(Shape shape, float fill = 0.0f);
    Buffer(Shape shape, std::vector<float> values);

    static Buffer from(std::initializer_list<float> values);
    static Buffer zeros_like(const Buffer& other) { return Buffer(other.shape_); }
    static Buffer ones_like(const Buffer& other) { return Buffer(other.shape_, 1.0f); }

    const Shape& shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t extent(std::size_t axis) const;
    std::size_t size() const noexcept { return data_.size(); }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }
    const std::vector<float>& values() const noexcept { return data_; }

    float& operator[](std::size_t i) noexcept { return data_[i]; }
    float operator[](std::size_t i) const noexcept { return data_[i]; }

    Buffer reshape(Shape shape) const&;
    Buffer reshape(Shape shape) &&;
    Buffer flatten() const& { return reshape({size()}); }

    void fill(float value);

    friend bool operator==(const Buffer&, const Buffer&) = default;

private:
    Shape shape_;
    std::vector<float> data_;
};

enum class BinaryOp { add, sub, mul, div };

Buffer elementwise(const Buffer& a, const Buffer& b, BinaryOp op);
inline Buffer add(const Buffer& a, const Buffer& b) { return elementwise(a, b, BinaryOp::add); }
inline Buffer sub(const Buffer& a, const Buffer& b) { return elementwise(a, b, BinaryOp::sub); }
inline Buffer mul(const Buffer& a, const Buffer& b) { return elementwise(a, b, BinaryOp::mul); }
inline Buffer div(const Buffer& a, const Buffer& b) { return elementwise(a, b, BinaryOp::div); }

namespace map_fn {
struct Scale {
    float factor;
};
struct Sqrt {};
struct Tanh {};
struct AddScalar {
    float offset;
};
}  // namespace map_fn

using MapFn = std::variant<map_fn::Scale, map_fn::Sqrt, map_fn::Tanh, map_fn::AddScalar>;

Buffer map(const Buffer& a, const MapFn& fn);

// Reductions run front to back in float32.
float sum(const Buffer& a);
float max(const Buffer& a);
// Index of the largest element along the last axis for every leading index;
// ties resolve to the lowest index.
std::vector<std::size_t> argmax_last_axis(const Buffer& a);

// [M x K] * [K x N] -> [M x N].
Buffer matmul(const Buffer& a, const Buffer& b);
Buffer transpose(const Buffer& a);

}  // namespace nirmal
