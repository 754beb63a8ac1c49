#include "nirmal/nnet/layers.hpp"

#include <algorithm>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/gemm.hpp"

namespace nirmal::nnet {

namespace {

Shape with_batch(std::size_t batch, const Shape& per_sample) {
    Shape s{batch};
    s.insert(s.end(), per_sample.begin(), per_sample.end());
    return s;
}

std::size_t pooled_extent(std::size_t in, std::size_t window, std::size_t stride, std::size_t pad) {
    if (in + 2 * pad < window) {
        throw ContractViolation("window " + std::to_string(window) + " larger than padded extent " +
                                std::to_string(in + 2 * pad));
    }
    return (in + 2 * pad - window) / stride + 1;
}

void require_rank(const Shape& in, std::size_t rank, const char* layer) {
    if (in.size() != rank) {
        throw ContractViolation(std::string(layer) + " expects a rank-" + std::to_string(rank) +
                                " per-sample input, got " + shape_to_string(in));
    }
}

Shape conv_output(const Conv2dSpec& s, const Shape& in) {
    require_rank(in, 3, "conv2d");
    if (s.out_channels == 0 || s.kernel == 0 || s.stride == 0) throw ContractViolation("conv2d: zero-sized spec");
    return {s.out_channels, pooled_extent(in[1], s.kernel, s.stride, s.padding),
            pooled_extent(in[2], s.kernel, s.stride, s.padding)};
}

Shape pool_output(const MaxPool2dSpec& s, const Shape& in) {
    require_rank(in, 3, "maxpool2d");
    if (s.window == 0 || s.stride == 0) throw ContractViolation("maxpool2d: zero-sized spec");
    return {in[0], pooled_extent(in[1], s.window, s.stride, 0), pooled_extent(in[2], s.window, s.stride, 0)};
}

Shape dense_output(const DenseSpec& s, const Shape& in) {
    require_rank(in, 1, "dense");
    if (s.out_features == 0) throw ContractViolation("dense: zero out_features");
    return {s.out_features};
}

}  // namespace

std::size_t Layer::check_batch(const Buffer& x, const Shape& per_sample, const char* what) const {
    const Shape& s = x.shape();
    if (s.size() != per_sample.size() + 1 || !std::equal(per_sample.begin(), per_sample.end(), s.begin() + 1)) {
        throw ContractViolation(std::string(what) + ": expected [B]" + shape_to_string(per_sample) + ", got " +
                                shape_to_string(s));
    }
    return s[0];
}

std::unique_ptr<Layer> make_layer(const LayerSpec& spec, const Shape& in) {
    if (const auto* c = std::get_if<Conv2dSpec>(&spec)) return std::make_unique<Conv2d>(*c, in);
    if (const auto* p = std::get_if<MaxPool2dSpec>(&spec)) return std::make_unique<MaxPool2d>(*p, in);
    if (const auto* d = std::get_if<DenseSpec>(&spec)) return std::make_unique<Dense>(*d, in);
    if (std::holds_alternative<ReluSpec>(spec)) return std::make_unique<Relu>(in);
    return std::make_unique<Flatten>(in);
}

// ---- Conv2d ----------------------------------------------------------------

Conv2d::Conv2d(const Conv2dSpec& spec, const Shape& in) : Layer(in, conv_output(spec, in)), spec_(spec) {
    params_.emplace_back(Shape{spec.out_channels, in[0], spec.kernel, spec.kernel});
    params_.emplace_back(Shape{spec.out_channels});
}

Buffer Conv2d::forward(const Buffer& x) {
    const std::size_t batch = check_batch(x, in_, "conv2d forward");
    const std::size_t channels = in_[0], height = in_[1], width = in_[2];
    const std::size_t oc = out_[0], oh = out_[1], ow = out_[2];
    const std::size_t k = spec_.kernel, stride = spec_.stride, pad = spec_.padding;
    const std::size_t rows = channels * k * k;
    const std::size_t plane = oh * ow;
    const std::size_t cols = batch * plane;

    col_.assign(rows * cols, 0.0f);
    auto src = x.data();
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
                float* dst = col_.data() + ((c * k + ky) * k + kx) * cols;
                for (std::size_t b = 0; b < batch; ++b) {
                    const float* img = src.data() + (b * channels + c) * height * width;
                    for (std::size_t oy = 0; oy < oh; ++oy) {
                        const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(oy * stride + ky) -
                                                  static_cast<std::ptrdiff_t>(pad);
                        float* out_row = dst + b * plane + oy * ow;
                        if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(height)) continue;
                        for (std::size_t ox = 0; ox < ow; ++ox) {
                            const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(ox * stride + kx) -
                                                      static_cast<std::ptrdiff_t>(pad);
                            if (ix >= 0 && ix < static_cast<std::ptrdiff_t>(width)) out_row[ox] = img[iy * width + ix];
                        }
                    }
                }
            }
        }
    }

    std::vector<float> prod(oc * cols);
    gemm::nn(params_[0].value.data(), col_, prod, oc, rows, cols);

    Buffer y(with_batch(batch, out_));
    auto dst = y.data();
    auto bias = params_[1].value.data();
    for (std::size_t o = 0; o < oc; ++o) {
        for (std::size_t b = 0; b < batch; ++b) {
            const float* from = prod.data() + o * cols + b * plane;
            float* to = dst.data() + (b * oc + o) * plane;
            for (std::size_t p = 0; p < plane; ++p) to[p] = from[p] + bias[o];
        }
    }
    batch_ = batch;
    return y;
}

Buffer Conv2d::backward(const Buffer& dy) {
    const std::size_t batch = check_batch(dy, out_, "conv2d backward");
    if (batch != batch_ || col_.empty()) throw StateError("conv2d backward: no matching forward pass");
    const std::size_t channels = in_[0], height = in_[1], width = in_[2];
    const std::size_t oc = out_[0], oh = out_[1], ow = out_[2];
    const std::size_t k = spec_.kernel, stride = spec_.stride, pad = spec_.padding;
    const std::size_t rows = channels * k * k;
    const std::size_t plane = oh * ow;
    const std::size_t cols = batch * plane;

    // [B, OC, P] -> [OC, B*P]
    std::vector<float> grad_out(oc * cols);
    auto g = dy.data();
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t o = 0; o < oc; ++o)
            std::copy_n(g.data() + (b * oc + o) * plane, plane, grad_out.data() + o * cols + b * plane);

    auto db = params_[1].grad.data();
    for (std::size_t o = 0; o < oc; ++o) {
        float acc = 0.0f;
        const float* row = grad_out.data() + o * cols;
        for (std::size_t q = 0; q < cols; ++q) acc += row[q];
        db[o] = acc;
    }

    std::vector<float> col_t(cols * rows);
    gemm::transpose(col_, col_t, rows, cols);
    gemm::nn(grad_out, col_t, params_[0].grad.data(), oc, cols, rows);

    std::vector<float> dcol(rows * cols);
    gemm::tn(params_[0].value.data(), grad_out, dcol, rows, oc, cols);

    Buffer dx(with_batch(batch, in_));
    auto out = dx.data();
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
                const float* src = dcol.data() + ((c * k + ky) * k + kx) * cols;
                for (std::size_t b = 0; b < batch; ++b) {
                    float* img = out.data() + (b * channels + c) * height * width;
                    for (std::size_t oy = 0; oy < oh; ++oy) {
                        const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(oy * stride + ky) -
                                                  static_cast<std::ptrdiff_t>(pad);
                        if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(height)) continue;
                        const float* in_row = src + b * plane + oy * ow;
                        for (std::size_t ox = 0; ox < ow; ++ox) {
                            const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(ox * stride + kx) -
                                                      static_cast<std::ptrdiff_t>(pad);
                            if (ix >= 0 && ix < static_cast<std::ptrdiff_t>(width)) img[iy * width + ix] += in_row[ox];
                        }
                    }
                }
            }
        }
    }
    return dx;
}

// ---- MaxPool2d -------------------------------------------------------------

MaxPool2d::MaxPool2d(const MaxPool2dSpec& spec, const Shape& in) : Layer(in, pool_output(spec, in)), spec_(spec) {}

Buffer MaxPool2d::forward(const Buffer& x) {
    const std::size_t batch = check_batch(x, in_, "maxpool2d forward");
    const std::size_t channels = in_[0], height = in_[1], width = in_[2];
    const std::size_t oh = out_[1], ow = out_[2];
    Buffer y(with_batch(batch, out_));
    argmax_.resize(y.size());
    auto src = x.data();
    auto dst = y.data();
    std::size_t o = 0;
    for (std::size_t bc = 0; bc < batch * channels; ++bc) {
        const std::size_t base = bc * height * width;
        for (std::size_t oy = 0; oy < oh; ++oy) {
            for (std::size_t ox = 0; ox < ow; ++ox, ++o) {
                std::size_t best = base + (oy * spec_.stride) * width + ox * spec_.stride;
                for (std::size_t wy = 0; wy < spec_.window; ++wy) {
                    for (std::size_t wx = 0; wx < spec_.window; ++wx) {
                        const std::size_t idx = base + (oy * spec_.stride + wy) * width + ox * spec_.stride + wx;
                        if (src[idx] > src[best]) best = idx;
                    }
                }
                argmax_[o] = best;
                dst[o] = src[best];
            }
        }
    }
    batch_ = batch;
    return y;
}

Buffer MaxPool2d::backward(const Buffer& dy) {
    const std::size_t batch = check_batch(dy, out_, "maxpool2d backward");
    if (batch != batch_ || argmax_.size() != dy.size()) throw StateError("maxpool2d backward: no matching forward pass");
    Buffer dx(with_batch(batch, in_));
    auto g = dy.data();
    auto out = dx.data();
    for (std::size_t o = 0; o < g.size(); ++o) out[argmax_[o]] += g[o];
    return dx;
}

// ---- Dense -----------------------------------------------------------------

Dense::Dense(const DenseSpec& spec, const Shape& in) : Layer(in, dense_output(spec, in)) {
    params_.emplace_back(Shape{in[0], spec.out_features});
    params_.emplace_back(Shape{spec.out_features});
}

Buffer Dense::forward(const Buffer& x) {
    const std::size_t batch = check_batch(x, in_, "dense forward");
    const std::size_t n_in = in_[0], n_out = out_[0];
    Buffer y(with_batch(batch, out_));
    gemm::nn(x.data(), params_[0].value.data(), y.data(), batch, n_in, n_out);
    auto dst = y.data();
    auto bias = params_[1].value.data();
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < n_out; ++j) dst[b * n_out + j] += bias[j];
    input_.assign(x.data().begin(), x.data().end());
    batch_ = batch;
    return y;
}

Buffer Dense::backward(const Buffer& dy) {
    const std::size_t batch = check_batch(dy, out_, "dense backward");
    if (batch != batch_ || input_.size() != batch * in_[0]) throw StateError("dense backward: no matching forward pass");
    const std::size_t n_in = in_[0], n_out = out_[0];
    auto g = dy.data();

    gemm::tn(input_, g, params_[0].grad.data(), n_in, batch, n_out);

    auto db = params_[1].grad.data();
    std::fill(db.begin(), db.end(), 0.0f);
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t j = 0; j < n_out; ++j) db[j] += g[b * n_out + j];

    std::vector<float> w_t(n_out * n_in);
    gemm::transpose(params_[0].value.data(), w_t, n_in, n_out);
    Buffer dx(with_batch(batch, in_));
    gemm::nn(g, w_t, dx.data(), batch, n_out, n_in);
    return dx;
}

// ---- Relu / Flatten --------------------------------------------------------

Buffer Relu::forward(const Buffer& x) {
    batch_ = check_batch(x, in_, "relu forward");
    Buffer y = Buffer::zeros_like(x);
    active_.resize(x.size());
    auto src = x.data();
    auto dst = y.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        active_[i] = src[i] > 0.0f;
        dst[i] = active_[i] ? src[i] : 0.0f;
    }
    return y;
}

Buffer Relu::backward(const Buffer& dy) {
    const std::size_t batch = check_batch(dy, out_, "relu backward");
    if (batch != batch_ || active_.size() != dy.size()) throw StateError("relu backward: no matching forward pass");
    Buffer dx = Buffer::zeros_like(dy);
    auto g = dy.data();
    auto out = dx.data();
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = active_[i] ? g[i] : 0.0f;
    return dx;
}

Buffer Flatten::forward(const Buffer& x) {
    const std::size_t batch = check_batch(x, in_, "flatten forward");
    return x.reshape(with_batch(batch, out_));
}

Buffer Flatten::backward(const Buffer& dy) {
    const std::size_t batch = check_batch(dy, out_, "flatten backward");
    return dy.reshape(with_batch(batch, in_));
}

}  // namespace nirmal::nnet
