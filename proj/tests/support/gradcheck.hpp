#pragma once

// Central finite-difference checks for layers, evaluated on float32 with the
// probe loss accumulated in double.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nirmal/ndbuffer/random.hpp"
#include "nirmal/nnet/layers.hpp"

namespace gradcheck {

struct Mismatch {
    std::string where;
    double analytic, numeric;
};

inline void randomize(nirmal::Buffer& b, std::uint64_t seed, double scale = 1.0) {
    nirmal::Rng rng(seed);
    for (auto& x : b.data()) x = static_cast<float>(scale * rng.normal());
}

inline bool close(double analytic, double numeric, double rel, double abs) {
    return std::abs(analytic - numeric) <= std::max(abs, rel * std::max(std::abs(analytic), std::abs(numeric)));
}

// L = sum(layer(x) * r) for a fixed random r; checks dL/dx and every
// parameter gradient. Returns the failing entries and counts checked ones.
inline std::vector<Mismatch> check_layer(nirmal::nnet::Layer& layer, std::size_t batch, std::uint64_t seed, double h,
                                         double rel, double abs, std::size_t* checked = nullptr) {
    using nirmal::Buffer;
    nirmal::Shape in{batch};
    in.insert(in.end(), layer.input_shape().begin(), layer.input_shape().end());
    Buffer x(in);
    randomize(x, seed);
    for (auto& p : layer.parameters()) randomize(p.value, seed + 1, 0.5);
    const Buffer y = layer.forward(x);
    Buffer r(y.shape());
    randomize(r, seed + 2);
    const Buffer dx = layer.backward(r);

    auto probe = [&](const Buffer& out) {
        double s = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) s += double(out[i]) * r[i];
        return s;
    };
    auto numeric = [&](float& slot) {
        const float keep = slot;
        slot = keep + static_cast<float>(h);
        const double up = probe(layer.forward(x));
        slot = keep - static_cast<float>(h);
        const double down = probe(layer.forward(x));
        slot = keep;
        return (up - down) / (2.0 * h);
    };
    std::vector<Mismatch> bad;
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i, ++n) {
        const double num = numeric(x[i]);
        if (!close(dx[i], num, rel, abs)) bad.push_back({layer.kind() + " input " + std::to_string(i), dx[i], num});
    }
    std::size_t pi = 0;
    for (auto& p : layer.parameters()) {
        const Buffer grad = p.grad;
        for (std::size_t i = 0; i < p.value.size(); ++i, ++n) {
            const double num = numeric(p.value[i]);
            if (!close(grad[i], num, rel, abs))
                bad.push_back({layer.kind() + " param " + std::to_string(pi) + "[" + std::to_string(i) + "]", grad[i], num});
        }
        ++pi;
    }
    if (checked) *checked += n;
    return bad;
}

}  // namespace gradcheck
