#include "nirmal/data/transforms.hpp"

#include <cmath>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/random.hpp"

namespace nirmal::data {

NormStats channel_stats(const Dataset& ds) {
    const std::size_t n = ds.images.extent(0), channels = ds.images.extent(1);
    const std::size_t plane = ds.images.extent(2) * ds.images.extent(3);
    NormStats stats{std::vector<double>(channels, 0.0), std::vector<double>(channels, 0.0)};
    auto px = ds.images.data();
    const double count = static_cast<double>(n * plane);
    for (std::size_t c = 0; c < channels; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const float* p = px.data() + (i * channels + c) * plane;
            for (std::size_t j = 0; j < plane; ++j) total += p[j];
        }
        const double mean = total / count;
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const float* p = px.data() + (i * channels + c) * plane;
            for (std::size_t j = 0; j < plane; ++j) sq += (p[j] - mean) * (p[j] - mean);
        }
        stats.mean[c] = mean;
        stats.stddev[c] = std::sqrt(sq / count);
    }
    return stats;
}

std::pair<Dataset, NormStats> normalize(Dataset ds, const std::optional<NormStats>& given) {
    const std::size_t channels = ds.images.extent(1);
    NormStats stats = given ? *given : channel_stats(ds);
    if (stats.mean.size() != channels || stats.stddev.size() != channels) {
        throw ContractViolation("normalize: statistics cover " + std::to_string(stats.mean.size()) +
                                " channels, data has " + std::to_string(channels));
    }
    for (std::size_t c = 0; c < channels; ++c) {
        if (!(stats.stddev[c] > 0.0)) {
            throw DegenerateData(ds.name + ": channel " + std::to_string(c) + " has zero standard deviation");
        }
    }
    const std::size_t n = ds.images.extent(0);
    const std::size_t plane = ds.images.extent(2) * ds.images.extent(3);
    auto px = ds.images.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < channels; ++c) {
            float* p = px.data() + (i * channels + c) * plane;
            for (std::size_t j = 0; j < plane; ++j) {
                p[j] = static_cast<float>((p[j] - stats.mean[c]) / stats.stddev[c]);
            }
        }
    }
    return {std::move(ds), std::move(stats)};
}

Dataset denormalize(Dataset ds, const NormStats& stats) {
    const std::size_t n = ds.images.extent(0), channels = ds.images.extent(1);
    const std::size_t plane = ds.images.extent(2) * ds.images.extent(3);
    if (stats.mean.size() != channels || stats.stddev.size() != channels) {
        throw ContractViolation("denormalize: channel count mismatch");
    }
    auto px = ds.images.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < channels; ++c) {
            float* p = px.data() + (i * channels + c) * plane;
            for (std::size_t j = 0; j < plane; ++j) p[j] = static_cast<float>(p[j] * stats.stddev[c] + stats.mean[c]);
        }
    }
    return ds;
}

Dataset synth_gaussian_blobs(std::size_t num_classes, std::size_t n_per_class, std::size_t dim, std::uint64_t seed,
                             double spread, double separation) {
    if (num_classes < 2 || dim < 2) throw ContractViolation("synth_gaussian_blobs: need K >= 2 and dim >= 2");
    if (num_classes > dim) throw ContractViolation("synth_gaussian_blobs: simplex centres need K <= dim");
    if (n_per_class == 0) throw ContractViolation("synth_gaussian_blobs: n_per_class must be positive");
    const double offset = separation / std::sqrt(2.0);
    const std::size_t n = num_classes * n_per_class;
    std::vector<float> px(n * dim);
    std::vector<Label> labels(n);
    Rng rng(seed, 0);
    for (std::size_t k = 0; k < num_classes; ++k) {
        for (std::size_t i = 0; i < n_per_class; ++i) {
            const std::size_t s = k * n_per_class + i;
            labels[s] = static_cast<Label>(k);
            for (std::size_t d = 0; d < dim; ++d) {
                const double centre = d == k ? offset : 0.0;
                px[s * dim + d] = static_cast<float>(centre + spread * rng.normal());
            }
        }
    }
    return {Buffer({n, 1, 1, dim}, std::move(px)), std::move(labels), num_classes, "synth"};
}

}  // namespace nirmal::data
