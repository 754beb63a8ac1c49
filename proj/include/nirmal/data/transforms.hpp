#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nirmal/data/dataset.hpp"

namespace nirmal::data {

// Per-channel mean and population standard deviation.
struct NormStats {
    std::vector<double> mean;
    std::vector<double> stddev;
};

NormStats channel_stats(const Dataset& ds);

// x <- (x - mean) / std per channel. Without `stats`, the dataset's own
// statistics are computed (training set); with them (test set) they are used
// verbatim. Returns the statistics applied.
std::pair<Dataset, NormStats> normalize(Dataset ds, const std::optional<NormStats>& stats = std::nullopt);
Dataset denormalize(Dataset ds, const NormStats& stats);

// K isotropic Gaussian classes with per-axis std `spread`, centred on the
// vertices of a regular simplex with pairwise distance `separation`
// (c_k = separation/sqrt(2) * e_k, so K <= dim). Shape [K*n, 1, 1, dim],
// samples grouped by class.
Dataset synth_gaussian_blobs(std::size_t num_classes, std::size_t n_per_class, std::size_t dim, std::uint64_t seed,
                             double spread = 0.5, double separation = 4.0);

}  // namespace nirmal::data
