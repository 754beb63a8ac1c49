#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nirmal/data/dataset.hpp"

namespace nirmal::data {

struct BatchPlan {
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;
    bool drop_last = false;
};

struct Batch {
    Buffer images;
    std::vector<Label> labels;
};

// Seeded permutation of [0, n) keyed by (plan.seed, epoch), cut into
// consecutive batches. The final short batch is kept unless drop_last.
std::vector<std::vector<std::size_t>> batch_indices(std::size_t n, const BatchPlan& plan, std::uint64_t epoch);
// Unshuffled consecutive batches, for evaluation.
std::vector<std::vector<std::size_t>> sequential_batches(std::size_t n, std::size_t batch_size);

Batch gather(const Dataset& ds, const std::vector<std::size_t>& indices);
std::vector<Batch> batches(const Dataset& ds, const BatchPlan& plan, std::uint64_t epoch);

}  // namespace nirmal::data
