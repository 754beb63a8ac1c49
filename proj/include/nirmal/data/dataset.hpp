#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nirmal/ndbuffer/buffer.hpp"
#include "nirmal/types.hpp"

namespace nirmal::data {

// Labelled images [N, C, H, W] with labels in [0, num_classes).
struct Dataset {
    Buffer images;
    std::vector<Label> labels;
    std::size_t num_classes;
    std::string name;

    std::size_t size() const noexcept { return labels.size(); }
    Shape sample_shape() const { return {images.extent(1), images.extent(2), images.extent(3)}; }
    // Throws ContractViolation when the invariants above do not hold.
    void validate() const;
};

// First `n` samples (all when n >= size()).
Dataset head(const Dataset& ds, std::size_t n);

}  // namespace nirmal::data
