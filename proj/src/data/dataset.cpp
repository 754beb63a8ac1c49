#include "nirmal/data/dataset.hpp"

#include <algorithm>

#include "nirmal/error.hpp"

namespace nirmal::data {

void Dataset::validate() const {
    if (images.rank() != 4) throw ContractViolation(name + ": images must be [N, C, H, W]");
    if (images.extent(0) != labels.size()) {
        throw ContractViolation(name + ": " + std::to_string(images.extent(0)) + " images but " +
                                std::to_string(labels.size()) + " labels");
    }
    for (Label l : labels) {
        if (l >= num_classes) throw ContractViolation(name + ": label " + std::to_string(l) + " >= num_classes");
    }
}

Dataset head(const Dataset& ds, std::size_t n) {
    if (n >= ds.size()) return ds;
    if (n == 0) throw ContractViolation("head: cannot take zero samples");
    const std::size_t per = ds.images.size() / ds.size();
    Shape shape = ds.images.shape();
    shape[0] = n;
    std::vector<float> px(ds.images.data().begin(), ds.images.data().begin() + static_cast<std::ptrdiff_t>(n * per));
    return {Buffer(shape, std::move(px)), std::vector<Label>(ds.labels.begin(), ds.labels.begin() + static_cast<std::ptrdiff_t>(n)),
            ds.num_classes, ds.name};
}

}  // namespace nirmal::data
