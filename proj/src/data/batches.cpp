#include "nirmal/data/batches.hpp"

#include <algorithm>
#include <numeric>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/random.hpp"

namespace nirmal::data {

namespace {

std::vector<std::vector<std::size_t>> partition(const std::vector<std::size_t>& order, std::size_t batch_size,
                                                bool drop_last) {
    if (batch_size == 0) throw ContractViolation("batch size must be at least 1");
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
        const std::size_t end = std::min(order.size(), start + batch_size);
        if (drop_last && end - start < batch_size) break;
        out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> batch_indices(std::size_t n, const BatchPlan& plan, std::uint64_t epoch) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Fisher-Yates driven by the (seed, epoch) stream.
    Rng rng(plan.seed, epoch);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(order[i - 1], order[j]);
    }
    return partition(order, plan.batch_size, plan.drop_last);
}

std::vector<std::vector<std::size_t>> sequential_batches(std::size_t n, std::size_t batch_size) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return partition(order, batch_size, false);
}

Batch gather(const Dataset& ds, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw ContractViolation("gather: empty index list");
    const std::size_t per = ds.images.size() / ds.size();
    Shape shape = ds.images.shape();
    shape[0] = indices.size();
    std::vector<float> px(indices.size() * per);
    std::vector<Label> labels(indices.size());
    auto src = ds.images.data();
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::size_t s = indices[i];
        if (s >= ds.size()) throw ContractViolation("gather: index " + std::to_string(s) + " out of range");
        std::copy_n(src.data() + s * per, per, px.data() + i * per);
        labels[i] = ds.labels[s];
    }
    return {Buffer(std::move(shape), std::move(px)), std::move(labels)};
}

std::vector<Batch> batches(const Dataset& ds, const BatchPlan& plan, std::uint64_t epoch) {
    std::vector<Batch> out;
    for (const auto& idx : batch_indices(ds.size(), plan, epoch)) out.push_back(gather(ds, idx));
    return out;
}

}  // namespace nirmal::data
