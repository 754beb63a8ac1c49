#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nirmal/types.hpp"

namespace nirmal::metrics {

// counts[t * K + p]: samples of true class t predicted as p.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::size_t num_classes);

    std::size_t num_classes() const noexcept { return k_; }
    std::uint64_t at(std::size_t truth, std::size_t predicted) const { return counts_.at(truth * k_ + predicted); }
    void add(std::size_t truth, std::size_t predicted, std::uint64_t n = 1);
    std::uint64_t total() const noexcept;
    std::uint64_t trace() const noexcept;
    std::uint64_t row_sum(std::size_t truth) const;
    std::uint64_t col_sum(std::size_t predicted) const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t k_;
    std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion(std::span<const Label> preds, std::span<const Label> labels, std::size_t num_classes);

double accuracy(const ConfusionMatrix& cm);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t support = 0;
};

struct ClassificationReport {
    std::vector<ClassMetrics> per_class;
    double accuracy = 0.0;
    double weighted_f1 = 0.0;  // sum_k support_k / total * f1_k
    double macro_f1 = 0.0;
};

// Zero-denominator precision, recall and F1 are defined as 0.
ClassificationReport report(const ConfusionMatrix& cm);

}  // namespace nirmal::metrics
