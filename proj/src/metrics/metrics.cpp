#include "nirmal/metrics/metrics.hpp"

#include <string>

#include "nirmal/error.hpp"

namespace nirmal::metrics {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes) : k_(num_classes), counts_(num_classes * num_classes, 0) {
    if (num_classes == 0) throw ContractViolation("confusion matrix needs at least one class");
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t n) {
    if (truth >= k_ || predicted >= k_) {
        throw ContractViolation("class index out of range: truth " + std::to_string(truth) + ", predicted " +
                                std::to_string(predicted) + " for K=" + std::to_string(k_));
    }
    counts_[truth * k_ + predicted] += n;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
    std::uint64_t n = 0;
    for (auto c : counts_) n += c;
    return n;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < k_; ++i) n += counts_[i * k_ + i];
    return n;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::uint64_t n = 0;
    for (std::size_t p = 0; p < k_; ++p) n += at(truth, p);
    return n;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
    std::uint64_t n = 0;
    for (std::size_t t = 0; t < k_; ++t) n += at(t, predicted);
    return n;
}

ConfusionMatrix confusion(std::span<const Label> preds, std::span<const Label> labels, std::size_t num_classes) {
    if (preds.size() != labels.size()) {
        throw ContractViolation("confusion: " + std::to_string(preds.size()) + " predictions vs " +
                                std::to_string(labels.size()) + " labels");
    }
    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < preds.size(); ++i) cm.add(labels[i], preds[i]);
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) throw ContractViolation("accuracy of an empty confusion matrix");
    return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

ClassificationReport report(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total == 0) throw ContractViolation("report of an empty confusion matrix");
    ClassificationReport r;
    r.accuracy = accuracy(cm);
    const std::size_t k = cm.num_classes();
    r.per_class.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t tp = cm.at(c, c);
        const std::uint64_t predicted = cm.col_sum(c);
        const std::uint64_t support = cm.row_sum(c);
        ClassMetrics& m = r.per_class[c];
        m.support = support;
        m.precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
        m.recall = support ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
        const double denom = m.precision + m.recall;
        m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
        r.weighted_f1 += static_cast<double>(support) / static_cast<double>(total) * m.f1;
        // Same weight form as above, so equal supports give an identical sum.
        r.macro_f1 += 1.0 / static_cast<double>(k) * m.f1;
    }
    return r;
}

}  // namespace nirmal::metrics
