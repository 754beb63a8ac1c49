#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nirmal/bench/run_config.hpp"
#include "nirmal/data/dataset.hpp"
#include "nirmal/data/transforms.hpp"
#include "nirmal/metrics/metrics.hpp"
#include "nirmal/nnet/network.hpp"

namespace nirmal::bench {

struct EpochRow {
    std::size_t epoch;  // 1-based
    double train_loss;  // running mean over the epoch's batches, sample-weighted
    double train_accuracy;
    std::optional<double> test_loss;  // absent on epochs skipped by eval_every
    std::optional<double> test_accuracy;
};

enum class RunStatus { ok, diverged };

struct Evaluation {
    double loss = 0.0;
    std::vector<Label> predictions;
    metrics::ConfusionMatrix confusion{1};
};

struct RunRecord {
    RunConfig config;
    std::string network;
    data::NormStats normalization;
    std::vector<EpochRow> rows;
    RunStatus status = RunStatus::ok;
    std::string status_detail;
    // Last full test-set evaluation.
    std::optional<Evaluation> final_eval;
    std::optional<metrics::ClassificationReport> report;
    std::vector<Label> test_labels;
    double wall_time_s = 0.0;
};

// Builds the model for the dataset: the small CNN for image data, an MLP
// with 64 hidden units for the synthetic vectors.
nnet::Network build_network(const data::Dataset& train, std::uint64_t seed);

Evaluation evaluate(nnet::Network& net, const data::Dataset& ds, std::size_t batch_size = 256);

// Loads (and normalizes) the train/test pair named by the config. Missing
// files raise IoError before any training.
std::pair<data::Dataset, data::Dataset> load_datasets(const RunConfig& cfg, data::NormStats* stats_out = nullptr);

// Trains for cfg.epochs and, when cfg.out_dir is set, writes every output
// file. A non-finite loss or gradient stops the run with status diverged.
// `on_epoch` is invoked after each completed epoch.
RunRecord run_training(const RunConfig& cfg, const std::function<void(const EpochRow&)>& on_epoch = {});

}  // namespace nirmal::bench
