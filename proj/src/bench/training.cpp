#include "nirmal/bench/training.hpp"

#include <chrono>
#include <cmath>

#include "nirmal/bench/outputs.hpp"
#include "nirmal/data/batches.hpp"
#include "nirmal/error.hpp"
#include "nirmal/nnet/loss.hpp"

namespace nirmal::bench {

namespace {

constexpr std::uint64_t kSynthTestSeedOffset = 0x7E57;

std::size_t count_correct(const Buffer& logits, std::span<const Label> labels, std::vector<Label>* preds_out) {
    const auto preds = argmax_last_axis(logits);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == labels[i]) ++correct;
        if (preds_out) preds_out->push_back(static_cast<Label>(preds[i]));
    }
    return correct;
}

struct Diverged {
    std::string detail;
};

}  // namespace

nnet::Network build_network(const data::Dataset& train, std::uint64_t seed) {
    const Shape sample = train.sample_shape();
    const bool image_like = sample[1] >= 4 && sample[2] >= 4;
    nnet::Network net = image_like ? nnet::small_cnn(sample, train.num_classes) : nnet::mlp(sample, 64, train.num_classes);
    net.init_params(seed);
    return net;
}

Evaluation evaluate(nnet::Network& net, const data::Dataset& ds, std::size_t batch_size) {
    Evaluation ev{0.0, {}, metrics::ConfusionMatrix(ds.num_classes)};
    ev.predictions.reserve(ds.size());
    double total = 0.0;
    std::vector<float> losses;
    for (const auto& idx : data::sequential_batches(ds.size(), batch_size)) {
        const auto batch = data::gather(ds, idx);
        const Buffer logits = net.forward(batch.images);
        losses.resize(idx.size());
        nnet::cross_entropy_per_sample(logits, batch.labels, losses);
        for (float l : losses) total += l;
        count_correct(logits, batch.labels, &ev.predictions);
    }
    ev.loss = total / static_cast<double>(ds.size());
    ev.confusion = metrics::confusion(ev.predictions, ds.labels, ds.num_classes);
    return ev;
}

std::pair<data::Dataset, data::Dataset> load_datasets(const RunConfig& cfg, data::NormStats* stats_out) {
    std::optional<data::Dataset> train, test;
    if (cfg.dataset == data::DatasetKind::synth) {
        const auto& s = cfg.synth;
        train = data::synth_gaussian_blobs(s.classes, s.train_per_class, s.dim, cfg.seed);
        test = data::synth_gaussian_blobs(s.classes, s.test_per_class, s.dim, cfg.seed + kSynthTestSeedOffset);
        train->name = "synth-train";
        test->name = "synth-test";
    } else {
        auto split = data::load_standard_split(cfg.dataset, cfg.data_dir);
        train = std::move(split.train);
        test = std::move(split.test);
    }
    if (cfg.train_limit) train = data::head(*train, cfg.train_limit);
    if (cfg.test_limit) test = data::head(*test, cfg.test_limit);
    auto [train_n, stats] = data::normalize(std::move(*train));
    auto [test_n, echoed] = data::normalize(std::move(*test), stats);
    if (stats_out) *stats_out = stats;
    return {std::move(train_n), std::move(test_n)};
}

RunRecord run_training(const RunConfig& cfg, const std::function<void(const EpochRow&)>& on_epoch) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    RunRecord record;
    record.config = cfg;

    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (ec || !std::filesystem::is_directory(cfg.out_dir)) {
            throw IoError("cannot create output directory " + cfg.out_dir.string());
        }
    }

    auto [train, test] = load_datasets(cfg, &record.normalization);
    record.test_labels = test.labels;

    nnet::Network net = build_network(train, cfg.seed);
    record.network = net.describe();
    optim::Optimizer optimizer(cfg.optimizer);
    const auto params = net.param_refs();
    const data::BatchPlan plan{cfg.batch_size, cfg.seed, false};

    try {
        for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
            double loss_sum = 0.0;
            std::size_t correct = 0, seen = 0, batch_no = 0;
            for (const auto& idx : data::batch_indices(train.size(), plan, epoch - 1)) {
                ++batch_no;
                const auto batch = data::gather(train, idx);
                const Buffer logits = net.forward(batch.images);
                auto loss = nnet::softmax_cross_entropy(logits, batch.labels);
                if (!std::isfinite(loss.loss)) {
                    throw Diverged{"non-finite training loss at epoch " + std::to_string(epoch) + ", batch " +
                                   std::to_string(batch_no)};
                }
                correct += count_correct(logits, batch.labels, nullptr);
                seen += idx.size();
                loss_sum += static_cast<double>(loss.loss) * static_cast<double>(idx.size());
                net.backward(loss.dlogits);
                try {
                    optimizer.step(params);
                } catch (const NonFiniteInput& e) {
                    throw Diverged{"non-finite gradient at epoch " + std::to_string(epoch) + ", batch " +
                                   std::to_string(batch_no) + ": " + e.what()};
                }
            }
            EpochRow row{epoch, loss_sum / static_cast<double>(seen),
                         static_cast<double>(correct) / static_cast<double>(seen), std::nullopt, std::nullopt};
            if (epoch % cfg.eval_every == 0 || epoch == cfg.epochs) {
                Evaluation ev = evaluate(net, test);
                if (!std::isfinite(ev.loss)) throw Diverged{"non-finite test loss at epoch " + std::to_string(epoch)};
                row.test_loss = ev.loss;
                row.test_accuracy = metrics::accuracy(ev.confusion);
                record.final_eval = std::move(ev);
            }
            record.rows.push_back(row);
            if (on_epoch) on_epoch(row);
        }
        record.report = metrics::report(record.final_eval->confusion);
    } catch (const Diverged& d) {
        record.status = RunStatus::diverged;
        record.status_detail = d.detail;
        record.final_eval.reset();
    }

    record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!cfg.out_dir.empty()) emit_outputs(record, cfg.out_dir);
    return record;
}

}  // namespace nirmal::bench
