#include "nirmal/bench/run_config.hpp"

#include "nirmal/error.hpp"

namespace nirmal::bench {

void RunConfig::validate() const {
    if (epochs < 1) throw ConfigError("epochs must be at least 1");
    if (batch_size < 1) throw ConfigError("batch size must be at least 1");
    if (eval_every < 1) throw ConfigError("eval-every must be at least 1");
    if (dataset != data::DatasetKind::synth && data_dir.empty()) throw ConfigError("--data-dir is required for " + data::to_string(dataset));
    if (dataset == data::DatasetKind::synth) {
        if (synth.classes < 2 || synth.dim < synth.classes) throw ConfigError("synthetic data needs 2 <= classes <= dim");
        if (synth.train_per_class == 0 || synth.test_per_class == 0) throw ConfigError("synthetic split sizes must be positive");
    }
    optim::validate(optimizer);
}

nlohmann::ordered_json to_json(const optim::OptimizerConfig& cfg) {
    nlohmann::ordered_json j;
    j["name"] = optim::optimizer_name(cfg);
    if (const auto* n = std::get_if<optim::NirmalConfig>(&cfg)) {
        j["lr"] = n->lr;
        j["mu"] = n->mu;
        j["beta"] = n->beta;
        j["eps"] = n->eps;
        j["kappa"] = n->kappa;
        j["gamma"] = n->gamma;
        j["lambda"] = n->lambda;
        j["weights"] = {{"wazir", n->weights.wazir},
                        {"elephant", n->weights.elephant},
                        {"knight", n->weights.knight},
                        {"camel", n->weights.camel},
                        {"horse", n->weights.horse}};
        j["weight_decay"] = n->weight_decay;
        j["seed"] = n->seed;
    } else if (const auto* a = std::get_if<optim::AdamConfig>(&cfg)) {
        j["lr"] = a->lr;
        j["beta1"] = a->beta1;
        j["beta2"] = a->beta2;
        j["eps"] = a->eps;
        j["weight_decay"] = a->weight_decay;
    } else {
        const auto& s = std::get<optim::SgdMomentumConfig>(cfg);
        j["lr"] = s.lr;
        j["momentum"] = s.momentum;
        j["weight_decay"] = s.weight_decay;
    }
    return j;
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["optimizer"] = to_json(cfg.optimizer);
    j["dataset"] = data::to_string(cfg.dataset);
    j["data_dir"] = cfg.data_dir.string();
    j["epochs"] = cfg.epochs;
    j["batch_size"] = cfg.batch_size;
    j["seed"] = cfg.seed;
    j["eval_every"] = cfg.eval_every;
    j["train_limit"] = cfg.train_limit;
    j["test_limit"] = cfg.test_limit;
    if (cfg.dataset == data::DatasetKind::synth) {
        j["synth"] = {{"classes", cfg.synth.classes},
                      {"dim", cfg.synth.dim},
                      {"train_per_class", cfg.synth.train_per_class},
                      {"test_per_class", cfg.synth.test_per_class}};
    }
    return j;
}

}  // namespace nirmal::bench
