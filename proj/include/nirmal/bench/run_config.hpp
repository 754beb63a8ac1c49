#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "nirmal/data/idx.hpp"
#include "nirmal/optim/config.hpp"

namespace nirmal::bench {

struct SynthOptions {
    std::size_t classes = 4;
    std::size_t dim = 16;
    std::size_t train_per_class = 1000;
    std::size_t test_per_class = 250;
};

struct RunConfig {
    optim::OptimizerConfig optimizer = optim::NirmalConfig{};
    data::DatasetKind dataset = data::DatasetKind::mnist;
    std::filesystem::path data_dir;
    std::size_t epochs = 10;
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;  // initialization and shuffling
    std::filesystem::path out_dir;
    std::size_t eval_every = 1;
    std::size_t train_limit = 0;  // 0: whole split
    std::size_t test_limit = 0;
    SynthOptions synth{};

    // Throws ConfigError.
    void validate() const;
};

nlohmann::ordered_json to_json(const optim::OptimizerConfig& cfg);
nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace nirmal::bench
