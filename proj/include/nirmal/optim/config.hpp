#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace nirmal::optim {

// Mixing weights of the five NIRMAL update components.
struct ComponentWeights {
    double wazir = 0.3;     // direct gradient
    double elephant = 0.25; // first moment
    double knight = 0.1;    // gaussian perturbation
    double camel = 0.2;     // second-moment scaled first moment
    double horse = 0.15;    // tanh of first moment
};

struct NirmalConfig {
    double lr = 1e-3;
    double mu = 0.9;      // first-moment decay
    double beta = 0.999;  // second-moment decay
    double eps = 1e-8;
    double kappa = 0.01;  // perturbation scale
    double gamma = 1.5;   // adaptive scale
    double lambda = 0.5;  // tanh scale
    ComponentWeights weights{};
    double weight_decay = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;

    void validate() const;
};

struct SgdMomentumConfig {
    double lr = 0.01;
    double momentum = 0.9;
    double weight_decay = 0.0;

    void validate() const;
};

using OptimizerConfig = std::variant<NirmalConfig, AdamConfig, SgdMomentumConfig>;

// "nirmal", "adam" or "sgdm".
std::string optimizer_name(const OptimizerConfig& cfg);
void validate(const OptimizerConfig& cfg);
// Whether steps draw random perturbations (NIRMAL with kappa and the knight
// weight both nonzero).
bool is_stochastic(const OptimizerConfig& cfg);

}  // namespace nirmal::optim
