#include "nirmal/optim/config.hpp"

#include <cmath>

#include "nirmal/error.hpp"

namespace nirmal::optim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

void require_decay(double value, const char* name) {
    require(std::isfinite(value) && value >= 0.0 && value < 1.0, std::string(name) + " must lie in [0, 1)");
}

void require_nonnegative(double value, const char* name) {
    require(std::isfinite(value) && value >= 0.0, std::string(name) + " must be finite and >= 0");
}

void require_positive(double value, const char* name) {
    require(std::isfinite(value) && value > 0.0, std::string(name) + " must be finite and > 0");
}

}  // namespace

void NirmalConfig::validate() const {
    require_positive(lr, "lr");
    require_decay(mu, "mu");
    require_decay(beta, "beta");
    require_positive(eps, "eps");
    require_nonnegative(kappa, "kappa");
    require_positive(gamma, "gamma");
    require_nonnegative(lambda, "lambda");
    require_nonnegative(weights.wazir, "w_wazir");
    require_nonnegative(weights.elephant, "w_elephant");
    require_nonnegative(weights.knight, "w_knight");
    require_nonnegative(weights.camel, "w_camel");
    require_nonnegative(weights.horse, "w_horse");
    require_nonnegative(weight_decay, "weight_decay");
}

void AdamConfig::validate() const {
    require_positive(lr, "lr");
    require_decay(beta1, "beta1");
    require_decay(beta2, "beta2");
    require_positive(eps, "eps");
    require_nonnegative(weight_decay, "weight_decay");
}

void SgdMomentumConfig::validate() const {
    require_positive(lr, "lr");
    require_decay(momentum, "momentum");
    require_nonnegative(weight_decay, "weight_decay");
}

std::string optimizer_name(const OptimizerConfig& cfg) {
    return std::visit(overloaded{
                          [](const NirmalConfig&) { return std::string("nirmal"); },
                          [](const AdamConfig&) { return std::string("adam"); },
                          [](const SgdMomentumConfig&) { return std::string("sgdm"); },
                      },
                      cfg);
}

void validate(const OptimizerConfig& cfg) {
    std::visit([](const auto& c) { c.validate(); }, cfg);
}

bool is_stochastic(const OptimizerConfig& cfg) {
    const auto* n = std::get_if<NirmalConfig>(&cfg);
    return n != nullptr && n->kappa > 0.0 && n->weights.knight > 0.0;
}

}  // namespace nirmal::optim
