#include "nirmal/optim/optimizer.hpp"

#include <cmath>
#include <string>

#include "nirmal/error.hpp"
#include "nirmal/ndbuffer/random.hpp"
#include "nirmal/optim/kernels.hpp"

namespace nirmal::optim {

namespace {

void check_finite(std::span<const float> grad) {
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw NonFiniteInput("non-finite gradient element " + std::to_string(grad[i]) + " at index " +
                                 std::to_string(i));
        }
    }
}

void check_lengths(std::span<float> theta, std::span<const float> grad, const OptState& state, bool second_moment) {
    if (grad.size() != theta.size() || state.m.size() != theta.size()) {
        throw ContractViolation("optimizer step: parameter, gradient and state lengths disagree");
    }
    if (second_moment && (!state.v || state.v->size() != theta.size())) {
        throw ContractViolation("optimizer step: second-moment state missing or mis-sized");
    }
}

void check_shapes(const Buffer& theta, const Buffer& grad, const OptState& state, bool second_moment) {
    const bool ok = theta.shape() == grad.shape() && state.m.shape() == theta.shape() &&
                    (!second_moment || (state.v && state.v->shape() == theta.shape()));
    if (!ok) {
        throw ContractViolation("optimizer step: shape mismatch between theta " + shape_to_string(theta.shape()) +
                                ", grad " + shape_to_string(grad.shape()) + " and state");
    }
}

// Scratch for the per-step perturbation draw.
std::span<double> noise_scratch(std::size_t n) {
    thread_local std::vector<double> scratch;
    if (scratch.size() < n) scratch.resize(n);
    return {scratch.data(), n};
}

bool draws_noise(const NirmalConfig& cfg) {
    return cfg.kappa != 0.0 && cfg.weights.knight != 0.0;
}

template <class Fn>
StepResult pure_step(const Buffer& theta, const Buffer& grad, const OptState& state, bool second_moment, Fn&& fn) {
    check_shapes(theta, grad, state, second_moment);
    StepResult out{theta, state};
    fn(out.theta.data(), grad.data(), out.state);
    return out;
}

}  // namespace

OptState OptState::zeros(const Shape& shape, bool second_moment, std::uint32_t stream_id) {
    OptState s{Buffer(shape), std::nullopt, 0, stream_id};
    if (second_moment) s.v.emplace(shape);
    return s;
}

OptState OptState::for_config(const OptimizerConfig& cfg, const Shape& shape, std::uint32_t stream_id) {
    return zeros(shape, !std::holds_alternative<SgdMomentumConfig>(cfg), stream_id);
}

void nirmal_update(std::span<float> theta, std::span<const float> grad, OptState& state, const NirmalConfig& cfg) {
    check_lengths(theta, grad, state, true);
    check_finite(grad);
    const kernel::NirmalCoeffs<double> k(cfg);
    std::span<double> noise;
    if (draws_noise(cfg)) {
        noise = noise_scratch(theta.size());
        keyed_normals(noise, cfg.seed, state.stream_id, state.t + 1);
    }
    auto m = state.m.data();
    auto v = state.v->data();
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double mi = m[i], vi = v[i];
        const double z = noise.empty() ? 0.0 : noise[i];
        const auto d = kernel::nirmal_element<double>(theta[i], grad[i], mi, vi, z, k);
        theta[i] = static_cast<float>(theta[i] + d.total);
        m[i] = static_cast<float>(mi);
        v[i] = static_cast<float>(vi);
    }
    ++state.t;
}

void adam_update(std::span<float> theta, std::span<const float> grad, OptState& state, const AdamConfig& cfg) {
    check_lengths(theta, grad, state, true);
    check_finite(grad);
    const kernel::AdamCoeffs<double> k(cfg, state.t + 1);
    auto m = state.m.data();
    auto v = state.v->data();
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double mi = m[i], vi = v[i];
        const double d = kernel::adam_element<double>(theta[i], grad[i], mi, vi, k);
        theta[i] = static_cast<float>(theta[i] + d);
        m[i] = static_cast<float>(mi);
        v[i] = static_cast<float>(vi);
    }
    ++state.t;
}

void sgdm_update(std::span<float> theta, std::span<const float> grad, OptState& state, const SgdMomentumConfig& cfg) {
    check_lengths(theta, grad, state, false);
    check_finite(grad);
    const kernel::SgdMomentumCoeffs<double> k(cfg);
    auto vel = state.m.data();
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double vi = vel[i];
        kernel::sgdm_element<double>(theta[i], grad[i], vi, k);
        theta[i] = static_cast<float>(theta[i] - vi);
        vel[i] = static_cast<float>(vi);
    }
    ++state.t;
}

void update(std::span<float> theta, std::span<const float> grad, OptState& state, const OptimizerConfig& cfg) {
    if (const auto* n = std::get_if<NirmalConfig>(&cfg)) {
        nirmal_update(theta, grad, state, *n);
    } else if (const auto* a = std::get_if<AdamConfig>(&cfg)) {
        adam_update(theta, grad, state, *a);
    } else {
        sgdm_update(theta, grad, state, std::get<SgdMomentumConfig>(cfg));
    }
}

StepResult nirmal_step(const Buffer& theta, const Buffer& grad, const OptState& state, const NirmalConfig& cfg) {
    return pure_step(theta, grad, state, true,
                     [&](std::span<float> t, std::span<const float> g, OptState& s) { nirmal_update(t, g, s, cfg); });
}

StepResult adam_step(const Buffer& theta, const Buffer& grad, const OptState& state, const AdamConfig& cfg) {
    return pure_step(theta, grad, state, true,
                     [&](std::span<float> t, std::span<const float> g, OptState& s) { adam_update(t, g, s, cfg); });
}

StepResult sgdm_step(const Buffer& theta, const Buffer& grad, const OptState& state, const SgdMomentumConfig& cfg) {
    return pure_step(theta, grad, state, false,
                     [&](std::span<float> t, std::span<const float> g, OptState& s) { sgdm_update(t, g, s, cfg); });
}

StepResult step(const Buffer& theta, const Buffer& grad, const OptState& state, const OptimizerConfig& cfg) {
    const bool second_moment = !std::holds_alternative<SgdMomentumConfig>(cfg);
    return pure_step(theta, grad, state, second_moment,
                     [&](std::span<float> t, std::span<const float> g, OptState& s) { update(t, g, s, cfg); });
}

Buffer gaussian_noise(const OptState& state, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ContractViolation("gaussian_noise: n must be at least 1");
    Buffer out({n});
    keyed_normals(out.data(), seed, state.stream_id, state.t + 1);
    return out;
}

NirmalDeltas nirmal_deltas(const Buffer& theta, const Buffer& grad, const OptState& state, const NirmalConfig& cfg) {
    check_shapes(theta, grad, state, true);
    check_finite(grad.data());
    const kernel::NirmalCoeffs<double> k(cfg);
    std::vector<double> noise(theta.size(), 0.0);
    if (draws_noise(cfg)) keyed_normals(noise, cfg.seed, state.stream_id, state.t + 1);
    NirmalDeltas out{Buffer::zeros_like(theta), Buffer::zeros_like(theta), Buffer::zeros_like(theta),
                     Buffer::zeros_like(theta), Buffer::zeros_like(theta), Buffer::zeros_like(theta)};
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double m = state.m[i];
        double v = (*state.v)[i];
        const auto d = kernel::nirmal_element<double>(theta[i], grad[i], m, v, noise[i], k);
        out.wazir[i] = static_cast<float>(d.wazir);
        out.elephant[i] = static_cast<float>(d.elephant);
        out.knight[i] = static_cast<float>(d.knight);
        out.camel[i] = static_cast<float>(d.camel);
        out.horse[i] = static_cast<float>(d.horse);
        out.total[i] = static_cast<float>(d.total);
    }
    return out;
}

Optimizer::Optimizer(OptimizerConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_);
}

void Optimizer::step(std::span<const ParamRef> params) {
    if (states_.empty()) {
        states_.reserve(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) {
            states_.push_back(OptState::for_config(cfg_, params[i].shape, static_cast<std::uint32_t>(i)));
        }
    } else if (states_.size() != params.size()) {
        throw ContractViolation("Optimizer::step: parameter list changed between steps");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].value.size() != params[i].grad.size()) {
            throw ContractViolation("Optimizer::step: parameter " + std::to_string(i) + " value/grad size mismatch");
        }
        check_finite(params[i].grad);
    }
    // Gradients are validated for every buffer before any is modified.
    for (std::size_t i = 0; i < params.size(); ++i) update(params[i].value, params[i].grad, states_[i], cfg_);
    ++steps_;
}

}  // namespace nirmal::optim
